#include "orbitface/faces.hpp"

#include <algorithm>
#include <map>

namespace orbitface {

FaceLattice FaceLattice::build(const OrbitPolytope& p, std::size_t cap) {
  std::map<std::vector<int>, int> index;  // vertex set -> provisional id
  struct Prov {
    std::vector<int> vertex_ids;
    int dim = -1;
    std::vector<int> covered;  // provisional ids
  };
  std::vector<Prov> prov;

  auto face_dim = [&](const std::vector<int>& s) {
    std::vector<VecE> pts;
    for (int id : s) pts.push_back(p.vertices()[id]);
    return affine_rank(pts);
  };

  std::vector<int> queue;
  auto add_face = [&](std::vector<int> s) -> int {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    if (prov.size() >= cap) throw CapError("face lattice exceeds cap");
    const int id = int(prov.size());
    index.emplace(s, id);
    Prov node;
    node.dim = face_dim(s);
    node.vertex_ids = std::move(s);
    prov.push_back(std::move(node));
    queue.push_back(id);
    return id;
  };

  std::vector<int> all(p.vertices().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = int(i);
  add_face(all);

  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int id = queue[head];
    const std::vector<int> s = prov[id].vertex_ids;  // copy: prov may grow
    if (s.empty()) continue;

    // Children are the maximal proper intersections with facets.
    std::vector<std::vector<int>> cand;
    for (const Facet& f : p.facets()) {
      std::vector<int> t;
      std::set_intersection(s.begin(), s.end(), f.vertex_ids.begin(),
                            f.vertex_ids.end(), std::back_inserter(t));
      if (t != s) cand.push_back(std::move(t));
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    std::vector<std::vector<int>> maximal;
    for (const auto& t : cand) {
      bool dominated = false;
      for (const auto& u : cand) {
        if (&u == &t || u.size() <= t.size()) continue;
        if (std::includes(u.begin(), u.end(), t.begin(), t.end())) {
          dominated = true;
          break;
        }
      }
      if (!dominated) maximal.push_back(t);
    }
    if (maximal.empty()) maximal.push_back({});  // a vertex covers the empty face

    for (auto& t : maximal) {
      const int child = add_face(std::move(t));  // may reallocate prov
      prov[id].covered.push_back(child);
    }
  }

  // Canonical ids: sort by (dim, vertex set).
  std::vector<int> order(prov.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = int(i);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (prov[x].dim != prov[y].dim) return prov[x].dim < prov[y].dim;
    return prov[x].vertex_ids < prov[y].vertex_ids;
  });
  std::vector<int> new_id(prov.size());
  for (std::size_t i = 0; i < order.size(); ++i) new_id[order[i]] = int(i);

  FaceLattice lat;
  lat.nodes_.resize(prov.size());
  for (std::size_t old = 0; old < prov.size(); ++old) {
    Node& node = lat.nodes_[new_id[old]];
    node.id = new_id[old];
    node.dim = prov[old].dim;
    node.vertex_ids = prov[old].vertex_ids;
    for (int c : prov[old].covered) node.covered.push_back(new_id[c]);
    std::sort(node.covered.begin(), node.covered.end());
  }
  for (Node& node : lat.nodes_) {
    for (int c : node.covered) {
      if (lat.nodes_[c].dim != node.dim - 1)
        throw ContractError("face lattice is not graded");
      lat.nodes_[c].covers.push_back(node.id);
    }
  }
  for (Node& node : lat.nodes_) std::sort(node.covers.begin(), node.covers.end());

  // Exposing directions: sum of outward normals of the containing facets.
  for (Node& node : lat.nodes_) {
    if (node.vertex_ids.empty() || node.id == lat.top().id) continue;
    VecE u(p.ambient_dim(), XQ(0));
    for (const Facet& f : p.facets())
      if (std::includes(f.vertex_ids.begin(), f.vertex_ids.end(),
                        node.vertex_ids.begin(), node.vertex_ids.end()))
        u = u + f.normal;
    if (p.argmax_vertices(u) != node.vertex_ids)
      throw ContractError("face lattice: exposing certificate failed");
    node.exposing = std::move(u);
  }
  return lat;
}

int FaceLattice::find(const std::vector<int>& vertex_ids) const {
  std::vector<int> s = vertex_ids;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (const Node& node : nodes_)
    if (node.vertex_ids == s) return node.id;
  return -1;
}

std::vector<int> FaceLattice::maximal_chain(int face_id) const {
  if (face_id < 0 || face_id >= int(nodes_.size()))
    throw ContractError("maximal_chain: bad face id");
  std::vector<int> chain = {face_id};
  int cur = face_id;
  while (!nodes_[cur].covers.empty()) {
    cur = nodes_[cur].covers.front();
    chain.push_back(cur);
  }
  return chain;
}

std::vector<int> FaceLattice::f_vector() const {
  const int d = top().dim;
  std::vector<int> f(std::size_t(d) + 1, 0);
  for (const Node& node : nodes_)
    if (node.dim >= 0) ++f[node.dim];
  return f;
}

std::vector<std::vector<int>> vertex_permutations(
    const OrbitPolytope& p, const std::vector<MatE>& elements) {
  std::map<std::vector<std::string>, int> vertex_index;
  // exact key: formatted coordinates (canonical form is unique per value)
  auto key = [](const VecE& v) {
    std::vector<std::string> k;
    k.reserve(v.size());
    for (const XQ& e : v) k.push_back(format_exact(e));
    return k;
  };
  for (std::size_t i = 0; i < p.vertices().size(); ++i)
    vertex_index.emplace(key(p.vertices()[i]), int(i));

  std::vector<std::vector<int>> perms;
  for (const MatE& g : elements) {
    std::vector<int> perm(p.vertices().size(), -1);
    for (std::size_t v = 0; v < p.vertices().size(); ++v) {
      auto it = vertex_index.find(key(mul(g, p.vertices()[v])));
      if (it == vertex_index.end())
        throw ContractError("group element does not preserve the vertex set");
      perm[v] = it->second;
    }
    perms.push_back(std::move(perm));
  }
  return perms;
}

FaceOrbits face_orbits(const FaceLattice& lattice,
                       const std::vector<std::vector<int>>& vertex_perms) {
  FaceOrbits out;
  out.class_of.assign(lattice.nodes().size(), -1);

  std::map<std::vector<int>, int> face_index;
  for (const auto& node : lattice.nodes())
    face_index.emplace(node.vertex_ids, node.id);

  for (const auto& node : lattice.nodes()) {
    if (node.vertex_ids.empty()) continue;
    if (out.class_of[node.id] >= 0) continue;
    const int cls = int(out.classes.size());
    std::vector<int> members = {node.id};
    out.class_of[node.id] = cls;
    for (std::size_t head = 0; head < members.size(); ++head) {
      const auto& s = lattice.nodes()[members[head]].vertex_ids;
      for (const auto& perm : vertex_perms) {
        std::vector<int> t;
        t.reserve(s.size());
        for (int v : s) t.push_back(perm[v]);
        std::sort(t.begin(), t.end());
        auto it = face_index.find(t);
        if (it == face_index.end())
          throw ContractError("face image is not a face: action broken");
        if (out.class_of[it->second] < 0) {
          out.class_of[it->second] = cls;
          members.push_back(it->second);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.classes.push_back(std::move(members));
  }
  return out;
}

} // namespace orbitface
