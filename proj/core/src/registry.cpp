#include "orbitface/registry.hpp"

#include <filesystem>

namespace orbitface {

namespace {

MatE rot_exact(int m) {
  // cos/sin of 2*pi/m for the angles representable in the field
  XQ c, s;
  const XQ h = xq_half();
  switch (m) {
    case 2: c = XQ(-1); s = XQ(0); break;
    case 3: c = -h; s = xq_sqrt3() * h; break;
    case 4: c = XQ(0); s = XQ(1); break;
    case 6: c = h; s = xq_sqrt3() * h; break;
    case 8: c = xq_sqrt2() * h; s = xq_sqrt2() * h; break;
    case 12: c = xq_sqrt3() * h; s = h; break;
    default:
      throw InputError("dihedral order " + std::to_string(m) +
                       ": rotation angle leaves the scalar field");
  }
  MatE r(2, 2);
  r.at(0, 0) = c;
  r.at(0, 1) = -s;
  r.at(1, 0) = s;
  r.at(1, 1) = c;
  return r;
}

MatE mirror_exact() {
  MatE r = MatE::identity(2);
  r.at(1, 1) = XQ(-1);
  return r;
}

std::vector<VecD> float_points(const std::vector<VecE>& pts) {
  std::vector<VecD> out;
  for (const VecE& p : pts) out.push_back(to_float(p));
  return out;
}

} // namespace

RegistryEntry make_rot2() {
  MatD x(2, 2);
  x << 0, -1, 1, 0;
  GroupModel g{LieGroupModel(2, {x})};
  auto cand = SectionCandidate::make(std::move(g),
                                     SubspaceE::coordinate_span(2, {0}), "rot2");
  RegistryEntry e{"rot2", std::move(cand), {VecE{XQ(2), XQ(0)}}, {}, true, {}, {}};
  e.base_points = float_points(e.base_points_exact);
  e.expected.polar = true;
  e.expected.k = 0;
  e.expected.weyl_order = 2;
  e.expected.face_classes = {2};
  e.expected.source = {
      {"k", "normal space of a circle is the radial line; measured again at load"},
      {"weyl_order", "rotations by 0 and pi are the only ones preserving the axis"},
      {"face_classes", "segment lattice enumerated exactly"}};
  e.notes = "plane rotations with the first axis as section";
  return e;
}

RegistryEntry make_dihedral(int m) {
  const std::string name = "dihedral-" + std::to_string(m);
  GroupModel g{FiniteMatrixGroup::from_generators({rot_exact(m), mirror_exact()})};
  auto cand = SectionCandidate::make(std::move(g), SubspaceE::full(2), name);
  RegistryEntry e{name, std::move(cand), {VecE{XQ(1), XQ(0)}}, {}, true, {}, {}};
  e.base_points = float_points(e.base_points_exact);
  e.expected.polar = true;
  e.expected.k = 0;
  e.expected.weyl_order = 2 * m;
  e.expected.face_classes = {m == 2 ? 2 : 3};
  e.expected.source = {
      {"k", "finite orbits have full normal spaces, so sigma = V reads k = 0"},
      {"weyl_order", "sigma = V makes W the group itself; closure enumerated"},
      {"face_classes", "regular polygon lattice enumerated exactly"}};
  e.notes = "trivial fat section of the full dihedral plane action";
  return e;
}

RegistryEntry make_schur_horn(int n) {
  if (n < 2 || n > 4)
    throw InputError("schur-horn size " + std::to_string(n) +
                     ": exact section coordinates leave the scalar field");
  const std::string name = "schur-horn-" + std::to_string(n);
  const int dim = n * (n + 1) / 2 - 1;

  // Orthonormal basis of traceless symmetric matrices: n-1 diagonal
  // directions, then the sqrt2-scaled off-diagonal pair matrices.
  std::vector<MatD> coord_basis;
  for (int k = 1; k < n; ++k) {
    MatD u = MatD::Zero(n, n);
    for (int i = 0; i < k; ++i) u(i, i) = 1.0;
    u(k, k) = -double(k);
    coord_basis.push_back(u / std::sqrt(double(k) * (k + 1)));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      MatD s = MatD::Zero(n, n);
      s(i, j) = s(j, i) = 1.0 / std::sqrt(2.0);
      coord_basis.push_back(s);
    }

  // so(n) acting by commutators, expressed on those coordinates.
  std::vector<MatD> algebra;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      MatD x = MatD::Zero(n, n);
      x(i, j) = -1.0;
      x(j, i) = 1.0;
      MatD act(dim, dim);
      for (int l = 0; l < dim; ++l) {
        const MatD c = x * coord_basis[l] - coord_basis[l] * x;
        for (int k = 0; k < dim; ++k)
          act(k, l) = (coord_basis[k] * c).trace();
      }
      algebra.push_back(std::move(act));
    }

  GroupModel g{LieGroupModel(dim, algebra)};
  std::vector<int> diag_coords(n - 1);
  for (int k = 0; k < n - 1; ++k) diag_coords[k] = k;
  auto cand = SectionCandidate::make(
      std::move(g), SubspaceE::coordinate_span(dim, diag_coords), name);

  // Base spectrum with distinct entries and zero trace.
  std::vector<int> lambda;
  if (n == 2) lambda = {1, -1};
  if (n == 3) lambda = {2, 0, -2};
  if (n == 4) lambda = {3, 1, -1, -3};
  VecE base(dim, XQ(0));
  for (int k = 1; k < n; ++k) {
    long num = 0;
    for (int i = 0; i < k; ++i) num += lambda[i];
    num -= long(k) * lambda[k];
    auto root = xq_sqrt(XQ(k * (k + 1)));  // sqrt2, sqrt6, 2*sqrt3
    base[k - 1] = XQ(Rat(num)) / *root;
  }

  RegistryEntry e{name, std::move(cand), {base}, {}, true, {}, {}};
  e.base_points = float_points(e.base_points_exact);
  e.expected.polar = true;
  e.expected.k = 0;
  int worder = 1;
  for (int i = 2; i <= n; ++i) worder *= i;
  e.expected.weyl_order = worder;
  e.expected.face_classes = {n == 2 ? 2 : (n == 3 ? 4 : 8)};
  e.expected.source = {
      {"k", "normal space at a distinct-spectrum diagonal is diagonal"},
      {"weyl_order", "signed permutations of determinant one permute the "
                     "diagonal entries freely"},
      {"face_classes", "permutohedron lattice enumerated exactly and "
                       "partitioned by the permutation action"}};
  e.notes = "conjugation on traceless symmetric matrices, diagonal section";
  return e;
}

RegistryEntry make_so3_vector_pairs() {
  std::vector<MatD> algebra;
  for (int a = 0; a < 3; ++a) {
    MatD x = MatD::Zero(3, 3);
    const int i = (a + 1) % 3, j = (a + 2) % 3;
    x(i, j) = -1.0;
    x(j, i) = 1.0;
    MatD big = MatD::Zero(6, 6);
    big.topLeftCorner(3, 3) = x;
    big.bottomRightCorner(3, 3) = x;
    algebra.push_back(std::move(big));
  }
  GroupModel g{LieGroupModel(6, algebra)};
  auto cand = SectionCandidate::make(
      std::move(g), SubspaceE::coordinate_span(6, {0, 1, 3, 4}),
      "so3-vector-pairs");
  RegistryEntry e{"so3-vector-pairs",
                  std::move(cand),
                  {VecE{XQ(2), XQ(0), XQ(0), XQ(0), XQ(1), XQ(0)}},
                  {},
                  false,
                  {},
                  {}};
  e.base_points = float_points(e.base_points_exact);
  e.expected.polar = false;
  e.expected.k = 1;
  e.expected.source = {
      {"k", "the planar-pair section exceeds the generic normal space by one"},
      {"weyl", "in-plane rotations act nontrivially, so W is "
               "positive-dimensional"}};
  e.notes =
      "two copies of space rotated together; the smallest known fat section "
      "is the pair of planar vectors, and W is a circle extension";
  return e;
}

std::vector<std::string> builtin_entry_names() {
  return {"rot2",         "dihedral-4",   "dihedral-8",      "schur-horn-2",
          "schur-horn-3", "schur-horn-4", "so3-vector-pairs"};
}

RegistryEntry builtin_entry(const std::string& name) {
  if (name == "rot2") return make_rot2();
  if (name == "so3-vector-pairs") return make_so3_vector_pairs();
  if (name.rfind("dihedral-", 0) == 0)
    return make_dihedral(std::stoi(name.substr(9)));
  if (name.rfind("schur-horn-", 0) == 0)
    return make_schur_horn(std::stoi(name.substr(11)));
  throw InputError("unknown registry entry '" + name + "'");
}

namespace {

Expectations expectations_from_json(const Json& j) {
  Expectations e;
  if (j.contains("polar")) e.polar = j.at("polar").get<bool>();
  if (j.contains("k") && !j.at("k").is_null()) e.k = j.at("k").get<int>();
  if (j.contains("weyl_order") && !j.at("weyl_order").is_null())
    e.weyl_order = j.at("weyl_order").get<int>();
  if (j.contains("face_classes"))
    for (const Json& v : j.at("face_classes")) e.face_classes.push_back(v.get<int>());
  if (j.contains("source"))
    for (const auto& [key, val] : j.at("source").items())
      e.source[key] = val.get<std::string>();
  return e;
}

Json json_of(const Expectations& e) {
  Json j;
  if (e.polar) j["polar"] = *e.polar;
  j["k"] = e.k ? Json(*e.k) : Json(nullptr);
  j["weyl_order"] = e.weyl_order ? Json(*e.weyl_order) : Json(nullptr);
  if (!e.face_classes.empty()) j["face_classes"] = e.face_classes;
  if (!e.source.empty()) {
    Json s;
    for (const auto& [key, val] : e.source) s[key] = val;
    j["source"] = std::move(s);
  }
  return j;
}

} // namespace

RegistryEntry entry_from_json(const Json& j) {
  if (!j.contains("name")) throw InputError("registry entry needs a name");
  const std::string name = j.at("name").get<std::string>();

  std::optional<RegistryEntry> entry;
  if (j.contains("builder")) {
    const std::string builder = j.at("builder").get<std::string>();
    const Json params = j.value("params", Json::object());
    if (builder == "rot2")
      entry = make_rot2();
    else if (builder == "dihedral")
      entry = make_dihedral(params.at("m").get<int>());
    else if (builder == "schur-horn")
      entry = make_schur_horn(params.at("n").get<int>());
    else if (builder == "so3-vector-pairs")
      entry = make_so3_vector_pairs();
    else
      throw InputError("unknown builder '" + builder + "'");
    entry->name = name;
    entry->candidate.name = name;
  } else {
    if (!j.contains("group") || !j.contains("section"))
      throw InputError("explicit registry entry needs 'group' and 'section'");
    SectionCandidate cand =
        section_from_json(j.at("group"), j.at("section"), name);
    entry = RegistryEntry{name, std::move(cand), {}, {}, true, {}, {}};
    entry->expected = Expectations{};
  }

  if (j.contains("base_points")) {
    entry->base_points_exact.clear();
    entry->base_points.clear();
    for (const Json& p : j.at("base_points")) {
      bool exact = true;
      for (const Json& v : p)
        if (v.is_number_float()) exact = false;
      if (exact) {
        VecE pe = vec_exact_from_json(p);
        entry->base_points.push_back(to_float(pe));
        entry->base_points_exact.push_back(std::move(pe));
      } else {
        entry->base_points.push_back(vec_from_json(p));
      }
    }
  }
  if (j.contains("enabled")) entry->enabled = j.at("enabled").get<bool>();
  if (j.contains("expected")) entry->expected = expectations_from_json(j.at("expected"));
  if (j.contains("notes")) entry->notes = j.at("notes").get<std::string>();
  for (const VecD& p : entry->base_points)
    if (p.size() != entry->candidate.group.ambient_dim())
      throw InputError("base point dimension mismatch in '" + name + "'");
  return *entry;
}

Json json_of(const RegistryEntry& e) {
  Json j;
  j["name"] = e.name;
  j["group"] = json_of(e.candidate.group);
  j["section"] = json_of_section(e.candidate);
  Json pts = Json::array();
  if (!e.base_points_exact.empty())
    for (const VecE& p : e.base_points_exact) pts.push_back(json_of(p));
  else
    for (const VecD& p : e.base_points) pts.push_back(json_of(p));
  j["base_points"] = std::move(pts);
  j["enabled"] = e.enabled;
  j["expected"] = json_of(e.expected);
  if (!e.notes.empty()) j["notes"] = e.notes;
  return j;
}

LoadedEntry load_entry(const std::string& name, const std::string& dir,
                       int n_samples, std::uint64_t seed) {
  const std::filesystem::path path = std::filesystem::path(dir) / (name + ".json");
  if (!std::filesystem::exists(path))
    throw InputError("unknown registry entry '" + name + "' (no " +
                     path.string() + ")");
  RegistryEntry entry = entry_from_json(load_json_file(path.string()));
  AxiomReport report = check_axioms(entry.candidate, n_samples, seed);
  if (report.overall() == Verdict::fail)
    throw ContractError("entry '" + name + "' fails the fat-section axioms");
  return LoadedEntry{std::move(entry), std::move(report)};
}

void write_default_registry(const std::string& dir) {
  std::filesystem::create_directories(dir);
  auto emit = [&](const std::string& name, Json j) {
    write_json_file((std::filesystem::path(dir) / (name + ".json")).string(),
                    j);
  };

  auto builder_file = [](const RegistryEntry& e, const std::string& builder,
                         Json params) {
    Json j;
    j["name"] = e.name;
    j["builder"] = builder;
    if (!params.empty()) j["params"] = std::move(params);
    j["enabled"] = e.enabled;
    j["expected"] = json_of(e.expected);
    if (!e.notes.empty()) j["notes"] = e.notes;
    return j;
  };

  emit("rot2", builder_file(make_rot2(), "rot2", Json::object()));
  for (int m : {4, 8}) {
    RegistryEntry e = make_dihedral(m);
    emit(e.name, builder_file(e, "dihedral", Json{{"m", m}}));
  }
  for (int n : {2, 3, 4}) {
    RegistryEntry e = make_schur_horn(n);
    emit(e.name, builder_file(e, "schur-horn", Json{{"n", n}}));
  }
  // The nontrivial-copolarity entry ships as explicit data: the axiom gate,
  // not the builder, is what admits it.
  emit("so3-vector-pairs", json_of(make_so3_vector_pairs()));
}

} // namespace orbitface
