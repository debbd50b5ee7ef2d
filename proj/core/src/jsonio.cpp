#include "orbitface/jsonio.hpp"

#include <fstream>

namespace orbitface {

Json json_of(const Rat& x) {
  if (boost::multiprecision::denominator(x) == 1) {
    const auto num = boost::multiprecision::numerator(x);
    if (num >= std::numeric_limits<std::int64_t>::min() &&
        num <= std::numeric_limits<std::int64_t>::max())
      return Json(num.convert_to<std::int64_t>());
  }
  return Json(format_exact(x));
}

Json json_of(const XQ& x) {
  if (is_rational(x)) return json_of(rational_part(x));
  return Json(format_exact(x));
}

Json json_of(const VecE& v) {
  Json a = Json::array();
  for (const XQ& x : v) a.push_back(json_of(x));
  return a;
}

Json json_of(const MatE& m) {
  Json a = Json::array();
  for (int r = 0; r < m.rows(); ++r) a.push_back(json_of(m.row(r)));
  return a;
}

Json json_of(const VecD& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json json_of(const MatD& m) {
  Json a = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    a.push_back(std::move(row));
  }
  return a;
}

XQ xq_from_json(const Json& j) {
  if (j.is_number_integer()) return XQ(int(j.get<std::int64_t>()));
  if (j.is_string()) return parse_exact(j.get<std::string>());
  throw InputError("exact scalar must be an integer or a string, got " +
                   j.dump());
}

VecE vec_exact_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("vector must be an array");
  VecE v;
  for (const Json& e : j) v.push_back(xq_from_json(e));
  return v;
}

MatE mat_exact_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix must be a nonempty array");
  std::vector<VecE> rows;
  for (const Json& r : j) rows.push_back(vec_exact_from_json(r));
  for (const VecE& r : rows)
    if (r.size() != rows.front().size())
      throw InputError("ragged matrix rows");
  return MatE::from_rows(rows);
}

VecD vec_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("vector must be an array");
  VecD v(j.size());
  int i = 0;
  for (const Json& e : j) {
    if (e.is_number())
      v[i++] = e.get<double>();
    else if (e.is_string())
      v[i++] = to_double(parse_exact(e.get<std::string>()));
    else
      throw InputError("vector entry must be a number or exact string");
  }
  return v;
}

MatD mat_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix must be a nonempty array");
  std::vector<VecD> rows;
  for (const Json& r : j) rows.push_back(vec_from_json(r));
  MatD m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw InputError("ragged matrix rows");
    m.row(int(r)) = rows[r];
  }
  return m;
}

Json json_of(const GroupModel& g) {
  Json j;
  j["dim"] = g.ambient_dim();
  if (g.finite()) {
    j["kind"] = "finite";
    Json gens = Json::array();
    for (const MatE& m : g.as_finite().generators()) gens.push_back(json_of(m));
    j["generators"] = std::move(gens);
  } else {
    j["kind"] = "lie";
    Json basis = Json::array();
    for (const MatD& m : g.as_lie().algebra()) basis.push_back(json_of(m));
    j["algebra_basis"] = std::move(basis);
  }
  return j;
}

GroupModel group_from_json(const Json& j) {
  if (!j.contains("dim") || !j.contains("kind"))
    throw InputError("group spec needs 'dim' and 'kind'");
  const int dim = j.at("dim").get<int>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "finite") {
    std::vector<MatE> gens;
    for (const Json& g : j.at("generators")) {
      MatE m = mat_exact_from_json(g);
      if (m.rows() != dim || m.cols() != dim)
        throw InputError("generator size does not match 'dim'");
      gens.push_back(std::move(m));
    }
    return GroupModel(FiniteMatrixGroup::from_generators(gens));
  }
  if (kind == "lie") {
    std::vector<MatD> basis;
    for (const Json& g : j.at("algebra_basis")) {
      MatD m = mat_from_json(g);
      if (m.rows() != dim || m.cols() != dim)
        throw InputError("algebra matrix size does not match 'dim'");
      basis.push_back(std::move(m));
    }
    return GroupModel(LieGroupModel(dim, basis));
  }
  throw InputError("unknown group kind '" + kind + "'");
}

Json json_of_section(const SectionCandidate& c) {
  Json j;
  if (c.sigma_exact) {
    if (c.sigma_exact->is_full())
      j["full"] = true;
    else
      j["basis"] = json_of(transpose(c.sigma_exact->basis()));  // rows = vectors
  } else {
    j["basis_float"] = json_of(MatD(c.sigma.basis().transpose()));
  }
  return j;
}

SectionCandidate section_from_json(const Json& group_json,
                                   const Json& section_json,
                                   const std::string& name) {
  GroupModel g = group_from_json(group_json);
  const int dim = g.ambient_dim();
  if (section_json.contains("full") && section_json.at("full").get<bool>())
    return SectionCandidate::make(std::move(g), SubspaceE::full(dim), name);
  if (section_json.contains("coords")) {
    std::vector<int> coords;
    for (const Json& e : section_json.at("coords")) coords.push_back(e.get<int>());
    return SectionCandidate::make(std::move(g),
                                  SubspaceE::coordinate_span(dim, coords), name);
  }
  if (section_json.contains("basis")) {
    MatE rows = mat_exact_from_json(section_json.at("basis"));
    if (rows.cols() != dim) throw InputError("section basis width mismatch");
    return SectionCandidate::make(std::move(g),
                                  SubspaceE::span(transpose(rows)), name);
  }
  if (section_json.contains("basis_float")) {
    MatD rows = mat_from_json(section_json.at("basis_float"));
    if (rows.cols() != dim) throw InputError("section basis width mismatch");
    return SectionCandidate::make(std::move(g),
                                  SubspaceD::span(rows.transpose()), name);
  }
  throw InputError("section spec needs 'full', 'coords', 'basis' or 'basis_float'");
}

Json json_of(Verdict v) { return Json(to_string(v)); }

Json json_of(const AxiomCheck& c) {
  Json j;
  j["verdict"] = json_of(c.verdict);
  j["worst"] = c.worst;
  j["samples"] = c.samples;
  if (!c.witness.empty()) j["witness"] = c.witness;
  return j;
}

Json json_of(const AxiomReport& r) {
  Json j;
  j["axiom_a"] = json_of(r.a);
  j["axiom_b"] = json_of(r.b);
  j["axiom_c"] = json_of(r.c);
  if (r.k >= 0)
    j["k"] = r.k;
  else
    j["k"] = nullptr;
  j["principal_orbit_dim"] = r.principal_orbit_dim;
  j["n_samples"] = r.n_samples;
  j["seed"] = r.seed;
  j["overall"] = json_of(r.overall());
  j["note"] = "numerically validated; sampled checks do not constitute proof";
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InputError("bad JSON in '" + path + "': " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

} // namespace orbitface
