#include "extremal/serialization.hpp"

#include <sstream>
#include <stdexcept>

namespace extremal {

using nlohmann::json;

json to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Field& f, const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix JSON must be a non-empty array");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j[0].size());
  Matrix m(f, rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols)
      throw std::invalid_argument("ragged matrix JSON");
    for (int c = 0; c < cols; ++c)
      m.at(i, c) = Scalar::parse(f, j[i][c].get<std::string>());
  }
  return m;
}

json to_json(const LieElement& x) {
  json j;
  j["schema"] = kElementSchema;
  j["field"] = x.field().to_string();
  j["n"] = x.ambient_dim();
  j["matrix"] = to_json(x.matrix());
  return j;
}

LieElement element_from_json(const json& j) {
  if (j.value("schema", "") != kElementSchema)
    throw std::invalid_argument("unexpected element schema");
  const Field& f = Field::parse(j.at("field").get<std::string>());
  return LieElement(matrix_from_json(f, j.at("matrix")));
}

namespace {

const char* kind_name(LieAlgebra::Kind k) {
  switch (k) {
    case LieAlgebra::Kind::special_linear: return "special_linear";
    case LieAlgebra::Kind::unitary: return "unitary";
    case LieAlgebra::Kind::symplectic: return "symplectic";
    case LieAlgebra::Kind::extended: return "extended";
    case LieAlgebra::Kind::custom: return "custom";
  }
  return "custom";
}

LieAlgebra::Kind kind_from_name(const std::string& s) {
  if (s == "special_linear") return LieAlgebra::Kind::special_linear;
  if (s == "unitary") return LieAlgebra::Kind::unitary;
  if (s == "symplectic") return LieAlgebra::Kind::symplectic;
  if (s == "extended") return LieAlgebra::Kind::extended;
  if (s == "custom") return LieAlgebra::Kind::custom;
  throw std::invalid_argument("unknown algebra kind: " + s);
}

json subspace_to_json(const Subspace& s) {
  json j;
  j["ambient"] = s.ambient();
  j["rows"] = to_json(s.basis_matrix());
  return j;
}

Subspace subspace_from_json(const Field& f, const json& j) {
  int ambient = j.at("ambient").get<int>();
  if (j.at("rows").empty()) return Subspace::zero(f, ambient);
  Matrix rows = matrix_from_json(f, j.at("rows"));
  std::vector<Vector> gens;
  for (int i = 0; i < rows.rows(); ++i) gens.push_back(rows.row(i));
  return Subspace::span(f, ambient, gens);
}

}  // namespace

json to_json(const LieAlgebra& a) {
  json j;
  j["schema"] = kAlgebraSchema;
  j["kind"] = kind_name(a.kind());
  j["matrix_field"] = a.matrix_field().to_string();
  j["coeff_field"] = a.coeff_field().to_string();
  j["n"] = a.ambient_dim();
  json gens = json::array();
  for (const auto& g : a.generators()) gens.push_back(to_json(g.matrix()));
  j["generators"] = std::move(gens);
  json basis = json::array();
  for (const auto& b : a.basis()) basis.push_back(to_json(b.matrix()));
  j["basis"] = std::move(basis);
  if (a.sl_data()) {
    j["sl_data"] = {{"U", subspace_to_json(a.sl_data()->U)},
                    {"Phi", subspace_to_json(a.sl_data()->Phi)}};
  }
  if (a.form_data()) {
    j["form_data"] = {{"gram", to_json(a.form_data()->gram)},
                      {"hermitian", a.form_data()->hermitian}};
  }
  j["contains_reflections"] = a.contains_reflections();
  return j;
}

LieAlgebra algebra_from_json(const json& j) {
  if (j.value("schema", "") != kAlgebraSchema)
    throw std::invalid_argument("unexpected algebra schema");
  const Field& mf = Field::parse(j.at("matrix_field").get<std::string>());
  const Field& cf = Field::parse(j.at("coeff_field").get<std::string>());
  int n = j.at("n").get<int>();
  std::vector<LieElement> gens;
  for (const auto& g : j.at("generators")) gens.push_back(LieElement(matrix_from_json(mf, g)));
  std::optional<LieAlgebra::SlData> sl;
  if (j.contains("sl_data"))
    sl = LieAlgebra::SlData{subspace_from_json(mf, j["sl_data"].at("U")),
                            subspace_from_json(mf, j["sl_data"].at("Phi"))};
  std::optional<LieAlgebra::FormData> form;
  if (j.contains("form_data"))
    form = LieAlgebra::FormData{matrix_from_json(mf, j["form_data"].at("gram")),
                                j["form_data"].at("hermitian").get<bool>()};
  LieAlgebra a = LieAlgebra::from_parts(kind_from_name(j.at("kind").get<std::string>()),
                                        mf, cf, n, std::move(gens), std::move(sl),
                                        std::move(form),
                                        j.value("contains_reflections", false));
  // Reproducible reload: the recomputed basis must match the stored one.
  const json& basis = j.at("basis");
  if (static_cast<int>(basis.size()) != a.dim())
    throw std::invalid_argument("stored basis does not match the recomputed closure");
  for (int i = 0; i < a.dim(); ++i)
    if (!(matrix_from_json(mf, basis[i]) == a.basis()[i].matrix()))
      throw std::invalid_argument("stored basis does not match the recomputed closure");
  return a;
}

json to_json(const GeometryGraph& g) {
  json j;
  j["schema"] = kGeometrySchema;
  if (g.label_field != nullptr) j["label_field"] = g.label_field->to_string();
  j["ambient_dim"] = g.ambient_dim;
  json pts = json::array();
  for (const auto& p : g.points) {
    json pj;
    if (!p.coords.empty()) {
      json coords = json::array();
      for (const auto& c : p.coords) coords.push_back(c.to_string());
      pj["coords"] = std::move(coords);
    }
    if (p.flag) {
      json point = json::array(), func = json::array();
      for (int i = 0; i < p.flag->point.dim(); ++i) point.push_back(p.flag->point[i].to_string());
      for (int i = 0; i < p.flag->functional.dim(); ++i)
        func.push_back(p.flag->functional[i].to_string());
      pj["flag"] = {{"point", std::move(point)}, {"functional", std::move(func)}};
    }
    pts.push_back(std::move(pj));
  }
  j["points"] = std::move(pts);
  j["lines"] = g.lines;
  try {
    auto cliques = maximal_cliques(g);
    if (!cliques.empty()) {
      CliquePartition parts = classify_partition(g, cliques);
      json pc = json::array(), hc = json::array();
      for (const auto& c : parts.point_cliques) pc.push_back(c.members);
      for (const auto& c : parts.hyperplane_cliques) hc.push_back(c.members);
      j["clique_partition"] = {{"point_cliques", std::move(pc)},
                               {"hyperplane_cliques", std::move(hc)}};
    }
  } catch (const std::domain_error&) {
    // not a flag-type geometry; the partition is simply omitted
  }
  return j;
}

std::string to_dot(const GeometryGraph& g) {
  std::ostringstream out;
  out << "graph extremal_geometry {\n";
  out << "  // " << g.point_count() << " points, " << g.line_count() << " lines\n";
  for (int i = 0; i < g.point_count(); ++i) {
    out << "  p" << i;
    if (g.points[i].flag) {
      out << " [label=\"(" << g.points[i].flag->point.to_string() << ", ker "
          << g.points[i].flag->functional.to_string() << ")\"]";
    }
    out << ";\n";
  }
  for (size_t li = 0; li < g.lines.size(); ++li) {
    const auto& line = g.lines[li];
    for (size_t a = 0; a < line.size(); ++a)
      for (size_t b = a + 1; b < line.size(); ++b)
        out << "  p" << line[a] << " -- p" << line[b] << " [line=" << li << "];\n";
  }
  out << "}\n";
  return out.str();
}

json to_json(const SesquiForm& h) {
  json j;
  j["schema"] = kFormSchema;
  j["field"] = h.field().to_string();
  j["gram"] = to_json(h.gram());
  j["tau"] = h.tau_is_involution() ? "sigma" : "id";
  j["eps"] = h.eps().to_string();
  return j;
}

SesquiForm form_from_json(const json& j) {
  if (j.value("schema", "") != kFormSchema)
    throw std::invalid_argument("unexpected form schema");
  const Field& f = Field::parse(j.at("field").get<std::string>());
  std::string tau = j.at("tau").get<std::string>();
  if (tau != "sigma" && tau != "id") throw std::invalid_argument("tau must be sigma or id");
  return SesquiForm(f, matrix_from_json(f, j.at("gram")), tau == "sigma",
                    Scalar::parse(f, j.at("eps").get<std::string>()));
}

json to_json(const PolaritySpec& p) {
  json j;
  j["schema"] = kPolaritySchema;
  j["field"] = p.field->to_string();
  j["n"] = p.n;
  json table = json::array();
  for (const auto& [pt, phi] : p.point_to_hyperplane) {
    json point = json::array(), func = json::array();
    for (int i = 0; i < pt.dim(); ++i) point.push_back(pt[i].to_string());
    for (int i = 0; i < phi.dim(); ++i) func.push_back(phi[i].to_string());
    table.push_back({{"point", std::move(point)}, {"hyperplane_functional", std::move(func)}});
  }
  j["table"] = std::move(table);
  j["fixed_points"] = p.fixed_points;
  return j;
}

json to_json(const DirectedIndex& i) {
  json j;
  j["dim"] = i.dim();
  j["U"] = subspace_to_json(i.U);
  j["Phi"] = subspace_to_json(i.Phi);
  return j;
}

json to_json(const CoverReport& r) {
  json j;
  j["schema"] = kCoverSchema;
  j["all_contained"] = r.all_contained;
  json ws = json::array();
  for (const auto& w : r.witnesses) {
    json wj;
    json terms = json::array();
    for (const auto& t : w.term_indices) terms.push_back(to_json(t));
    wj["term_indices"] = std::move(terms);
    wj["witness"] = to_json(w.witness);
    wj["contained"] = w.contained;
    ws.push_back(std::move(wj));
  }
  j["witnesses"] = std::move(ws);
  return j;
}

}  // namespace extremal
