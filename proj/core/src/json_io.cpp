#include "conecert/json_io.hpp"

#include "conecert/error.hpp"

namespace conecert {

using nlohmann::json;

json to_json(const Point& p) {
  if (!p.is_matrix()) return json(std::vector<double>(p.flat().begin(), p.flat().end()));
  json rows = json::array();
  for (std::size_t i = 0; i < p.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < p.dim(); ++j) row.push_back(p(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Point point_from_json(const json& j) {
  if (!j.is_array()) throw ShapeError("point must be a JSON array");
  if (j.empty() || !j.front().is_array()) return Point::vector(j.get<std::vector<double>>());
  const std::size_t n = j.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const json& row : j) {
    if (!row.is_array() || row.size() != n) throw ShapeError("matrix rows must have length N");
    for (const json& v : row) flat.push_back(v.get<double>());
  }
  return Point::matrix(n, std::move(flat));
}

json to_json(const ConeSpec& cone) {
  json j{{"family", to_string(cone.family())}, {"dim", cone.dim()}};
  if (cone.family() == ConeFamily::GridLpPositive) {
    j["p"] = cone.grid_p();
    j["h"] = cone.grid_h();
  }
  if (cone.family() == ConeFamily::ProductCone) {
    json factors = json::array();
    for (const ConeSpec& f : cone.factors()) factors.push_back(to_json(f));
    j["factors"] = std::move(factors);
  }
  return j;
}

ConeSpec cone_from_json(const json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "ProductCone") {
    std::vector<ConeSpec> factors;
    for (const json& f : j.at("factors")) factors.push_back(cone_from_json(f));
    return ConeSpec::product(std::move(factors));
  }
  const auto dim = j.at("dim").get<std::size_t>();
  if (family == "NonnegOrthant") return ConeSpec::nonneg_orthant(dim);
  if (family == "PositiveOrthant") return ConeSpec::positive_orthant(dim);
  if (family == "FullSpace") return ConeSpec::full_space(dim);
  if (family == "PsdCone") return ConeSpec::psd(dim);
  if (family == "GridLpPositive") {
    return ConeSpec::grid_lp(dim, j.at("p").get<double>(), j.at("h").get<double>());
  }
  throw ParameterError("unknown cone family '" + family + "'");
}

json to_json(const CheckConfig& cfg) {
  return json{{"trials", cfg.trials},   {"scale", cfg.scale},         {"tol_abs", cfg.tol_abs},
              {"tol_rel", cfg.tol_rel}, {"seed", cfg.seed},           {"order_cap", cfg.order_cap},
              {"shrink", cfg.shrink}};
}

json to_json(const Witness& w) {
  json points = json::object();
  for (const NamedPoint& p : w.points) points[p.name] = to_json(p.value);
  json j{{"inequality", to_string(w.kind)},
         {"expression", w.expression},
         {"points", std::move(points)},
         {"margin", w.margin}};
  if (w.kind == InequalityKind::CmSign) j["order"] = w.order;
  if (!w.coefficients.empty()) j["coefficients"] = w.coefficients;
  return j;
}

json to_json(const CheckReport& report) {
  return json{{"property", report.property},
              {"target", report.target},
              {"verdict", to_string(report.verdict)},
              {"trials", report.trials_run},
              {"skipped", report.skipped},
              {"worst_margin", report.worst_margin},
              {"witness", report.witness ? to_json(*report.witness) : json(nullptr)},
              {"config", to_json(report.config)}};
}

json to_json(const Certificate& cert) {
  json refusal = nullptr;
  if (cert.refusal) {
    const RefusalWitness& r = *cert.refusal;
    refusal = json{{"point", to_json(r.point)}, {"value", r.value}, {"note", r.note}};
    if (r.i >= 0) refusal["index_pair"] = {r.i, r.j};
    if (r.other) refusal["other"] = to_json(*r.other);
    if (r.direction) refusal["direction"] = to_json(*r.direction);
  }
  return json{{"method", to_string(cert.method)},
              {"property", cert.property},
              {"target", cert.target},
              {"verdict", to_string(cert.verdict)},
              {"sample_points", cert.sample_points},
              {"resampled", cert.resampled},
              {"seed", cert.seed},
              {"refusal_witness", std::move(refusal)}};
}

json to_json(const LaplaceCertificate& cert) {
  json atoms = json::array();
  for (const LaplaceAtom& a : cert.atoms()) atoms.push_back(json::array({a.weight, to_json(a.dual_point)}));
  return json{{"cone", to_json(cert.cone())}, {"atoms", std::move(atoms)}};
}

LaplaceCertificate laplace_from_json(const ConeSpec& cone, const json& atoms) {
  if (!atoms.is_array()) throw CertificateError("atoms must be an array of [w, u] pairs");
  std::vector<LaplaceAtom> out;
  for (const json& a : atoms) {
    if (!a.is_array() || a.size() != 2) throw CertificateError("each atom must be [w, u]");
    LaplaceAtom atom;
    atom.weight = a[0].get<double>();
    // A bare number is accepted for one-dimensional cones.
    atom.dual_point = a[1].is_number() ? Point::vector({a[1].get<double>()}) : point_from_json(a[1]);
    out.push_back(std::move(atom));
  }
  return LaplaceCertificate(cone, std::move(out));
}

json catalog_listing(const CatalogEntry& entry) {
  const std::size_t n = resolve_dim(entry, 0);
  const std::vector<LabelClaim> claims = entry.claims(entry.defaults, n);
  json labels = json::array();
  json status = json::object();
  for (const LabelClaim& c : claims) {
    labels.push_back(to_string(c.label));
    status[to_string(c.label)] = to_string(c.status);
  }
  return json{{"id", entry.id},
              {"domain", entry.domain(entry.defaults, n).name()},
              {"labels", std::move(labels)},
              {"status", std::move(status)},
              {"paper_ref", entry.source}};
}

}  // namespace conecert
