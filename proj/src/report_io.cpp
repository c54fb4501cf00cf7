#include "g2surf/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include "g2surf/error.hpp"

namespace g2surf {

using nlohmann::json;

namespace {

json vec_json(const RVec7& v) {
  json a = json::array();
  for (double c : v.c) a.push_back(c);
  return a;
}

json aggregate_json(const Aggregate& a) { return {{"max", a.max}, {"mean", a.mean}, {"count", a.count}}; }

std::string_view kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::discretization: return "discretization";
    case BoundKind::rounding: return "rounding";
    case BoundKind::fixed: return "fixed";
  }
  return "fixed";
}

}  // namespace

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::BadConfig, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::BadConfig, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::BadConfig, "cannot rename onto " + path.string());
  }
}

std::string grid_csv(const SurfaceGrid& g) {
  std::string s = "# schema_version=" + std::to_string(kSchemaVersion) + "\nx,y";
  for (const char* p : {"phi", "F", "Fp", "Fm"})
    for (int k = 1; k <= 7; ++k) s += "," + std::string(p) + std::to_string(k);
  s += '\n';
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, ",%.17g", v);
    s += buf;
  };
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", g.x(i));
      s += buf;
      put(g.y(j));
      for (const RVec7* v : {&g.partials(i, j).phi, &g.F(i, j), &g.Fplus(i, j), &g.Fminus(i, j)})
        for (double c : v->c) put(c);
      s += '\n';
    }
  return s;
}

json grid_sidecar(const SurfaceGrid& g, const MapDescriptor& map) {
  int masked = 0;
  for (unsigned char m : g.mask) masked += m != 0;
  return {
      {"schema_version", kSchemaVersion},
      {"map", to_json(map)},
      {"domain", {g.domain.x0, g.domain.x1, g.domain.y0, g.domain.y1}},
      {"nx", g.nx},
      {"ny", g.ny},
      {"hx", g.hx},
      {"hy", g.hy},
      {"mode", g.mode == DerivativeMode::analytic ? "analytic" : "fd"},
      {"columns", "x,y,phi1..7,F1..7,Fp1..7,Fm1..7"},
      {"residuals",
       {{"closedness", g.closedness_residual},
        {"path", g.path_residual},
        {"harmonicity", g.harmonicity_residual}}},
      {"parallel_degenerate", g.parallel_degenerate},
      {"masked_points", masked},
      {"warnings", g.warnings},
  };
}

json to_json(const IdentityReport& r) {
  json res = json::object();
  for (int k = 0; k < 7; ++k) res[kIdentityNames[k]] = r.max_residual[k];
  return {{"schema_version", kSchemaVersion},
          {"seed", r.seed},
          {"trials", r.trials},
          {"max_residual", res},
          {"max_input_norm", r.max_input_norm}};
}

json to_json(const PlaneVerdict& v) {
  return {{"label", to_string(v.label)}, {"holds", v.holds()}, {"residual", v.residual}, {"tolerance", v.tolerance}};
}

json to_json(const Tolerances& t) {
  return {{"classification", t.classification}, {"point", t.point}, {"ellipse", t.ellipse}, {"unit", t.unit}};
}

json to_json(const ClassReport& r) {
  json j = {
      {"schema_version", kSchemaVersion},
      {"verdict", to_string(r.verdict)},
      {"isotropic_surface", r.isotropic_surface},
      {"tolerances", to_json(r.tol)},
      {"points", r.points},
      {"masked", r.masked},
      {"residuals",
       {{"pseudo_umbilical", aggregate_json(r.pseudo_umbilical)},
        {"parallel_h", aggregate_json(r.parallel_h)},
        {"min_hypersphere", aggregate_json(r.min_hypersphere)},
        {"isotropic", aggregate_json(r.isotropic)},
        {"along_f0f1", aggregate_json(r.along_f0f1)},
        {"g_isotropy", aggregate_json(r.g_isotropy)},
        {"hF_unit_deviation", aggregate_json(r.hF_unit_deviation)},
        {"hF_formula_gap", aggregate_json(r.hF_formula_gap)},
        {"hF_imag", aggregate_json(r.hF_imag)},
        {"conformality", aggregate_json(r.conformality)}}},
      {"kahler_angle", {{"min", r.theta_min}, {"max", r.theta_max}, {"imag_residual", r.theta_imag}}},
      {"gauss_curvature", {{"min", r.K_min}, {"max", r.K_max}}},
      {"phi_cross_h", {{"residual", r.phixh.residual}, {"mean", vec_json(r.phixh.mean)}}},
      {"kahler_constancy", r.kahler_constancy},
      {"ellipse", r.ellipse ? json(to_string(*r.ellipse)) : json("mixed")},
      {"ellipse_disagreements", r.ellipse_disagreements},
      {"span_dim", r.span_dim},
      {"cross_check_ok", r.cross_check_ok},
      {"warnings", r.warnings},
  };
  if (r.span_coassociative) j["span_coassociative"] = to_json(*r.span_coassociative);
  if (r.span_compatible) j["span_compatible"] = to_json(*r.span_compatible);
  if (r.pointwise) {
    const auto& pw = *r.pointwise;
    json p = {{"nx", pw.nx()}, {"ny", pw.ny()}, {"order", "row-major, x fastest"}};
    const std::pair<const char*, double PointResiduals::*> fields[] = {
        {"pseudo_umbilical", &PointResiduals::pseudo_umbilical}, {"parallel_h", &PointResiduals::parallel_h},
        {"min_hypersphere", &PointResiduals::min_hypersphere},   {"isotropic_surface", &PointResiduals::isotropic_surface},
        {"along_f0f1", &PointResiduals::along_f0f1},             {"g_isotropy", &PointResiduals::g_isotropy},
    };
    for (const auto& [name, field] : fields) {
      json a = json::array();
      for (const PointResiduals& q : pw) a.push_back(q.*field);
      p[name] = std::move(a);
    }
    j["pointwise"] = std::move(p);
  }
  return j;
}

json to_json(const CriterionResult& r) {
  json ms = json::array();
  for (const Measurement& m : r.measurements)
    ms.push_back({{"name", m.name},
                  {"value", m.value},
                  {"relation", m.relation},
                  {"bound", m.bound},
                  {"bound_kind", kind_name(m.kind)},
                  {"pass", m.pass}});
  json j = {{"id", r.info.id},
            {"title", r.info.title},
            {"time_limit_s", r.info.time_limit},
            {"pass", r.pass},
            {"measurements", ms}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace g2surf
