#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "g2surf/acceptance.hpp"
#include "g2surf/catalog.hpp"
#include "g2surf/cross7.hpp"
#include "g2surf/error.hpp"
#include "g2surf/invariants.hpp"
#include "g2surf/planes.hpp"
#include "g2surf/report_io.hpp"
#include "g2surf/surface_synth.hpp"

namespace g2surf::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kIdentityTolerance = 1e-12;
constexpr int kIdentityTrials = 10000;

/// Thrown for bad flags or inputs; maps to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string map = "clifford_coassoc";
  std::string domain;
  std::string grid;
  std::string mode = "analytic";
  double step = 0.0;
  std::string tol = "default";
  std::optional<std::uint64_t> seed;
  std::string out;
  bool pointwise = false;
  bool list = false;
  std::string inject;
  std::vector<std::string> vectors;
  std::vector<int> ids;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad number '" + s + "' in " + what);
  }
}

int parse_int(const std::string& s, const std::string& what) {
  const double v = parse_double(s, what);
  if (v != std::floor(v)) throw ConfigError("expected an integer in " + what);
  return static_cast<int>(v);
}

double tolerance_scale(const std::string& t) {
  if (t == "default") return 1.0;
  if (t == "tight") return 1e-4;
  if (t == "loose") return 1e2;
  const double v = parse_double(t, "--tol");
  if (v <= 0) throw ConfigError("--tol must be positive");
  return v;
}

std::uint64_t resolve_seed(const Config& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("G2SURF_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string_view(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("G2SURF_SEED is not an unsigned integer: ") + env);
  }
  return 1;
}

MapDescriptor load_map(const std::string& arg) {
  const bool file = arg.ends_with(".json") || fs::is_regular_file(arg);
  try {
    if (!file) return catalog_map(arg);
    std::ifstream in(arg);
    if (!in) throw ConfigError("cannot read " + arg);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ConfigError(arg + ": " + e.what());
    }
    return map_from_json(j);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

SynthOptions synth_options(const Config& c, const MapDescriptor& map) {
  SynthOptions o;
  if (c.domain.empty()) {
    const auto d = default_domain(map);
    o.domain = {d[0], d[1], d[2], d[3]};
  } else {
    const auto p = split(c.domain, ',');
    if (p.size() != 4) throw ConfigError("--domain expects x0,x1,y0,y1");
    o.domain = {parse_double(p[0], "--domain"), parse_double(p[1], "--domain"), parse_double(p[2], "--domain"),
                parse_double(p[3], "--domain")};
  }
  if (!(o.domain.x1 > o.domain.x0) || !(o.domain.y1 > o.domain.y0))
    throw ConfigError("--domain must satisfy x0 < x1 and y0 < y1");

  if (!c.grid.empty() && c.step > 0) throw ConfigError("--grid and --step are mutually exclusive");
  if (!c.grid.empty()) {
    const auto p = split(c.grid, ',');
    if (p.size() != 1 && p.size() != 2) throw ConfigError("--grid expects N or N,M");
    o.nx = parse_int(p[0], "--grid");
    o.ny = p.size() == 2 ? parse_int(p[1], "--grid") : o.nx;
  } else if (c.step != 0.0) {
    if (!(c.step > 0)) throw ConfigError("--step must be positive");
    o.nx = static_cast<int>(std::ceil((o.domain.x1 - o.domain.x0) / c.step - 1e-9)) + 1;
    o.ny = static_cast<int>(std::ceil((o.domain.y1 - o.domain.y0) / c.step - 1e-9)) + 1;
  }
  if (o.nx < 17 || o.ny < 17) throw ConfigError("grid must be at least 17x17");

  if (c.mode == "analytic")
    o.mode = DerivativeMode::analytic;
  else if (c.mode == "fd")
    o.mode = DerivativeMode::finite_difference;
  else
    throw ConfigError("--mode must be analytic or fd");
  o.closed_factor *= tolerance_scale(c.tol);
  return o;
}

fs::path out_dir(const Config& c) {
  fs::path dir(c.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory " + c.out);
  return dir;
}

void emit(const Config& c, const std::string& file, const json& j, std::ostream& out) {
  const std::string text = dump(j);
  out << text;
  if (!c.out.empty()) write_atomic(out_dir(c) / file, text);
}

RVec7 parse_vector(const std::string& s) {
  if (s.size() == 2 && s[0] == 'e' && s[1] >= '1' && s[1] <= '7') return RVec7::basis(static_cast<std::size_t>(s[1] - '1'));
  const auto p = split(s, ',');
  if (p.size() != 7) throw ConfigError("vector '" + s + "' must be eK or seven comma-separated numbers");
  RVec7 v{};
  for (std::size_t k = 0; k < 7; ++k) v.c[k] = parse_double(p[k], "vector");
  return v;
}

// ---------------------------------------------------------------------------

int cmd_algebra(const Config& c, std::ostream& out) {
  CrossTable table = CrossTable::canonical();
  json injected = nullptr;
  if (!c.inject.empty()) {
    const auto p = split(c.inject, ',');
    if (p.size() != 2) throw ConfigError("--inject-sign-error expects i,j");
    const int i = parse_int(p[0], "--inject-sign-error"), j = parse_int(p[1], "--inject-sign-error");
    if (i < 1 || i > 7 || j < 1 || j > 7 || i == j) throw ConfigError("--inject-sign-error needs distinct i,j in 1..7");
    table = table.with_sign_error(i - 1, j - 1);
    injected = {i, j};
  }
  const IdentityReport r = identity_suite(resolve_seed(c), kIdentityTrials, table);
  bool pass = true;
  for (double v : r.max_residual) pass = pass && v < kIdentityTolerance;
  json j = to_json(r);
  j["tolerance"] = kIdentityTolerance;
  j["injected_sign_error"] = injected;
  j["pass"] = pass;
  emit(c, "algebra.json", j, out);
  return pass ? kExitPass : kExitResidual;
}

int cmd_plane(const Config& c, std::ostream& out) {
  if (c.vectors.size() < 2 || c.vectors.size() > 4) throw ConfigError("plane expects 2 to 4 vectors");
  std::vector<RVec7> vs;
  for (const auto& s : c.vectors) vs.push_back(parse_vector(s));
  Subspace w;
  try {
    w = Subspace::orthonormalize(vs);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  json j = {{"schema_version", kSchemaVersion}, {"dim", w.dim()}};
  json basis = json::array();
  for (const RVec7& b : w.basis()) basis.push_back(std::vector<double>(b.c.begin(), b.c.end()));
  j["orthonormal_basis"] = basis;
  if (w.dim() == 2) {
    // Every 2-plane spans an associative 3-plane together with its cross product.
    const Subspace v = Subspace::orthonormalize({w[0], w[1], cross(w[0], w[1])});
    j["associative_completion"] = to_json(is_associative(v));
  } else if (w.dim() == 3) {
    j["associative"] = to_json(is_associative(w));
  } else {
    j["coassociative"] = to_json(is_coassociative(w));
    j["cross_compatible"] = to_json(admits_cross_compatible(w));
  }
  emit(c, "plane.json", j, out);
  return kExitPass;
}

int cmd_synth(const Config& c, std::ostream& out, std::ostream& err) {
  const MapDescriptor map = load_map(c.map);
  const SynthOptions o = synth_options(c, map);
  SurfaceGrid g;
  try {
    g = synthesize(map, o);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BadConfig) throw ConfigError(e.what());
    err << "g2surf synth: " << e.what() << "\n";
    return kExitResidual;
  }
  const double closed_bound = o.closed_factor * g.h() * g.h();
  const double path_bound = closed_bound;
  const bool pass = g.closedness_residual <= closed_bound && g.path_residual <= path_bound;
  json j = grid_sidecar(g, map);
  j["tolerances"] = {{"closedness", closed_bound}, {"path", path_bound}};
  j["pass"] = pass;
  if (!c.out.empty()) {
    const fs::path dir = out_dir(c);
    write_atomic(dir / "surface.csv", grid_csv(g));
    write_atomic(dir / "surface.json", dump(j));
  }
  out << dump(j);
  for (const auto& w : g.warnings) err << "warning: " << w << "\n";
  return pass ? kExitPass : kExitResidual;
}

int cmd_invariants(const Config& c, std::ostream& out, std::ostream& err) {
  const MapDescriptor map = load_map(c.map);
  const SynthOptions o = synth_options(c, map);
  json j;
  bool pass = true;
  try {
    const SurfaceGrid g = synthesize(map, o);
    const ClassReport r = classify(g, Tolerances::for_grid(g).scaled(tolerance_scale(c.tol)), c.pointwise);
    j = to_json(r);
    j["grid"] = grid_sidecar(g, map);
    j["grid"].erase("schema_version");
    pass = r.cross_check_ok;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BadConfig) throw ConfigError(e.what());
    err << "g2surf invariants: " << e.what() << "\n";
    return kExitResidual;
  }
  emit(c, "invariants.json", j, out);
  return pass ? kExitPass : kExitResidual;
}

int cmd_check(const Config& c, std::ostream& out) {
  if (c.list) {
    for (const auto& info : acceptance_criteria())
      out << info.id << "  " << info.title << " (limit " << info.time_limit << " s)\n";
    return kExitPass;
  }
  for (int id : c.ids)
    if (id < 1 || id > static_cast<int>(acceptance_criteria().size()))
      throw ConfigError("no criterion " + std::to_string(id));
  AcceptanceOptions opt;
  opt.seed = resolve_seed(c);
  opt.tol_scale = tolerance_scale(c.tol);
  const auto results = run_acceptance(opt, c.ids);
  bool pass = true;
  json crit = json::array();
  for (const auto& r : results) {
    out << format_result(r);
    pass = pass && r.pass;
    crit.push_back(to_json(r));
  }
  out << (pass ? "all criteria passed\n" : "some criteria FAILED\n");
  if (!c.out.empty()) {
    const json j = {{"schema_version", kSchemaVersion},
                    {"seed", opt.seed},
                    {"tol_scale", opt.tol_scale},
                    {"pass", pass},
                    {"criteria", crit}};
    write_atomic(out_dir(c) / "check.json", dump(j));
  }
  return pass ? kExitPass : kExitResidual;
}

void add_grid_flags(CLI::App* sub, Config& c) {
  sub->add_option("--map", c.map, "catalog name or descriptor .json file");
  sub->add_option("--domain", c.domain, "x0,x1,y0,y1");
  sub->add_option("--grid", c.grid, "N or N,M nodes");
  sub->add_option("--mode", c.mode, "analytic or fd");
  sub->add_option("--step", c.step, "grid spacing (alternative to --grid)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app("Surfaces in R^7 from harmonic maps into S^6", "g2surf");
  app.require_subcommand(1);

  auto* algebra = app.add_subcommand("algebra", "cross product identity suite");
  auto* plane = app.add_subcommand("plane", "classify the span of 2 to 4 vectors");
  auto* synth = app.add_subcommand("synth", "integrate F and its parallel surfaces on a grid");
  auto* inv = app.add_subcommand("invariants", "classify a surface from its harmonic sequence");
  auto* check = app.add_subcommand("check", "run the acceptance criteria");

  std::uint64_t seed = 0;
  for (auto* sub : {algebra, plane, synth, inv, check}) {
    sub->add_option("--tol", c.tol, "default, tight, loose or a positive scale factor");
    sub->add_option("--out", c.out, "output directory");
  }
  for (auto* sub : {algebra, check}) sub->add_option("--seed", seed, "random seed (default: $G2SURF_SEED or 1)");
  algebra->add_option("--inject-sign-error", c.inject, "flip the sign of e_i x e_j (i,j in 1..7)");
  plane->add_option("vectors", c.vectors, "eK or seven comma-separated numbers")->required();
  add_grid_flags(synth, c);
  add_grid_flags(inv, c);
  inv->add_flag("--pointwise", c.pointwise, "include per-point residual arrays");
  check->add_flag("--list", c.list, "list criteria without running");
  check->add_option("ids", c.ids, "criteria to run (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }
  for (auto* sub : {algebra, check})
    if (sub->parsed() && sub->count("--seed")) c.seed = seed;

  try {
    if (algebra->parsed()) return cmd_algebra(c, out);
    if (plane->parsed()) return cmd_plane(c, out);
    if (synth->parsed()) return cmd_synth(c, out, err);
    if (inv->parsed()) return cmd_invariants(c, out, err);
    return cmd_check(c, out);
  } catch (const ConfigError& e) {
    err << "g2surf: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "g2surf: " << e.what() << "\n";
    return e.code() == ErrorCode::BadConfig ? kExitConfig : kExitResidual;
  }
}

}  // namespace g2surf::cli
