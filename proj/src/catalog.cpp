#include "g2surf/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "g2surf/cross7.hpp"
#include "g2surf/error.hpp"

namespace g2surf {

namespace {

constexpr double kConstraintTol = 1e-10;
constexpr double kUnitSampleTol = 1e-8;
const cplx kI(0.0, 1.0);

CVec7 e(int one_based) { return CVec7::basis(static_cast<std::size_t>(one_based - 1)); }

[[noreturn]] void violated(const std::string& what) { throw Error(ErrorCode::ConstraintViolated, what); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

CVec7 exp_sum_value(const std::vector<ExpTerm>& terms, cplx z) {
  CVec7 v{};
  for (const auto& t : terms) v += std::exp(t.a * z + t.b * std::conj(z)) * t.coeff;
  return v;
}

VJet exp_sum_jet(const std::vector<ExpTerm>& terms, cplx z, int order) {
  VJet j(order);
  for (const auto& t : terms) {
    const cplx ez = std::exp(t.a * z + t.b * std::conj(z));
    const SJet s = exponential(t.a, t.b, ez, order);
    for (int n = 0; n <= order; ++n)
      for (int q = 0; q <= n; ++q) j(n - q, q) += s(n - q, q) * t.coeff;
  }
  return j;
}

/// Unit-norm check on validation samples; also rejects non-real sums.
void check_unit_real(const MapDescriptor& m) {
  for (cplx z : validation_samples()) {
    const VJet j = m.jet(z, 0);
    const CVec7 v = j.value();
    const double im = max_abs(imag(v));
    if (im > kUnitSampleTol) violated(m.name() + ": map is not real-valued (|Im| = " + fmt(im) + ")");
    const double dev = std::abs(norm(real(v)) - 1.0);
    if (dev > kUnitSampleTol) violated(m.name() + ": |phi| != 1 on samples (deviation " + fmt(dev) + ")");
  }
}

std::vector<ExpTerm> torus_terms(int a, int b, int c, int d, double freq_y) {
  // (cos x e_a + sin x e_b + cos(k y) e_c + sin(k y) e_d) / sqrt 2, written
  // through exp(+-i x) and exp(+-i k y) with x = (z + zbar)/2, i y = (z - zbar)/2.
  const double s = 1.0 / (2.0 * std::numbers::sqrt2);
  const cplx ix_a(0.0, 0.5), ix_b(0.0, 0.5);
  const cplx iy_a(0.5 * freq_y, 0.0), iy_b(-0.5 * freq_y, 0.0);
  return {
      {s * (e(a) - kI * e(b)), ix_a, ix_b},
      {s * (e(a) + kI * e(b)), -ix_a, -ix_b},
      {s * (e(c) - kI * e(d)), iy_a, iy_b},
      {s * (e(c) + kI * e(d)), -iy_a, -iy_b},
  };
}

VJet assemble(const std::array<SJet, 7>& comps) {
  const int order = comps[0].order();
  VJet out(order);
  for (int n = 0; n <= order; ++n)
    for (int q = 0; q <= n; ++q)
      for (std::size_t k = 0; k < 7; ++k) out(n - q, q).c[k] = comps[k](n - q, q);
  return out;
}

VJet s2_jet(cplx z0, int order) {
  const SJet z = coordinate_z(z0, order);
  const SJet zb = coordinate_zbar(z0, order);
  const SJet one = SJet::constant(1.0, order);
  const SJet g = reciprocal(one + z * zb);
  std::array<SJet, 7> c;
  for (auto& x : c) x = SJet(order);
  c[0] = (z + zb) * g;
  c[1] = SJet::constant(-kI, order) * (zb - z) * g;
  c[2] = one - SJet::constant(2.0, order) * g;
  return assemble(c);
}

}  // namespace

std::string_view to_string(MapKind kind) {
  switch (kind) {
    case MapKind::clifford_coassoc: return "clifford_coassoc";
    case MapKind::clifford_w1234: return "clifford_w1234";
    case MapKind::flat_exponential: return "flat_exponential";
    case MapKind::totally_geodesic_s2: return "totally_geodesic_s2";
    case MapKind::rotated: return "rotated";
    case MapKind::flipped: return "flipped";
    case MapKind::exp_sum: return "exp_sum";
  }
  return "unknown";
}

std::vector<cplx> validation_samples() {
  std::vector<cplx> pts;
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j) pts.emplace_back(0.9 * i + 0.13 * j, 0.9 * j - 0.07 * i);
  return pts;
}

RVec7 MapDescriptor::value(cplx z) const {
  switch (kind_) {
    case MapKind::totally_geodesic_s2: {
      const double x = z.real(), y = z.imag();
      const double s = 1.0 + x * x + y * y;
      RVec7 v{};
      v.c[0] = 2.0 * x / s;
      v.c[1] = -2.0 * y / s;
      v.c[2] = (x * x + y * y - 1.0) / s;
      return v;
    }
    case MapKind::rotated: return rotate_vector(axis_, beta_, inner_->value(z));
    case MapKind::flipped: return inner_->value(std::conj(z));
    default: return real(exp_sum_value(terms_, z));
  }
}

VJet MapDescriptor::jet(cplx z, int order) const {
  switch (kind_) {
    case MapKind::totally_geodesic_s2: return s2_jet(z, order);
    case MapKind::rotated: {
      const RVec7 axis = axis_;
      const double beta = beta_;
      return inner_->jet(z, order).map([&](const CVec7& v) { return rotate_vector(axis, beta, v); });
    }
    case MapKind::flipped: {
      // For real phi, d^a dbar^b of phi(zbar) at z is (d^b dbar^a phi)(zbar).
      const VJet in = inner_->jet(std::conj(z), order);
      VJet out(order);
      for (int n = 0; n <= order; ++n)
        for (int q = 0; q <= n; ++q) out(n - q, q) = in(q, n - q);
      return out;
    }
    default: return exp_sum_jet(terms_, z, order);
  }
}

MapDescriptor clifford_coassoc() {
  MapDescriptor m;
  m.kind_ = MapKind::clifford_coassoc;
  m.name_ = "clifford_coassoc";
  m.terms_ = torus_terms(4, 5, 6, 7, 1.0);
  return m;
}

MapDescriptor clifford_w1234() {
  MapDescriptor m;
  m.kind_ = MapKind::clifford_w1234;
  m.name_ = "clifford_w1234";
  m.terms_ = torus_terms(1, 2, 3, 4, 1.0);
  return m;
}

MapDescriptor flat_exponential(const std::array<cplx, 3>& mu, const std::array<CVec7, 3>& v) {
  for (int k = 0; k < 3; ++k) {
    if (std::abs(std::abs(mu[k]) - 1.0) > kConstraintTol) violated("mu_" + std::to_string(k + 1) + " is not on the unit circle");
    if (norm(v[k]) < kConstraintTol) violated("v_" + std::to_string(k + 1) + " is zero");
  }
  // +-mu_1, +-mu_2, +-mu_3 must be six distinct points.
  std::array<cplx, 6> pm{mu[0], mu[1], mu[2], -mu[0], -mu[1], -mu[2]};
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      if (std::abs(pm[a] - pm[b]) < 1e-6) violated("the numbers +-mu_k are not distinct");

  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) {
      const double r = std::abs(dot(v[k], v[j]));
      if (r > kConstraintTol)
        violated("v_" + std::to_string(k + 1) + " . v_" + std::to_string(j + 1) + " = 0 fails (" + fmt(r) + ")");
      if (j != k) {
        const double h = std::abs(herm(v[k], v[j]));
        if (h > kConstraintTol)
          violated("v_" + std::to_string(k + 1) + " . conj(v_" + std::to_string(j + 1) + ") = 0 fails (" + fmt(h) + ")");
      }
    }
  cplx total{}, balance{};
  for (int k = 0; k < 3; ++k) {
    total += herm(v[k], v[k]);
    balance += mu[k] * mu[k] * herm(v[k], v[k]);
  }
  if (std::abs(total - 0.5) > kConstraintTol) violated("sum_k v_k . conj(v_k) = 1/2 fails (" + fmt(total.real()) + ")");
  if (std::abs(balance) > kConstraintTol) violated("sum_k mu_k^2 v_k . conj(v_k) = 0 fails (" + fmt(std::abs(balance)) + ")");

  MapDescriptor m;
  m.kind_ = MapKind::flat_exponential;
  m.name_ = "flat_exponential";
  m.flat_ = FlatParams{mu, v};
  for (int k = 0; k < 3; ++k) {
    m.terms_.push_back({v[k], mu[k], -std::conj(mu[k])});
    m.terms_.push_back({conj(v[k]), -mu[k], std::conj(mu[k])});
  }
  check_unit_real(m);
  return m;
}

MapDescriptor trex() {
  using std::numbers::pi;
  const cplx w = std::polar(1.0, 2.0 * pi / 3.0);
  const cplx c = std::polar(1.0 / (2.0 * std::sqrt(3.0)), pi / 6.0);
  std::array<CVec7, 3> v;
  for (int k = 1; k <= 3; ++k) v[k - 1] = c * (e(k) + kI * e(k + 4));
  MapDescriptor m = flat_exponential({1.0, w, w * w}, v);
  m.name_ = "trex";
  return m;
}

MapDescriptor totally_geodesic_s2() {
  MapDescriptor m;
  m.kind_ = MapKind::totally_geodesic_s2;
  m.name_ = "totally_geodesic_s2";
  return m;
}

RVec7 rotate_vector(const RVec7& axis, double beta, const RVec7& x) {
  const double along = dot(axis, x);
  const RVec7 perp = x - along * axis;
  return along * axis + std::cos(beta) * perp + std::sin(beta) * cross(axis, perp);
}

CVec7 rotate_vector(const RVec7& axis, double beta, const CVec7& x) {
  return complexify(rotate_vector(axis, beta, real(x))) + kI * complexify(rotate_vector(axis, beta, imag(x)));
}

MapDescriptor rotate_map(const MapDescriptor& inner, const RVec7& axis, double beta) {
  if (std::abs(norm(axis) - 1.0) > kConstraintTol) violated("rotation axis must be a unit vector");
  for (cplx z : validation_samples()) {
    const double off = std::abs(dot(axis, inner.value(z)));
    if (off > kUnitSampleTol)
      throw Error(ErrorCode::NotInEquator, inner.name() + " leaves the equator of the rotation axis (|v . phi| = " + fmt(off) + ")");
  }
  MapDescriptor m;
  m.kind_ = MapKind::rotated;
  m.name_ = "rotated(" + inner.name() + ")";
  m.axis_ = axis;
  m.beta_ = beta;
  m.inner_ = std::make_shared<const MapDescriptor>(inner);
  return m;
}

MapDescriptor flip_orientation(const MapDescriptor& inner) {
  MapDescriptor m;
  m.kind_ = MapKind::flipped;
  m.name_ = "flipped(" + inner.name() + ")";
  m.inner_ = std::make_shared<const MapDescriptor>(inner);
  return m;
}

MapDescriptor exp_sum(std::vector<ExpTerm> terms, std::string name) {
  if (terms.empty()) violated("exp_sum needs at least one term");
  MapDescriptor m;
  m.kind_ = MapKind::exp_sum;
  m.name_ = std::move(name);
  m.terms_ = std::move(terms);
  check_unit_real(m);
  return m;
}

MapDescriptor non_harmonic_torus() { return exp_sum(torus_terms(4, 5, 6, 7, 2.0), "non_harmonic_torus"); }

double almost_complex_residual(const VJet& jet) {
  const CVec7 f0 = complexify(real(jet.value()));
  const CVec7 f1 = jet(1, 0);
  const double n = norm(f1);
  if (n < 1e-8) throw Error(ErrorCode::BranchPoint, "almost_complex_residual: phi_z vanishes");
  return norm(kI * f1 - cross(f0, f1)) / n;
}

std::vector<std::string> catalog_names() {
  return {"clifford_coassoc",    "clifford_w1234",
          "trex",                "trex_rotated",
          "totally_geodesic_s2", "totally_geodesic_s2_flipped",
          "non_harmonic_torus"};
}

MapDescriptor catalog_map(std::string_view name) {
  if (name == "clifford_coassoc") return clifford_coassoc();
  if (name == "clifford_w1234") return clifford_w1234();
  if (name == "trex") return trex();
  if (name == "trex_rotated") return rotate_map(trex(), RVec7::basis(3), 0.7);
  if (name == "totally_geodesic_s2") return totally_geodesic_s2();
  if (name == "totally_geodesic_s2_flipped") return flip_orientation(totally_geodesic_s2());
  if (name == "non_harmonic_torus") return non_harmonic_torus();
  throw Error(ErrorCode::BadConfig, "unknown catalog map '" + std::string(name) + "'");
}

std::array<double, 4> default_domain(const MapDescriptor& map) {
  switch (map.kind()) {
    case MapKind::clifford_coassoc:
    case MapKind::clifford_w1234: return {0.0, 2.0 * std::numbers::pi, 0.0, 2.0 * std::numbers::pi};
    case MapKind::rotated:
    case MapKind::flipped: return default_domain(*map.inner());
    default: return {-1.0, 1.0, -1.0, 1.0};
  }
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using nlohmann::json;

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cparse(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::BadConfig, "complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

json cvjson(const CVec7& v) {
  json a = json::array();
  for (const auto& x : v.c) a.push_back(cjson(x));
  return a;
}

CVec7 cvparse(const json& j) {
  if (!j.is_array() || j.size() != 7) throw Error(ErrorCode::BadConfig, "vectors need seven entries");
  CVec7 v;
  for (std::size_t i = 0; i < 7; ++i) v.c[i] = cparse(j[i]);
  return v;
}

RVec7 rvparse(const json& j) {
  if (!j.is_array() || j.size() != 7) throw Error(ErrorCode::BadConfig, "vectors need seven entries");
  RVec7 v;
  for (std::size_t i = 0; i < 7; ++i) v.c[i] = j[i].get<double>();
  return v;
}

}  // namespace

nlohmann::json to_json(const MapDescriptor& map) {
  json j;
  j["kind"] = std::string(to_string(map.kind()));
  j["name"] = map.name();
  switch (map.kind()) {
    case MapKind::flat_exponential: {
      json mu = json::array(), v = json::array();
      for (int k = 0; k < 3; ++k) {
        mu.push_back(cjson(map.flat().mu[k]));
        v.push_back(cvjson(map.flat().v[k]));
      }
      j["mu"] = mu;
      j["v"] = v;
      break;
    }
    case MapKind::rotated:
      j["axis"] = map.axis().c;
      j["beta"] = map.beta();
      j["inner"] = to_json(*map.inner());
      break;
    case MapKind::flipped: j["inner"] = to_json(*map.inner()); break;
    case MapKind::exp_sum: {
      json terms = json::array();
      for (const auto& t : map.terms()) terms.push_back({{"coeff", cvjson(t.coeff)}, {"a", cjson(t.a)}, {"b", cjson(t.b)}});
      j["terms"] = terms;
      break;
    }
    default: break;
  }
  return j;
}

MapDescriptor map_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const std::string name = j.value("name", kind);
    if (kind == "clifford_coassoc") return clifford_coassoc();
    if (kind == "clifford_w1234") return clifford_w1234();
    if (kind == "totally_geodesic_s2") return totally_geodesic_s2();
    if (kind == "flat_exponential") {
      std::array<cplx, 3> mu;
      std::array<CVec7, 3> v;
      if (j.at("mu").size() != 3 || j.at("v").size() != 3) throw Error(ErrorCode::BadConfig, "flat_exponential needs three mu and three v");
      for (std::size_t k = 0; k < 3; ++k) {
        mu[k] = cparse(j.at("mu")[k]);
        v[k] = cvparse(j.at("v")[k]);
      }
      if (name == "trex") return trex();
      return flat_exponential(mu, v);
    }
    if (kind == "rotated") return rotate_map(map_from_json(j.at("inner")), rvparse(j.at("axis")), j.at("beta").get<double>());
    if (kind == "flipped") return flip_orientation(map_from_json(j.at("inner")));
    if (kind == "exp_sum") {
      std::vector<ExpTerm> terms;
      for (const auto& t : j.at("terms")) terms.push_back({cvparse(t.at("coeff")), cparse(t.at("a")), cparse(t.at("b"))});
      return exp_sum(std::move(terms), name);
    }
    throw Error(ErrorCode::BadConfig, "unknown map kind '" + kind + "'");
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::BadConfig, std::string("malformed map descriptor: ") + ex.what());
  }
}

}  // namespace g2surf
