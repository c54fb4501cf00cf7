#include <gtest/gtest.h>

#include <numbers>

#include "g2surf/catalog.hpp"
#include "g2surf/cross7.hpp"
#include "g2surf/error.hpp"
#include "g2surf/harmonic_jet.hpp"
#include "g2surf/surface_synth.hpp"
#include "test_util.hpp"

using namespace g2surf;
using namespace g2surf::testing;
using std::numbers::pi;

namespace {

void expect_code(ErrorCode code, auto&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), code) << err.what();
  }
}

}  // namespace

TEST(Catalog, CliffordValuesAtOrigin) {
  EXPECT_LT(dist(clifford_coassoc().value(0.0), (e(4) + e(6)) / std::sqrt(2.0)), 1e-15);
  EXPECT_LT(dist(clifford_w1234().value(0.0), (e(1) + e(3)) / std::sqrt(2.0)), 1e-15);
}

TEST(Catalog, EveryMapIsUnitLength) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const std::string& name : catalog_names()) {
    const MapDescriptor m = catalog_map(name);
    for (int t = 0; t < 200; ++t) EXPECT_NEAR(norm(m.value({u(rng), u(rng)})), 1.0, 1e-12) << name;
  }
}

TEST(Catalog, ValueMatchesJet) {
  for (const std::string& name : catalog_names()) {
    const MapDescriptor m = catalog_map(name);
    for (cplx z : validation_samples()) EXPECT_LT(dist(complexify(m.value(z)), m.jet(z)(0, 0)), 1e-14) << name;
  }
}

TEST(Catalog, TrexPresetIsValid) {
  const MapDescriptor m = trex();
  EXPECT_EQ(m.kind(), MapKind::flat_exponential);
  const FlatParams& p = m.flat();
  const cplx w = std::polar(1.0, 2 * pi / 3);
  EXPECT_LT(std::abs(p.mu[1] - w), 1e-15);
  EXPECT_LT(std::abs(p.mu[2] - w * w), 1e-15);
  cplx s{};
  for (const CVec7& v : p.v) s += herm(v, v);
  EXPECT_NEAR(s.real(), 0.5, 1e-15);
  EXPECT_NEAR(s.imag(), 0.0, 1e-15);
  const CVec7 v1 = std::polar(1.0 / (2 * std::sqrt(3.0)), pi / 6) * (ce(1) + kI * e(5));
  EXPECT_LT(dist(p.v[0], v1), 1e-15);
}

TEST(Catalog, FlatFamilyUnitOnRandomPoints) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  const MapDescriptor m = catalog_map("trex_rotated");
  for (int t = 0; t < 1000; ++t) ASSERT_NEAR(norm(trex().value({u(rng), u(rng)})), 1.0, 1e-8);
  for (int t = 0; t < 1000; ++t) ASSERT_NEAR(norm(m.value({u(rng), u(rng)})), 1.0, 1e-8);
}

TEST(Catalog, PerturbedFlatFamilyRejected) {
  FlatParams p = trex().flat();
  p.v[0] = 1.01 * p.v[0];
  expect_code(ErrorCode::ConstraintViolated, [&] { flat_exponential(p.mu, p.v); });
  FlatParams q = trex().flat();
  q.mu[1] = q.mu[0];
  expect_code(ErrorCode::ConstraintViolated, [&] { flat_exponential(q.mu, q.v); });
  FlatParams r = trex().flat();
  r.mu[0] = 1.1;
  expect_code(ErrorCode::ConstraintViolated, [&] { flat_exponential(r.mu, r.v); });
}

TEST(Catalog, TotallyGeodesicSphere) {
  const MapDescriptor m = totally_geodesic_s2();
  EXPECT_LT(dist(m.value(0.0), -1.0 * e(3)), 1e-15);
  for (cplx z : validation_samples()) {
    EXPECT_LT(almost_complex_residual(m.jet(z)), 1e-8);
    EXPECT_LT(norm(frame_from_jet(m.jet(z))[2]), 1e-6);
    EXPECT_GT(almost_complex_residual(trex().jet(z)), 0.1);
    EXPECT_GT(almost_complex_residual(catalog_map("totally_geodesic_s2_flipped").jet(z)), 0.1);
  }
}

TEST(Catalog, HarmonicAndConformal) {
  for (const std::string& name : catalog_names()) {
    if (name == "non_harmonic_torus") continue;
    const MapDescriptor m = catalog_map(name);
    const auto d = default_domain(m);
    SynthOptions o;
    o.domain = {d[0], d[1], d[2], d[3]};
    o.nx = o.ny = 65;
    o.mode = DerivativeMode::finite_difference;
    const SurfaceGrid g = sample_map(m, o);
    double harm = 0.0;
    for (const RealPartials& p : g.partials) harm = std::max(harm, norm(cross(p.phi, p.laplacian())));
    EXPECT_LT(harm, 100 * g.h() * g.h()) << name;
    for (cplx z : validation_samples()) EXPECT_LT(std::abs(dot(m.jet(z)(1, 0), m.jet(z)(1, 0))), 1e-8) << name;
  }
}

TEST(Rotation, Properties) {
  std::mt19937_64 rng(6);
  const RVec7 v = e(4);
  for (int t = 0; t < 50; ++t) {
    RVec7 x = random_vec(rng);
    x = x - dot(x, v) * v;
    EXPECT_LT(dist(rotate_vector(v, 0.0, x), x), 1e-15);
    EXPECT_LT(dist(rotate_vector(v, 0.8, v), v), 1e-15);
    const RVec7 twice = rotate_vector(v, 0.3, rotate_vector(v, 0.5, x));
    EXPECT_LT(dist(twice, rotate_vector(v, 0.8, x)), 1e-10 * norm(x));
  }
}

TEST(Rotation, PreservesCrossProductOnEquator) {
  // On v-perp the rotation preserves v x ., so frames rotate with the map.
  const MapDescriptor base = trex(), rot = rotate_map(base, e(4), 0.7);
  EXPECT_EQ(rot.kind(), MapKind::rotated);
  for (cplx z : validation_samples()) {
    const HarmonicFrame a = frame_from_jet(rot.jet(z)), b = frame_from_jet(base.jet(z));
    for (int j = -1; j <= 4; ++j) EXPECT_LT(dist(a[j], rotate_vector(e(4), 0.7, b[j])), 1e-10);
  }
}

TEST(Rotation, Errors) {
  expect_code(ErrorCode::NotInEquator, [] { rotate_map(clifford_coassoc(), e(4), 0.3); });
  expect_code(ErrorCode::ConstraintViolated, [] { rotate_map(trex(), 2.0 * e(4), 0.3); });
}

TEST(Catalog, JsonRoundTrip) {
  for (const std::string& name : catalog_names()) {
    const MapDescriptor m = catalog_map(name);
    const nlohmann::json j = to_json(m);
    const MapDescriptor back = map_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(back.kind(), m.kind()) << name;
    EXPECT_EQ(to_json(back), j) << name;
    for (cplx z : validation_samples()) EXPECT_LT(dist(back.value(z), m.value(z)), 1e-14) << name;
  }
}

TEST(Catalog, JsonErrors) {
  expect_code(ErrorCode::BadConfig, [] { map_from_json(nlohmann::json::parse(R"({"kind": "nope"})")); });
  expect_code(ErrorCode::BadConfig, [] { map_from_json(nlohmann::json::parse(R"([1, 2])")); });
  nlohmann::json j = to_json(trex());
  j.erase(j.begin());
  expect_code(ErrorCode::BadConfig, [&] { map_from_json(j); });
  expect_code(ErrorCode::BadConfig, [] { catalog_map("no_such_map"); });
}

TEST(Catalog, DefaultDomains) {
  EXPECT_DOUBLE_EQ(default_domain(clifford_coassoc())[1], 2 * pi);
  EXPECT_DOUBLE_EQ(default_domain(trex())[0], -1.0);
  EXPECT_EQ(to_string(MapKind::flipped), "flipped");
}
