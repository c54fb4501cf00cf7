#include <gtest/gtest.h>

#include <numbers>

#include "g2surf/catalog.hpp"
#include "g2surf/cross7.hpp"
#include "g2surf/error.hpp"
#include "g2surf/invariants.hpp"
#include "test_util.hpp"

using namespace g2surf;
using namespace g2surf::testing;
using std::numbers::pi;

namespace {

SurfaceGrid grid_for(const MapDescriptor& m, int n = 65, DerivativeMode mode = DerivativeMode::analytic) {
  const auto d = default_domain(m);
  SynthOptions o;
  o.domain = {d[0], d[1], d[2], d[3]};
  o.nx = o.ny = n;
  o.mode = mode;
  return synthesize(m, o);
}

std::vector<MapDescriptor> conformal_catalog() {
  return {clifford_coassoc(), clifford_w1234(), trex(), catalog_map("trex_rotated"), totally_geodesic_s2(),
          catalog_map("totally_geodesic_s2_flipped")};
}

template <class T>
T expect_throws(ErrorCode code, auto&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), code);
  }
  return T{};
}

}  // namespace

TEST(FundamentalForms, CliffordFirstForm) {
  const RealPartials p = real_partials(clifford_coassoc().jet(cplx(0.7, 1.9)));
  const FundForms ff = fundamental_forms(p, {});
  EXPECT_NEAR(ff.I[0], 0.5, 1e-15);
  EXPECT_NEAR(ff.I[1], 0.0, 1e-15);
  EXPECT_NEAR(ff.I[2], 0.5, 1e-15);
}

TEST(FundamentalForms, TraceAlongMeanCurvature) {
  for (const MapDescriptor& m : conformal_catalog())
    for (cplx z : validation_samples()) {
      const RealPartials p = real_partials(m.jet(z));
      const RVec7 h = mean_curvature_real(p);
      const RVec7 n = h / norm(h);
      const FundForms ff = fundamental_forms(p, std::vector<RVec7>{n});
      const Sym2& I = ff.I;
      const Sym2& II = ff.II[0];
      const double det = I[0] * I[2] - I[1] * I[1];
      const double half_trace = 0.5 * (I[2] * II[0] - 2 * I[1] * II[1] + I[0] * II[2]) / det;
      EXPECT_NEAR(half_trace, dot(h, n), 1e-10) << m.name();
    }
}

TEST(FundamentalForms, SphereIsUmbilical) {
  for (cplx z : validation_samples()) {
    const RealPartials p = real_partials(totally_geodesic_s2().jet(z));
    const auto normals = normal_basis(p);
    EXPECT_EQ(normals.size(), 5u);
    EXPECT_LT(umbilicity_residual(fundamental_forms(p, normals)), 1e-6);
  }
  const RealPartials c = real_partials(clifford_coassoc().jet(0.3));
  EXPECT_GT(umbilicity_residual(fundamental_forms(c, normal_basis(c))), 0.1);
}

TEST(FundamentalForms, ConstantMapIsNotImmersion) {
  const RealPartials p = real_partials(exp_sum({{ce(2), 0.0, 0.0}}).jet(0.0));
  expect_throws<int>(ErrorCode::NotImmersion, [&] { fundamental_forms(p, {}); });
}

TEST(MeanCurvature, UnitNormAndFormulasAgree) {
  for (const MapDescriptor& m : conformal_catalog())
    for (cplx z : validation_samples()) {
      const VJet jet = m.jet(z);
      const MeanCurvature h = mean_curvature(frame_from_jet(jet));
      EXPECT_NEAR(norm(h.h), 1.0, 1e-6) << m.name();
      EXPECT_LT(h.imag_residual, 1e-12);
      EXPECT_LT(dist(h.h, mean_curvature_real(real_partials(jet))), 1e-6) << m.name();
    }
}

TEST(MeanCurvature, CliffordClosedForm) {
  for (cplx z : validation_samples()) {
    const double x = z.real(), y = z.imag();
    const RVec7 want = std::cos(x - y) * e(2) - std::sin(x - y) * e(3);
    EXPECT_LT(dist(mean_curvature(frame_from_jet(clifford_coassoc().jet(z))).h, want), 1e-14);
  }
}

TEST(GaussCurvature, Examples) {
  auto range = [](const Grid<double>& K) {
    double lo = INFINITY, hi = -INFINITY;
    for (double k : K) lo = std::min(lo, k), hi = std::max(hi, k);
    return std::pair{lo, hi};
  };
  const auto [s_lo, s_hi] = range(gauss_curvature(grid_for(totally_geodesic_s2(), 129)));
  EXPECT_NEAR(s_lo, 1.0, 1e-3);
  EXPECT_NEAR(s_hi, 1.0, 1e-3);
  for (const MapDescriptor& m : {trex(), clifford_coassoc(), clifford_w1234()}) {
    const auto [lo, hi] = range(gauss_curvature(grid_for(m, 129)));
    EXPECT_LT(std::max(std::abs(lo), std::abs(hi)), 1e-3) << m.name();
  }
}

TEST(Classification, PointResiduals) {
  for (cplx z : validation_samples()) {
    EXPECT_LT(classification_residuals(frame_from_jet(trex().jet(z))).min_hypersphere, 1e-5);
    const PointResiduals c = classification_residuals(frame_from_jet(clifford_coassoc().jet(z)));
    EXPECT_LT(c.parallel_h, 1e-5);
    EXPECT_GT(c.pseudo_umbilical, 0.1);
    const PointResiduals w = classification_residuals(frame_from_jet(clifford_w1234().jet(z)));
    EXPECT_LT(w.pseudo_umbilical, 1e-5);
    EXPECT_GT(w.parallel_h, 0.1);
  }
}

TEST(Classification, ForcedIdentities) {
  for (const MapDescriptor& m : conformal_catalog())
    for (cplx z : validation_samples()) {
      const PointResiduals r = classification_residuals(frame_from_jet(m.jet(z)));
      EXPECT_LT(r.along_f0f1, 1e-8) << m.name();
      EXPECT_LT(r.g_isotropy, 1e-8) << m.name();
    }
}

TEST(Classification, MaskedFrameIsDegenerate) {
  HarmonicFrame f;
  f.last = 0;
  expect_throws<int>(ErrorCode::DegenerateFrame, [&] { classification_residuals(f); });
}

TEST(PhiCrossH, Examples) {
  const PhiCrossH t = phixh_constancy(grid_for(trex()));
  EXPECT_LT(t.residual, 1e-4);
  EXPECT_NEAR(norm(t.mean), 1.0, 1e-6);
  EXPECT_NEAR(std::abs(t.mean.c[3]), 1.0, 1e-6);
  const PhiCrossH s = phixh_constancy(grid_for(totally_geodesic_s2()));
  EXPECT_LT(norm(s.mean), 1e-6);
  EXPECT_GT(phixh_constancy(grid_for(clifford_w1234())).residual, 0.1);
}

TEST(ParallelInvariants, TotallyReal) {
  for (cplx z : validation_samples()) {
    const VJet jet = trex().jet(z);
    const HarmonicFrame f = frame_from_jet(jet);
    const ParallelInvariants p = parallel_invariants(f, real_partials(jet));
    EXPECT_NEAR(p.norm_plus, std::sqrt(0.5), 1e-5);
    EXPECT_NEAR(p.norm_minus, std::sqrt(0.5), 1e-5);
    const RVec7 base = real(kI * cross(f[1], f[-1]));
    EXPECT_LT(dist(p.hplus, 0.5 * (base - real(f[0]))), 1e-12);
    EXPECT_LT(dist(p.hminus, 0.5 * (base + real(f[0]))), 1e-12);
  }
}

TEST(ParallelInvariants, DotWithPhi) {
  for (const MapDescriptor& m : {clifford_coassoc(), clifford_w1234(), trex(), catalog_map("trex_rotated")})
    for (cplx z : validation_samples()) {
      const VJet jet = m.jet(z);
      const ParallelInvariants p = parallel_invariants(frame_from_jet(jet), real_partials(jet));
      EXPECT_NEAR(p.dot_plus, -0.5, 1e-5) << m.name();
      EXPECT_NEAR(p.dot_minus, 0.5, 1e-5) << m.name();
      EXPECT_LT(p.formula_gap, 1e-10) << m.name();
    }
}

TEST(ParallelInvariants, AlmostComplexIsAssociativePoint) {
  const VJet jet = totally_geodesic_s2().jet(cplx(0.1, 0.2));
  expect_throws<int>(ErrorCode::AssociativePoint,
                     [&] { parallel_invariants(frame_from_jet(jet), real_partials(jet)); });
}

TEST(Ellipse, ProjectionAgreesWithSecondSection) {
  for (const MapDescriptor& m : conformal_catalog())
    for (cplx z : validation_samples()) {
      const VJet jet = m.jet(z);
      EXPECT_EQ(ellipse_of_F(real_partials(jet)).kind, ellipse_class(frame_from_jet(jet)).kind) << m.name();
    }
}

TEST(Classify, Verdicts) {
  const ClassReport t = classify(grid_for(trex()));
  EXPECT_EQ(t.verdict, Verdict::minimal_in_hypersphere);
  EXPECT_TRUE(t.isotropic_surface);
  EXPECT_EQ(t.ellipse, EllipseKind::circle);

  const ClassReport c = classify(grid_for(clifford_coassoc()));
  EXPECT_EQ(c.verdict, Verdict::parallel_mean_curvature);
  ASSERT_TRUE(c.span_coassociative.has_value());
  EXPECT_TRUE(c.span_coassociative->holds());
  EXPECT_TRUE(c.cross_check_ok);

  const ClassReport w = classify(grid_for(clifford_w1234()));
  EXPECT_EQ(w.verdict, Verdict::pseudo_umbilical_nonparallel);
  ASSERT_TRUE(w.span_compatible.has_value());
  EXPECT_TRUE(w.span_compatible->holds());
  EXPECT_TRUE(w.cross_check_ok);
  EXPECT_EQ(w.ellipse_disagreements, 0);
}

TEST(Classify, FiniteDifferenceVerdictsMatch) {
  EXPECT_EQ(classify(grid_for(trex(), 129, DerivativeMode::finite_difference)).verdict, Verdict::minimal_in_hypersphere);
  EXPECT_EQ(classify(grid_for(clifford_coassoc(), 129, DerivativeMode::finite_difference)).verdict,
            Verdict::parallel_mean_curvature);
  EXPECT_EQ(classify(grid_for(clifford_w1234(), 129, DerivativeMode::finite_difference)).verdict,
            Verdict::pseudo_umbilical_nonparallel);
}

TEST(Classify, OrientationFlip) {
  const ClassReport a = classify(grid_for(totally_geodesic_s2()));
  const ClassReport b = classify(grid_for(catalog_map("totally_geodesic_s2_flipped")));
  EXPECT_NEAR(a.theta_max, 0.0, 1e-6);
  EXPECT_NEAR(b.theta_min, pi, 1e-6);
  EXPECT_EQ(a.verdict, Verdict::minimal_in_hypersphere);
  EXPECT_EQ(b.verdict, Verdict::minimal_in_hypersphere);
}

TEST(Classify, PointwiseOnlyOnRequest) {
  const SurfaceGrid g = grid_for(trex(), 33);
  EXPECT_FALSE(classify(g).pointwise.has_value());
  const ClassReport r = classify(g, Tolerances::for_grid(g), true);
  ASSERT_TRUE(r.pointwise.has_value());
  EXPECT_EQ(r.pointwise->size(), 33u * 33u);
}

TEST(Tolerances, ScaleWithGrid) {
  const SurfaceGrid a = grid_for(trex(), 33);
  EXPECT_EQ(Tolerances::for_grid(a).classification, 1e-5);
  const SurfaceGrid f = grid_for(trex(), 33, DerivativeMode::finite_difference);
  EXPECT_DOUBLE_EQ(Tolerances::for_grid(f).classification, 100 * f.h() * f.h());
  EXPECT_DOUBLE_EQ(Tolerances{}.scaled(1e-4).classification, 1e-9);
}
