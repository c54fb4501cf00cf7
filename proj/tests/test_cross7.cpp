#include <gtest/gtest.h>

#include <sstream>

#include "g2surf/cross7.hpp"
#include "test_util.hpp"

using namespace g2surf;
using namespace g2surf::testing;

TEST(Cross, E1CrossE2IsE3) { EXPECT_EQ(cross(e(1), e(2)), e(3)); }

TEST(Cross, SelfProductVanishes) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    const CVec7 x = random_cvec(rng);
    EXPECT_EQ(norm(cross(x, x)), 0.0);
  }
}

TEST(Cross, BilinearExpansionOfFourEntries) {
  // e1 x e2 = e3, e1 x e5 = -e4, e4 x e2 = -e6, e4 x e5 = e1
  EXPECT_EQ(cross(e(1) + e(4), e(2) + e(5)), e(1) + e(3) - e(4) - e(6));
}

TEST(Cross, AntisymmetryIsBitExact) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const CVec7 x = random_cvec(rng), y = random_cvec(rng);
    const CVec7 s = cross(x, y) + cross(y, x);
    for (const cplx& c : s.c) EXPECT_EQ(c, cplx(0.0));
  }
}

TEST(Cross, AllFortyNineProductsMatchTable) {
  const char* rows[7] = {"0 3 -2 5 -4 -7 6",  "-3 0 1 6 7 -4 -5", "2 -1 0 7 -6 5 -4", "-5 -6 -7 0 1 2 3",
                         "4 -7 6 -1 0 -3 2",  "7 4 -5 -2 3 0 -1", "-6 5 4 -3 -2 1 0"};
  for (int i = 1; i <= 7; ++i) {
    std::istringstream in(rows[i - 1]);
    for (int j = 1; j <= 7; ++j) {
      int v = 0;
      in >> v;
      const RVec7 want = v == 0 ? RVec7{} : (v > 0 ? 1.0 : -1.0) * e(std::abs(v));
      EXPECT_EQ(cross(e(i), e(j)), want) << "e" << i << " x e" << j;
    }
  }
}

TEST(Cross, ConjugationCommutes) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const CVec7 x = random_cvec(rng), y = random_cvec(rng);
    EXPECT_LT(dist(conj(cross(x, y)), cross(conj(x), conj(y))), 1e-14);
  }
}

TEST(Dot, Examples) {
  EXPECT_EQ(dot(e(1), e(1)), 1.0);
  const CVec7 iso = ce(1) + kI * e(5);
  EXPECT_EQ(dot(iso, iso), cplx(0.0));
}

TEST(Herm, Examples) {
  const CVec7 a = ce(1) + kI * e(2), b = ce(1) - kI * e(2);
  EXPECT_EQ(herm(a, a), cplx(2.0));
  EXPECT_EQ(herm(a, b), cplx(0.0));
}

TEST(Identities, SuiteBelowRoundingThreshold) {
  const IdentityReport r = identity_suite(1, 10000);
  EXPECT_EQ(r.trials, 10000);
  for (int k = 0; k < 7; ++k) EXPECT_LT(r.max_residual[k], 1e-12) << kIdentityNames[k];
}

TEST(Identities, DeterministicForFixedSeed) {
  const IdentityReport a = identity_suite(42, 500), b = identity_suite(42, 500), c = identity_suite(43, 500);
  EXPECT_EQ(a.max_residual, b.max_residual);
  EXPECT_EQ(a.max_input_norm, b.max_input_norm);
  EXPECT_NE(a.max_input_norm, c.max_input_norm);
}

TEST(Identities, DoubleCrossOnBasis) {
  EXPECT_EQ(cross(e(1), cross(e(1), e(2))), -1.0 * e(2));
  const auto r = identity_residuals(e(1), e(2), e(3));
  for (double v : r) EXPECT_LT(v, 1e-15);
}

TEST(Identities, LagrangeOnOrthonormalPair) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    RVec7 x = random_vec(rng), y = random_vec(rng);
    x = x / norm(x);
    y = y - dot(x, y) * x;
    y = y / norm(y);
    EXPECT_NEAR(norm2(cross(x, y)), 1.0, 1e-14);
  }
}

TEST(Identities, SignErrorIsDetected) {
  const CrossTable bad = CrossTable::canonical().with_sign_error(0, 1);
  EXPECT_EQ(bad.cross(e(2), e(1)), e(3));
  const IdentityReport r = identity_suite(1, 200, bad);
  double worst = 0.0;
  for (double v : r.max_residual) worst = std::max(worst, v);
  EXPECT_GT(worst, 1e-2);
}

TEST(Identities, IsotropicKernel) {
  // x = lambda y with y isotropic: x x y = 0 forces x.x = x.y = 0.
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    RVec7 a = random_vec(rng), b = random_vec(rng);
    b = b - (dot(a, b) / norm2(a)) * a;
    b = b * (norm(a) / norm(b));
    const CVec7 y = complexify(a) + kI * b;
    const CVec7 x = cplx(0.3, -1.7) * y;
    EXPECT_LT(norm(cross(x, y)), 1e-12);
    EXPECT_LT(std::abs(dot(x, x)), 1e-12 * norm2(x));
    EXPECT_LT(std::abs(dot(x, y)), 1e-12 * norm(x) * norm(y));
  }
}
