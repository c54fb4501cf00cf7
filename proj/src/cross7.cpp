#include "g2surf/cross7.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace g2surf {

CrossTable make_canonical_table() {
  // Row i, column j holds e_{i+1} x e_{j+1} as a signed one-based index.
  static constexpr int kRows[7][7] = {
      {0, 3, -2, 5, -4, -7, 6},   //
      {-3, 0, 1, 6, 7, -4, -5},   //
      {2, -1, 0, 7, -6, 5, -4},   //
      {-5, -6, -7, 0, 1, 2, 3},   //
      {4, -7, 6, -1, 0, -3, 2},   //
      {7, 4, -5, -2, 3, 0, -1},   //
      {-6, 5, 4, -3, -2, 1, 0},   //
  };
  CrossTable t;
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      const int e = kRows[i][j];
      t.entries_[i][j] = e == 0 ? BasisProduct{0, 0} : BasisProduct{std::abs(e) - 1, e > 0 ? 1 : -1};
    }
  }
  return t;
}

const CrossTable& CrossTable::canonical() {
  static const CrossTable table = make_canonical_table();
  return table;
}

CrossTable CrossTable::with_sign_error(int i, int j) const {
  if (i < 0 || i >= 7 || j < 0 || j >= 7 || i == j)
    throw std::invalid_argument("with_sign_error: need distinct indices in [0,7)");
  CrossTable t = *this;
  t.entries_[i][j].sign = -t.entries_[i][j].sign;
  t.entries_[j][i].sign = -t.entries_[j][i].sign;
  return t;
}

std::array<double, 7> identity_residuals(const RVec7& x, const RVec7& y, const RVec7& z,
                                         const CrossTable& t) {
  auto X = [&](const RVec7& a, const RVec7& b) { return t.cross(a, b); };
  std::array<double, 7> r{};

  const RVec7 xy = X(x, y);
  r[0] = std::max(std::abs(dot(x, xy)), std::abs(dot(xy, y)));

  const double dxy = dot(x, y);
  r[1] = std::abs(dot(xy, xy) - (dot(x, x) * dot(y, y) - dxy * dxy));

  r[2] = max_abs(xy + X(y, x));

  const double a = dot(x, X(y, z));
  const double b = dot(y, X(z, x));
  const double c = dot(z, xy);
  r[3] = std::max(std::abs(a - b), std::abs(b - c));

  const RVec7 yz = X(y, z);
  const RVec7 zx = X(z, x);
  const RVec7 lhs5 = X(xy, X(x, z));
  const RVec7 rhs5 = X(X(xy, z), x) + X(X(yz, x), x) + X(X(zx, x), y);
  r[4] = max_abs(lhs5 - rhs5);

  r[5] = max_abs(X(x, xy) - (-dot(x, x) * y + dxy * x));

  const RVec7 lhs7 = X(x, yz) + X(xy, z);
  const RVec7 rhs7 = 2.0 * dot(x, z) * y - dxy * z - dot(y, z) * x;
  r[6] = max_abs(lhs7 - rhs7);
  return r;
}

IdentityReport identity_suite(std::uint64_t seed, int trials, const CrossTable& table) {
  if (trials < 1) throw std::invalid_argument("identity_suite: trials must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&] {
    RVec7 v;
    for (double& x : v.c) x = normal(rng);
    return v;
  };

  IdentityReport rep;
  rep.seed = seed;
  rep.trials = trials;
  for (int n = 0; n < trials; ++n) {
    const RVec7 x = draw(), y = draw(), z = draw();
    rep.max_input_norm = std::max({rep.max_input_norm, norm(x), norm(y), norm(z)});
    const auto r = identity_residuals(x, y, z, table);
    for (std::size_t k = 0; k < 7; ++k) rep.max_residual[k] = std::max(rep.max_residual[k], r[k]);
  }
  return rep;
}

}  // namespace g2surf
