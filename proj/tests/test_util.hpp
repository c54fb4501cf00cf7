#pragma once

#include <random>

#include "g2surf/vec7.hpp"

namespace g2surf::testing {

inline const cplx kI(0.0, 1.0);

/// e_k, one-based.
inline RVec7 e(int k) { return RVec7::basis(static_cast<std::size_t>(k - 1)); }
inline CVec7 ce(int k) { return complexify(e(k)); }

inline RVec7 random_vec(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  RVec7 v;
  for (double& c : v.c) c = n(rng);
  return v;
}

inline CVec7 random_cvec(std::mt19937_64& rng) { return complexify(random_vec(rng)) + kI * random_vec(rng); }

inline double dist(const RVec7& a, const RVec7& b) { return norm(a - b); }
inline double dist(const CVec7& a, const CVec7& b) { return norm(a - b); }

}  // namespace g2surf::testing
