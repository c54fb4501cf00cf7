#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "g2surf/vec7.hpp"

namespace g2surf {

/// Signed product of two basis vectors: e_i x e_j = sign * e_{index}.
struct BasisProduct {
  int index = 0;  // zero-based
  int sign = 0;   // -1, 0 (diagonal) or +1
};

/// Multiplication table of the 7-dimensional cross product in the canonical
/// basis. All cross products are expanded bilinearly from this table.
class CrossTable {
 public:
  /// The octonionic table with e1 x e2 = e3, e1 x e4 = e5, e2 x e4 = e6,
  /// e3 x e4 = e7 (rows listed in cross7.cpp).
  static const CrossTable& canonical();

  const BasisProduct& operator()(int i, int j) const { return entries_[i][j]; }

  /// Copy with the sign of e_i x e_j flipped (and e_j x e_i, to keep the copy
  /// antisymmetric). Used as a negative control for the identity checks.
  CrossTable with_sign_error(int i, int j) const;

  template <class T>
  Vec7<T> cross(const Vec7<T>& x, const Vec7<T>& y) const {
    // Summed over antisymmetric pairs so that x x y = -(y x x) and x x x = 0
    // hold bit for bit.
    Vec7<T> out{};
    for (int i = 0; i < 7; ++i) {
      for (int j = i + 1; j < 7; ++j) {
        const BasisProduct& p = entries_[i][j];
        if (p.sign == 0) continue;
        const T t = x.c[i] * y.c[j] - x.c[j] * y.c[i];
        if (p.sign > 0)
          out.c[p.index] += t;
        else
          out.c[p.index] -= t;
      }
    }
    return out;
  }

 private:
  std::array<std::array<BasisProduct, 7>, 7> entries_{};
  friend CrossTable make_canonical_table();
};

template <class T>
Vec7<T> cross(const Vec7<T>& x, const Vec7<T>& y) {
  return CrossTable::canonical().cross(x, y);
}

inline CVec7 cross(const RVec7& x, const CVec7& y) { return cross(complexify(x), y); }
inline CVec7 cross(const CVec7& x, const RVec7& y) { return cross(x, complexify(y)); }

/// Short names of the seven cross product identities, in residual index order.
inline constexpr std::array<const char*, 7> kIdentityNames = {
    "orthogonal", "norm", "antisymmetric", "cyclic", "quadratic", "double_cross", "polarized_double_cross"};

/// Maximum absolute residual of each identity over random triples.
struct IdentityReport {
  std::uint64_t seed = 0;
  int trials = 0;
  std::array<double, 7> max_residual{};
  double max_input_norm = 0.0;
};

/// Evaluates the seven identities on `trials` triples of i.i.d. standard-normal real
/// vectors. Deterministic for a fixed seed.
IdentityReport identity_suite(std::uint64_t seed, int trials,
                              const CrossTable& table = CrossTable::canonical());

/// Pointwise residuals of the seven identities for one triple.
std::array<double, 7> identity_residuals(const RVec7& x, const RVec7& y, const RVec7& z,
                                         const CrossTable& table = CrossTable::canonical());

}  // namespace g2surf
