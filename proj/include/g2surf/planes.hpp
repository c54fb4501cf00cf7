#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "g2surf/vec7.hpp"

namespace g2surf {

/// Default tolerance for plane verdicts on inputs with entries of order one.
inline constexpr double kPlaneTolerance = 1e-8;
/// Pivot threshold below which orthonormalization declares dependence.
inline constexpr double kPivotThreshold = 1e-10;

/// A k-dimensional subspace of R^7 held through an orthonormal basis.
/// Equality and membership go through projections; bases are not canonical.
class Subspace {
 public:
  Subspace() = default;

  /// Gram-Schmidt (two passes) over `vectors`, in order.
  /// Throws Error{DependentInput} when a pivot norm drops below kPivotThreshold.
  static Subspace orthonormalize(std::span<const RVec7> vectors);
  static Subspace orthonormalize(std::initializer_list<RVec7> vectors) {
    return orthonormalize(std::span<const RVec7>(vectors.begin(), vectors.size()));
  }
  /// span{e_i : i in indices}, zero-based.
  static Subspace coordinate(std::initializer_list<int> indices);

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<RVec7>& basis() const { return basis_; }
  const RVec7& operator[](int i) const { return basis_[i]; }

  RVec7 project(const RVec7& v) const;
  /// Component of v orthogonal to the subspace.
  RVec7 reject(const RVec7& v) const { return v - project(v); }
  double distance(const RVec7& v) const { return norm(reject(v)); }

  /// Orthonormal basis of the orthogonal complement.
  Subspace complement() const;

  /// Largest distance of any basis vector of `other` from this subspace.
  double containment_residual(const Subspace& other) const;

  /// Applies a linear map given by its action on vectors to every basis vector
  /// and re-orthonormalizes.
  template <class F>
  Subspace transformed(F&& map) const {
    std::vector<RVec7> img;
    img.reserve(basis_.size());
    for (const auto& b : basis_) img.push_back(map(b));
    return orthonormalize(img);
  }

  /// Max |b_i . b_j - delta_ij|.
  double orthonormality_defect() const;

 private:
  std::vector<RVec7> basis_;
};

enum class PlaneLabel { associative, coassociative, cross_compatible, generic };

std::string_view to_string(PlaneLabel label);

struct PlaneVerdict {
  PlaneLabel label = PlaneLabel::generic;
  double residual = 0.0;
  double tolerance = kPlaneTolerance;

  bool holds() const { return label != PlaneLabel::generic; }
};

/// V (dim 3) is associative when it is closed under the cross product.
/// Residual: max over basis pairs of the norm of b_i x b_j outside V.
PlaneVerdict is_associative(const Subspace& v, double tol = kPlaneTolerance);

/// W (dim 4) is coassociative when its orthogonal complement is associative.
PlaneVerdict is_coassociative(const Subspace& w, double tol = kPlaneTolerance);

/// W1 + W2 (both dim 2, mutually orthogonal) is x-compatible when
/// W1 x W1 is orthogonal to W2 x W2. Residual |(b1 x b2).(b3 x b4)|.
PlaneVerdict cross_compatible(const Subspace& w1, const Subspace& w2, double tol = kPlaneTolerance);

/// Tests one split of an orthonormal basis of W; any compatible split implies
/// all splits are compatible.
PlaneVerdict admits_cross_compatible(const Subspace& w, double tol = kPlaneTolerance);

/// Given orthogonal 2-planes with W1 x W1 = W2 x W2 (as lines), returns
/// V = span{v1 x v2, v1 x v3, v1 x v4}, which is associative and orthogonal to
/// W1 + W2. The basis of W2 is re-oriented when v3 x v4 = -(v1 x v2).
/// Throws Error{HypothesisViolated} when the lines differ.
Subspace associative_completion(const Subspace& w1, const Subspace& w2, double tol = kPlaneTolerance);

/// Linear map e1..e7 -> (u1, u2, u1 x u2, u4, u1 x u4, u2 x u4, (u1 x u2) x u4)
/// for orthonormal u1, u2 and unit u4 orthogonal to u1, u2, u1 x u2. Such a
/// map preserves the cross product (an element of G2).
class G2Frame {
 public:
  G2Frame(const RVec7& u1, const RVec7& u2, const RVec7& u4);

  RVec7 apply(const RVec7& x) const;
  CVec7 apply(const CVec7& x) const;
  const std::array<RVec7, 7>& columns() const { return cols_; }

 private:
  std::array<RVec7, 7> cols_;
};

}  // namespace g2surf
