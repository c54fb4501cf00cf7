#include "g2surf/planes.hpp"

#include <algorithm>
#include <string>

#include "g2surf/cross7.hpp"
#include "g2surf/error.hpp"

namespace g2surf {

namespace {

PlaneVerdict verdict(PlaneLabel when_holds, double residual, double tol) {
  return PlaneVerdict{residual < tol ? when_holds : PlaneLabel::generic, residual, tol};
}

void require_dim(const Subspace& s, int dim, const char* who) {
  if (s.dim() != dim)
    throw Error(ErrorCode::BadDimension,
                std::string(who) + ": expected dim " + std::to_string(dim) + ", got " + std::to_string(s.dim()));
}

double mutual_orthogonality(const Subspace& a, const Subspace& b) {
  double m = 0.0;
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) m = std::max(m, std::abs(dot(x, y)));
  return m;
}

}  // namespace

std::string_view to_string(PlaneLabel label) {
  switch (label) {
    case PlaneLabel::associative: return "associative";
    case PlaneLabel::coassociative: return "coassociative";
    case PlaneLabel::cross_compatible: return "cross_compatible";
    case PlaneLabel::generic: return "generic";
  }
  return "generic";
}

Subspace Subspace::orthonormalize(std::span<const RVec7> vectors) {
  if (vectors.empty() || vectors.size() > 7)
    throw Error(ErrorCode::BadDimension, "orthonormalize: need 1..7 vectors");
  Subspace s;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    RVec7 v = vectors[k];
    // Second pass restores orthogonality lost to cancellation.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : s.basis_) v -= dot(v, b) * b;
    const double n = norm(v);
    if (n < kPivotThreshold)
      throw Error(ErrorCode::DependentInput, "pivot " + std::to_string(k) + " collapsed (norm " + std::to_string(n) + ")");
    s.basis_.push_back(v / n);
  }
  return s;
}

Subspace Subspace::coordinate(std::initializer_list<int> indices) {
  std::vector<RVec7> v;
  for (int i : indices) v.push_back(RVec7::basis(static_cast<std::size_t>(i)));
  return orthonormalize(v);
}

RVec7 Subspace::project(const RVec7& v) const {
  RVec7 p{};
  for (const auto& b : basis_) p += dot(v, b) * b;
  return p;
}

Subspace Subspace::complement() const {
  Subspace s = *this;
  const std::size_t target = 7;
  // Greedy: add the coordinate axis with the largest residual each round.
  while (s.basis_.size() < target) {
    RVec7 best{};
    double best_n = -1.0;
    for (std::size_t i = 0; i < 7; ++i) {
      RVec7 r = s.reject(RVec7::basis(i));
      r = s.reject(r);
      const double n = norm(r);
      if (n > best_n) {
        best_n = n;
        best = r;
      }
    }
    s.basis_.push_back(best / best_n);
  }
  Subspace out;
  out.basis_.assign(s.basis_.begin() + static_cast<std::ptrdiff_t>(basis_.size()), s.basis_.end());
  return out;
}

double Subspace::containment_residual(const Subspace& other) const {
  double m = 0.0;
  for (const auto& b : other.basis()) m = std::max(m, distance(b));
  return m;
}

double Subspace::orthonormality_defect() const {
  double m = 0.0;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = 0; j < basis_.size(); ++j)
      m = std::max(m, std::abs(dot(basis_[i], basis_[j]) - (i == j ? 1.0 : 0.0)));
  return m;
}

PlaneVerdict is_associative(const Subspace& v, double tol) {
  require_dim(v, 3, "is_associative");
  double r = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) r = std::max(r, v.distance(cross(v[i], v[j])));
  return verdict(PlaneLabel::associative, r, tol);
}

PlaneVerdict is_coassociative(const Subspace& w, double tol) {
  require_dim(w, 4, "is_coassociative");
  const PlaneVerdict inner = is_associative(w.complement(), tol);
  return verdict(PlaneLabel::coassociative, inner.residual, tol);
}

PlaneVerdict cross_compatible(const Subspace& w1, const Subspace& w2, double tol) {
  require_dim(w1, 2, "cross_compatible(W1)");
  require_dim(w2, 2, "cross_compatible(W2)");
  const double o = mutual_orthogonality(w1, w2);
  if (o >= 1e-10) throw Error(ErrorCode::NotOrthogonal, "cross_compatible: W1 and W2 overlap by " + std::to_string(o));
  const double r = std::abs(dot(cross(w1[0], w1[1]), cross(w2[0], w2[1])));
  return verdict(PlaneLabel::cross_compatible, r, tol);
}

PlaneVerdict admits_cross_compatible(const Subspace& w, double tol) {
  require_dim(w, 4, "admits_cross_compatible");
  const Subspace w1 = Subspace::orthonormalize({w[0], w[1]});
  const Subspace w2 = Subspace::orthonormalize({w[2], w[3]});
  return cross_compatible(w1, w2, tol);
}

Subspace associative_completion(const Subspace& w1, const Subspace& w2, double tol) {
  require_dim(w1, 2, "associative_completion(W1)");
  require_dim(w2, 2, "associative_completion(W2)");
  const double o = mutual_orthogonality(w1, w2);
  if (o >= 1e-10) throw Error(ErrorCode::NotOrthogonal, "associative_completion: W1 and W2 overlap");

  const RVec7& v1 = w1[0];
  const RVec7& v2 = w1[1];
  RVec7 v3 = w2[0];
  const RVec7& v4 = w2[1];
  const RVec7 a = cross(v1, v2);
  RVec7 b = cross(v3, v4);
  if (max_abs(a + b) < max_abs(a - b)) {
    v3 = -v3;
    b = -b;
  }
  const double mismatch = max_abs(a - b);
  if (mismatch >= tol)
    throw Error(ErrorCode::HypothesisViolated,
                "v1 x v2 and v3 x v4 span different lines (mismatch " + std::to_string(mismatch) + ")");
  return Subspace::orthonormalize({a, cross(v1, v3), cross(v1, v4)});
}

G2Frame::G2Frame(const RVec7& u1, const RVec7& u2, const RVec7& u4) {
  const RVec7 u3 = cross(u1, u2);
  cols_ = {u1, u2, u3, u4, cross(u1, u4), cross(u2, u4), cross(u3, u4)};
  double defect = 0.0;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) defect = std::max(defect, std::abs(dot(cols_[i], cols_[j]) - (i == j ? 1.0 : 0.0)));
  if (defect > 1e-10)
    throw Error(ErrorCode::HypothesisViolated, "G2Frame: (u1, u2, u4) is not a Cayley triple");
}

RVec7 G2Frame::apply(const RVec7& x) const {
  RVec7 out{};
  for (int i = 0; i < 7; ++i) out += x.c[i] * cols_[i];
  return out;
}

CVec7 G2Frame::apply(const CVec7& x) const {
  return complexify(apply(real(x))) + cplx(0, 1) * complexify(apply(imag(x)));
}

}  // namespace g2surf
