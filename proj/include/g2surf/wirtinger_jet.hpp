#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>

#include "g2surf/cross7.hpp"
#include "g2surf/vec7.hpp"

namespace g2surf {

/// Truncated bivariate jet in the Wirtinger derivatives of a smooth function
/// of (z, zbar): entry (a, b) holds d^a/dz^a d^b/dzbar^b g at a fixed point,
/// for a + b <= order(). Arithmetic follows the Leibniz rule, so products,
/// quotients and conjugates of jets are exact up to rounding.
template <class T>
class WJet {
 public:
  static constexpr int kMaxOrder = 4;
  static constexpr int kSize = (kMaxOrder + 1) * (kMaxOrder + 2) / 2;

  WJet() = default;
  explicit WJet(int order) : order_(order) { assert(order >= 0 && order <= kMaxOrder); }

  /// Constant function.
  static WJet constant(const T& v, int order = kMaxOrder) {
    WJet j(order);
    j(0, 0) = v;
    return j;
  }

  static constexpr int index(int a, int b) {
    const int n = a + b;
    return n * (n + 1) / 2 + b;
  }

  int order() const { return order_; }
  T& operator()(int a, int b) {
    assert(a >= 0 && b >= 0 && a + b <= order_);
    return d_[index(a, b)];
  }
  const T& operator()(int a, int b) const {
    assert(a >= 0 && b >= 0 && a + b <= order_);
    return d_[index(a, b)];
  }
  const T& value() const { return d_[0]; }

  /// d/dz; the result is valid to one order less.
  WJet dz() const {
    assert(order_ >= 1);
    WJet r(order_ - 1);
    for (int n = 0; n <= r.order_; ++n)
      for (int b = 0; b <= n; ++b) r(n - b, b) = (*this)(n - b + 1, b);
    return r;
  }
  WJet dzbar() const {
    assert(order_ >= 1);
    WJet r(order_ - 1);
    for (int n = 0; n <= r.order_; ++n)
      for (int b = 0; b <= n; ++b) r(n - b, b) = (*this)(n - b, b + 1);
    return r;
  }

  /// Drops entries above `order`.
  WJet truncated(int order) const {
    WJet r(std::min(order, order_));
    for (int n = 0; n <= r.order_; ++n)
      for (int b = 0; b <= n; ++b) r(n - b, b) = (*this)(n - b, b);
    return r;
  }

  WJet& operator+=(const WJet& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k < index(order_ + 1, 0); ++k) d_[k] += o.d_[k];
    return *this;
  }
  WJet& operator-=(const WJet& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k < index(order_ + 1, 0); ++k) d_[k] -= o.d_[k];
    return *this;
  }
  friend WJet operator+(WJet a, const WJet& b) { return a += b; }
  friend WJet operator-(WJet a, const WJet& b) { return a -= b; }
  friend WJet operator-(WJet a) {
    for (auto& x : a.d_) x = -x;
    return a;
  }

  /// Entrywise map; used for linear maps such as rotations.
  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(d_[0]));
    WJet<U> r(order_);
    for (int n = 0; n <= order_; ++n)
      for (int b = 0; b <= n; ++b) r(n - b, b) = f((*this)(n - b, b));
    return r;
  }

 private:
  int order_ = 0;
  std::array<T, kSize> d_{};
};

using SJet = WJet<cplx>;
using VJet = WJet<CVec7>;

namespace jet_detail {

inline constexpr std::array<std::array<double, 5>, 5> kBinomial = {{
    {1, 0, 0, 0, 0},
    {1, 1, 0, 0, 0},
    {1, 2, 1, 0, 0},
    {1, 3, 3, 1, 0},
    {1, 4, 6, 4, 1},
}};

/// Leibniz rule for an arbitrary bilinear pairing.
template <class A, class B, class Op>
auto leibniz(const WJet<A>& f, const WJet<B>& g, Op op) {
  using R = decltype(op(f.value(), g.value()));
  const int order = std::min(f.order(), g.order());
  WJet<R> r(order);
  for (int n = 0; n <= order; ++n) {
    for (int b = 0; b <= n; ++b) {
      const int a = n - b;
      R acc{};
      for (int i = 0; i <= a; ++i)
        for (int j = 0; j <= b; ++j)
          acc += (kBinomial[a][i] * kBinomial[b][j]) * op(f(i, j), g(a - i, b - j));
      r(a, b) = acc;
    }
  }
  return r;
}

}  // namespace jet_detail

inline SJet operator*(const SJet& f, const SJet& g) {
  return jet_detail::leibniz(f, g, [](const cplx& x, const cplx& y) { return x * y; });
}
inline VJet operator*(const SJet& f, const VJet& g) {
  return jet_detail::leibniz(f, g, [](const cplx& x, const CVec7& y) { return x * y; });
}
inline VJet operator*(const VJet& g, const SJet& f) { return f * g; }

/// Bilinear dot product of vector jets.
inline SJet dot(const VJet& f, const VJet& g) {
  return jet_detail::leibniz(f, g, [](const CVec7& x, const CVec7& y) { return dot(x, y); });
}

inline VJet cross(const VJet& f, const VJet& g) {
  return jet_detail::leibniz(f, g, [](const CVec7& x, const CVec7& y) { return cross(x, y); });
}

/// conj(g) as a function: d^a dbar^b conj(g) = conj(d^b dbar^a g).
template <class T>
WJet<T> conj(const WJet<T>& g) {
  WJet<T> r(g.order());
  for (int n = 0; n <= g.order(); ++n)
    for (int b = 0; b <= n; ++b) {
      using std::conj;
      using g2surf::conj;
      r(n - b, b) = conj(g(b, n - b));
    }
  return r;
}

/// Hermitian product h(f, g) = f . conj(g) as a jet.
inline SJet herm(const VJet& f, const VJet& g) { return dot(f, conj(g)); }

/// 1 / g, requiring g.value() != 0.
inline SJet reciprocal(const SJet& g) {
  SJet r(g.order());
  const cplx inv0 = 1.0 / g.value();
  r(0, 0) = inv0;
  using jet_detail::kBinomial;
  for (int n = 1; n <= g.order(); ++n) {
    for (int b = 0; b <= n; ++b) {
      const int a = n - b;
      cplx acc{};
      for (int i = 0; i <= a; ++i)
        for (int j = 0; j <= b; ++j) {
          if (i == 0 && j == 0) continue;
          acc += kBinomial[a][i] * kBinomial[b][j] * g(i, j) * r(a - i, b - j);
        }
      r(a, b) = -acc * inv0;
    }
  }
  return r;
}

/// Jet of exp(a z + b zbar) scaled by the value at the expansion point.
inline SJet exponential(cplx a, cplx b, cplx value, int order = SJet::kMaxOrder) {
  std::array<cplx, SJet::kMaxOrder + 1> pa{}, pb{};
  pa[0] = pb[0] = 1.0;
  for (int k = 1; k <= order; ++k) {
    pa[k] = pa[k - 1] * a;
    pb[k] = pb[k - 1] * b;
  }
  SJet r(order);
  for (int n = 0; n <= order; ++n)
    for (int q = 0; q <= n; ++q) r(n - q, q) = value * pa[n - q] * pb[q];
  return r;
}

/// The coordinate functions z and zbar at the point z0.
inline SJet coordinate_z(cplx z0, int order = SJet::kMaxOrder) {
  SJet r(order);
  r(0, 0) = z0;
  if (order >= 1) r(1, 0) = 1.0;
  return r;
}
inline SJet coordinate_zbar(cplx z0, int order = SJet::kMaxOrder) {
  SJet r(order);
  r(0, 0) = std::conj(z0);
  if (order >= 1) r(0, 1) = 1.0;
  return r;
}

}  // namespace g2surf
