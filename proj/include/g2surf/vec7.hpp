#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace g2surf {

using cplx = std::complex<double>;

/// Fixed-size 7-vector over a real or complex scalar field.
///
/// The dot product on this type is always the bilinear one (no conjugation);
/// Hermitian products are spelled out explicitly with herm().
template <class T>
struct Vec7 {
  std::array<T, 7> c{};

  static constexpr std::size_t size() { return 7; }

  static Vec7 zero() { return Vec7{}; }
  /// Canonical basis vector e_{i+1} (zero-based index).
  static Vec7 basis(std::size_t i) {
    Vec7 v{};
    v.c[i] = T(1);
    return v;
  }

  T& operator[](std::size_t i) { return c[i]; }
  const T& operator[](std::size_t i) const { return c[i]; }

  Vec7& operator+=(const Vec7& o) {
    for (std::size_t i = 0; i < 7; ++i) c[i] += o.c[i];
    return *this;
  }
  Vec7& operator-=(const Vec7& o) {
    for (std::size_t i = 0; i < 7; ++i) c[i] -= o.c[i];
    return *this;
  }
  Vec7& operator*=(const T& s) {
    for (auto& x : c) x *= s;
    return *this;
  }
  Vec7& operator/=(const T& s) {
    for (auto& x : c) x /= s;
    return *this;
  }

  friend Vec7 operator+(Vec7 a, const Vec7& b) { return a += b; }
  friend Vec7 operator-(Vec7 a, const Vec7& b) { return a -= b; }
  friend Vec7 operator-(Vec7 a) {
    for (auto& x : a.c) x = -x;
    return a;
  }
  friend Vec7 operator*(Vec7 a, const T& s) { return a *= s; }
  friend Vec7 operator*(const T& s, Vec7 a) { return a *= s; }
  friend Vec7 operator/(Vec7 a, const T& s) { return a /= s; }

  friend bool operator==(const Vec7&, const Vec7&) = default;
};

using RVec7 = Vec7<double>;
using CVec7 = Vec7<cplx>;

// Mixed real/complex scaling shows up everywhere in the frame code.
inline CVec7 operator*(double s, const CVec7& v) { return cplx(s) * v; }
inline CVec7 operator*(const CVec7& v, double s) { return cplx(s) * v; }
inline CVec7 operator*(cplx s, const RVec7& v) {
  CVec7 out;
  for (std::size_t i = 0; i < 7; ++i) out.c[i] = s * v.c[i];
  return out;
}

inline CVec7 complexify(const RVec7& v) {
  CVec7 out;
  for (std::size_t i = 0; i < 7; ++i) out.c[i] = v.c[i];
  return out;
}

inline CVec7 conj(const CVec7& v) {
  CVec7 out;
  for (std::size_t i = 0; i < 7; ++i) out.c[i] = std::conj(v.c[i]);
  return out;
}

inline RVec7 real(const CVec7& v) {
  RVec7 out;
  for (std::size_t i = 0; i < 7; ++i) out.c[i] = v.c[i].real();
  return out;
}

inline RVec7 imag(const CVec7& v) {
  RVec7 out;
  for (std::size_t i = 0; i < 7; ++i) out.c[i] = v.c[i].imag();
  return out;
}

/// Complex-bilinear (not Hermitian) inner product.
template <class T>
T dot(const Vec7<T>& x, const Vec7<T>& y) {
  T s{};
  for (std::size_t i = 0; i < 7; ++i) s += x.c[i] * y.c[i];
  return s;
}

/// h(x, y) = x . conj(y)
inline cplx herm(const CVec7& x, const CVec7& y) {
  cplx s{};
  for (std::size_t i = 0; i < 7; ++i) s += x.c[i] * std::conj(y.c[i]);
  return s;
}

inline double norm2(const RVec7& v) { return dot(v, v); }
inline double norm2(const CVec7& v) { return herm(v, v).real(); }
inline double norm(const RVec7& v) { return std::sqrt(norm2(v)); }
inline double norm(const CVec7& v) { return std::sqrt(norm2(v)); }

inline double max_abs(const RVec7& v) {
  double m = 0.0;
  for (double x : v.c) m = std::max(m, std::abs(x));
  return m;
}

inline bool all_finite(const RVec7& v) {
  for (double x : v.c)
    if (!std::isfinite(x)) return false;
  return true;
}

inline bool all_finite(const CVec7& v) {
  for (const auto& x : v.c)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return true;
}

}  // namespace g2surf
