#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

#include "g2surf/vec7.hpp"

namespace g2surf {

/// Fornberg's recursion: weights w_k with sum_k w_k f(x_k) ~ f^{(m)}(x0).
std::vector<double> fornberg_weights(double x0, std::span<const double> nodes, int m);

/// Row-major field over an nx-by-ny grid; (i, j) indexes (x, y).
template <class T>
class Grid {
 public:
  Grid() = default;
  Grid(int nx, int ny, const T& fill = T{}) : nx_(nx), ny_(ny), data_(static_cast<std::size_t>(nx) * ny, fill) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return data_.size(); }

  T& operator()(int i, int j) {
    assert(i >= 0 && i < nx_ && j >= 0 && j < ny_);
    return data_[static_cast<std::size_t>(j) * nx_ + i];
  }
  const T& operator()(int i, int j) const {
    assert(i >= 0 && i < nx_ && j >= 0 && j < ny_);
    return data_[static_cast<std::size_t>(j) * nx_ + i];
  }
  T& operator[](std::size_t k) { return data_[k]; }
  const T& operator[](std::size_t k) const { return data_[k]; }

  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(data_[0]));
    Grid<U> out(nx_, ny_);
    for (std::size_t k = 0; k < data_.size(); ++k) out[k] = f(data_[k]);
    return out;
  }

 private:
  int nx_ = 0;
  int ny_ = 0;
  std::vector<T> data_;
};

/// Fourth-order finite-difference operator of order m on n uniform nodes.
/// Interior points use centred stencils; near the ends the window is shifted
/// and widened to m + 4 points so the order is kept.
class Stencil1D {
 public:
  Stencil1D(int n, double h, int m);

  int n() const { return n_; }
  int derivative_order() const { return m_; }

  /// Applies the operator at node i to samples taken with the given stride.
  template <class T, class Get>
  T apply(int i, Get&& get) const {
    const Row& row = rows_[static_cast<std::size_t>(i)];
    T acc{};
    for (std::size_t k = 0; k < row.weights.size(); ++k) acc += row.weights[k] * get(row.start + static_cast<int>(k));
    return acc;
  }

 private:
  struct Row {
    int start = 0;
    std::vector<double> weights;
  };
  int n_;
  int m_;
  std::vector<Row> rows_;
};

/// d^m/dx^m of a grid field along i (x) with spacing hx.
template <class T>
Grid<T> diff_x(const Grid<T>& f, double hx, int m = 1) {
  const Stencil1D s(f.nx(), hx, m);
  Grid<T> out(f.nx(), f.ny());
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) out(i, j) = s.apply<T>(i, [&](int k) -> const T& { return f(k, j); });
  return out;
}

template <class T>
Grid<T> diff_y(const Grid<T>& f, double hy, int m = 1) {
  const Stencil1D s(f.ny(), hy, m);
  Grid<T> out(f.nx(), f.ny());
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) out(i, j) = s.apply<T>(j, [&](int k) -> const T& { return f(i, k); });
  return out;
}

/// Wirtinger derivatives d/dz = (d/dx - i d/dy)/2 and d/dzbar = (d/dx + i d/dy)/2.
Grid<CVec7> diff_z(const Grid<CVec7>& f, double hx, double hy);
Grid<CVec7> diff_zbar(const Grid<CVec7>& f, double hx, double hy);
Grid<cplx> diff_z(const Grid<cplx>& f, double hx, double hy);
Grid<cplx> diff_zbar(const Grid<cplx>& f, double hx, double hy);

/// Laplacian of a scalar field with fourth-order second-derivative stencils.
Grid<double> laplacian(const Grid<double>& f, double hx, double hy);

}  // namespace g2surf
