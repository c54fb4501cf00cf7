#include "g2surf/stencil.hpp"

#include <algorithm>
#include <stdexcept>

namespace g2surf {

std::vector<double> fornberg_weights(double x0, std::span<const double> nodes, int m) {
  const int n = static_cast<int>(nodes.size());
  if (m < 0 || n <= m) throw std::invalid_argument("fornberg_weights: need more nodes than the derivative order");
  // c[j][k]: weight of node j for derivative k.
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = c[j][m];
  return w;
}

Stencil1D::Stencil1D(int n, double h, int m) : n_(n), m_(m) {
  const int central = m <= 2 ? 5 : 7;
  const int boundary = m + 4;
  if (n < std::max(central, boundary)) throw std::invalid_argument("Stencil1D: grid too small for a fourth-order stencil");
  rows_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int half = central / 2;
    int width = central;
    int start = i - half;
    if (start < 0 || start + central > n) {
      width = boundary;
      start = std::clamp(i - width / 2, 0, n - width);
    }
    std::vector<double> nodes(static_cast<std::size_t>(width));
    for (int k = 0; k < width; ++k) nodes[static_cast<std::size_t>(k)] = (start + k - i) * h;
    rows_[static_cast<std::size_t>(i)] = Row{start, fornberg_weights(0.0, nodes, m)};
  }
}

namespace {

template <class T>
Grid<T> wirtinger(const Grid<T>& f, double hx, double hy, double sign) {
  const Grid<T> fx = diff_x(f, hx);
  const Grid<T> fy = diff_y(f, hy);
  Grid<T> out(f.nx(), f.ny());
  const cplx factor(0.0, 0.5 * sign);
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = 0.5 * fx[k] + factor * fy[k];
  return out;
}

}  // namespace

Grid<CVec7> diff_z(const Grid<CVec7>& f, double hx, double hy) { return wirtinger(f, hx, hy, -1.0); }
Grid<CVec7> diff_zbar(const Grid<CVec7>& f, double hx, double hy) { return wirtinger(f, hx, hy, 1.0); }
Grid<cplx> diff_z(const Grid<cplx>& f, double hx, double hy) { return wirtinger(f, hx, hy, -1.0); }
Grid<cplx> diff_zbar(const Grid<cplx>& f, double hx, double hy) { return wirtinger(f, hx, hy, 1.0); }

Grid<double> laplacian(const Grid<double>& f, double hx, double hy) {
  const Grid<double> fxx = diff_x(f, hx, 2);
  const Grid<double> fyy = diff_y(f, hy, 2);
  Grid<double> out(f.nx(), f.ny());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = fxx[k] + fyy[k];
  return out;
}

}  // namespace g2surf
