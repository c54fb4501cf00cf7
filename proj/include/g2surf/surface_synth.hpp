#pragma once

#include <string>
#include <vector>

#include "g2surf/catalog.hpp"
#include "g2surf/harmonic_jet.hpp"
#include "g2surf/stencil.hpp"

namespace g2surf {

struct Domain {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
};

enum class DerivativeMode { analytic, finite_difference };

enum class Quadrature {
  corrected_trapezoid,  // trapezoid with the h^2/12 endpoint-derivative correction
  trapezoid,
};

struct SynthOptions {
  Domain domain;
  int nx = 129;
  int ny = 129;
  DerivativeMode mode = DerivativeMode::analytic;
  Quadrature quadrature = Quadrature::corrected_trapezoid;
  /// Throw Error{NotClosed} when closedness_residual > closed_factor * h^2.
  bool require_closed = true;
  double closed_factor = 100.0;
};

/// dF = Fx dx + Fy dy with Fx = phi x phi_y, Fy = -phi x phi_x.
struct OneForm {
  RVec7 Fx, Fy;
};
OneForm one_form(const RealPartials& p);
inline OneForm one_form(const MapJet& jet) { return one_form(real_partials(jet.jet)); }

/// Samples of phi, F and the parallel surfaces on a rectangular grid.
struct SurfaceGrid {
  Domain domain;
  int nx = 0, ny = 0;
  double hx = 0.0, hy = 0.0;
  DerivativeMode mode = DerivativeMode::analytic;

  Grid<RealPartials> partials;
  Grid<HarmonicFrame> frames;
  Grid<unsigned char> mask;  // nonzero at branch points
  Grid<RVec7> Fx, Fy;
  Grid<RVec7> F, Fplus, Fminus;
  Grid<double> conf_plus, conf_minus;  // e^{2 omega+-}

  double closedness_residual = 0.0;
  double path_residual = 0.0;
  double harmonicity_residual = 0.0;  // max |phi x Laplacian(phi)|
  bool parallel_degenerate = false;
  std::vector<std::string> warnings;

  double h() const { return std::max(hx, hy); }
  double x(int i) const { return domain.x0 + i * hx; }
  double y(int j) const { return domain.y0 + j * hy; }
  cplx z(int i, int j) const { return {x(i), y(j)}; }
  Grid<RVec7> phi() const;
};

/// Fills partials, frames, mask and the one-form. Analytic mode evaluates the
/// map's jets at every node (frames by jet arithmetic); fd mode samples phi
/// only and takes every derivative with grid stencils (frames by recursion).
SurfaceGrid sample_map(const MapDescriptor& map, const SynthOptions& opt);

/// Integrates the one-form: up the left edge in y, then along each row in x,
/// with F = 0 at (x0, y0). Also measures the path residual against the other
/// order (bottom edge in x, then columns in y), the closedness residual
/// max |d_y Fx - d_x Fy| and the harmonicity residual. Throws Error{NotClosed}
/// per SynthOptions; a failed harmonicity check alone only adds a warning.
void integrate_F(SurfaceGrid& grid, const SynthOptions& opt);

/// F+- = F +- phi with conformal factors e^{2 omega+-} = 2(|phi_x|^2 -+ phi.(phi_x x phi_y)).
/// Sets parallel_degenerate when either factor drops below 1e-8 somewhere.
void parallel_surfaces(SurfaceGrid& grid);

/// Throws Error{DegenerateParallel} when the grid is degenerate.
void require_regular_parallel(const SurfaceGrid& grid);

/// sample_map + integrate_F + parallel_surfaces.
SurfaceGrid synthesize(const MapDescriptor& map, const SynthOptions& opt);

/// Cumulative integral of samples f_0..f_{n-1} with spacing h. `df` holds
/// df/dt at the same nodes and is used only by the corrected rule.
template <class T>
std::vector<T> cumulative_integral(const std::vector<T>& f, const std::vector<T>& df, double h, Quadrature q) {
  std::vector<T> out(f.size());
  T acc{};
  for (std::size_t k = 1; k < f.size(); ++k) {
    acc += (0.5 * h) * (f[k - 1] + f[k]);
    out[k] = acc;
    if (q == Quadrature::corrected_trapezoid) out[k] -= (h * h / 12.0) * (df[k] - df[0]);
  }
  return out;
}

/// Max |a - b - mean(a - b)| over the grid; used for comparisons up to translation.
double centered_max_deviation(const Grid<RVec7>& a, const Grid<RVec7>& b);

}  // namespace g2surf
