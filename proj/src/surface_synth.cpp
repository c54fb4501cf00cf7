#include "g2surf/surface_synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "g2surf/cross7.hpp"
#include "g2surf/error.hpp"

namespace g2surf {

namespace {

const cplx kI(0.0, 1.0);
constexpr int kMinNodes = 17;
constexpr double kDegenerateConformal = 1e-8;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void check_options(const SynthOptions& opt) {
  if (opt.nx < kMinNodes || opt.ny < kMinNodes)
    throw Error(ErrorCode::BadConfig, "grid must be at least 17x17");
  const Domain& d = opt.domain;
  if (!(d.x1 > d.x0) || !(d.y1 > d.y0) || !std::isfinite(d.x1 - d.x0) || !std::isfinite(d.y1 - d.y0))
    throw Error(ErrorCode::BadConfig, "degenerate parameter rectangle");
}

}  // namespace

OneForm one_form(const RealPartials& p) { return {cross(p.phi, p.y), -cross(p.phi, p.x)}; }

Grid<RVec7> SurfaceGrid::phi() const {
  return partials.map([](const RealPartials& p) { return p.phi; });
}

SurfaceGrid sample_map(const MapDescriptor& map, const SynthOptions& opt) {
  check_options(opt);
  SurfaceGrid g;
  g.domain = opt.domain;
  g.nx = opt.nx;
  g.ny = opt.ny;
  g.hx = (opt.domain.x1 - opt.domain.x0) / (opt.nx - 1);
  g.hy = (opt.domain.y1 - opt.domain.y0) / (opt.ny - 1);
  g.mode = opt.mode;
  g.partials = Grid<RealPartials>(g.nx, g.ny);

  if (opt.mode == DerivativeMode::analytic) {
    g.frames = Grid<HarmonicFrame>(g.nx, g.ny);
    g.mask = Grid<unsigned char>(g.nx, g.ny, 0);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const VJet jet = map.jet(g.z(i, j));
        if (!all_finite(jet.value())) throw Error(ErrorCode::OutOfDomain, map.name() + " is not finite on the grid");
        g.partials(i, j) = real_partials(jet);
        try {
          g.frames(i, j) = frame_from_jet(jet);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::BranchPoint) throw;
          g.mask(i, j) = 1;
          g.frames(i, j).last = 0;
        }
      }
  } else {
    Grid<RVec7> phi(g.nx, g.ny);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        phi(i, j) = map.value(g.z(i, j));
        if (!all_finite(phi(i, j))) throw Error(ErrorCode::OutOfDomain, map.name() + " is not finite on the grid");
      }
    const Grid<RVec7> px = diff_x(phi, g.hx), py = diff_y(phi, g.hy);
    const Grid<RVec7> pxx = diff_x(phi, g.hx, 2), pyy = diff_y(phi, g.hy, 2);
    const Grid<RVec7> pxy = diff_y(px, g.hy);
    Grid<CVec7> f1(g.nx, g.ny);
    for (std::size_t k = 0; k < phi.size(); ++k) {
      g.partials[k] = RealPartials{phi[k], px[k], py[k], pxx[k], pxy[k], pyy[k]};
      f1[k] = 0.5 * (complexify(px[k]) - kI * py[k]);
    }
    g.frames = frames_by_recursion(phi, f1, g.hx, g.hy, g.mask);
  }

  g.Fx = Grid<RVec7>(g.nx, g.ny);
  g.Fy = Grid<RVec7>(g.nx, g.ny);
  for (std::size_t k = 0; k < g.partials.size(); ++k) {
    const OneForm w = one_form(g.partials[k]);
    g.Fx[k] = w.Fx;
    g.Fy[k] = w.Fy;
  }
  return g;
}

void integrate_F(SurfaceGrid& g, const SynthOptions& opt) {
  const int nx = g.nx, ny = g.ny;
  const double h2 = g.h() * g.h();

  double harm = 0.0;
  for (const auto& p : g.partials) harm = std::max(harm, norm(cross(p.phi, p.laplacian())));
  g.harmonicity_residual = harm;
  if (harm > opt.closed_factor * h2)
    g.warnings.push_back("harmonicity check failed: max |phi x Laplacian(phi)| = " + sci(harm));

  const Grid<RVec7> dyFx = diff_y(g.Fx, g.hy), dxFy = diff_x(g.Fy, g.hx);
  double closed = 0.0;
  for (std::size_t k = 0; k < dyFx.size(); ++k) closed = std::max(closed, norm(dyFx[k] - dxFy[k]));
  g.closedness_residual = closed;
  if (opt.require_closed && closed > opt.closed_factor * h2)
    throw Error(ErrorCode::NotClosed, "max |d_y Fx - d_x Fy| = " + sci(closed) + " exceeds " +
                                          sci(opt.closed_factor * h2));

  const Grid<RVec7> dxFx = diff_x(g.Fx, g.hx), dyFy = diff_y(g.Fy, g.hy);
  const Quadrature q = opt.quadrature;

  auto column = [&](const Grid<RVec7>& f, const Grid<RVec7>& df, int i) {
    std::vector<RVec7> a(ny), b(ny);
    for (int j = 0; j < ny; ++j) {
      a[j] = f(i, j);
      b[j] = df(i, j);
    }
    return cumulative_integral(a, b, g.hy, q);
  };
  auto row = [&](const Grid<RVec7>& f, const Grid<RVec7>& df, int j) {
    std::vector<RVec7> a(nx), b(nx);
    for (int i = 0; i < nx; ++i) {
      a[i] = f(i, j);
      b[i] = df(i, j);
    }
    return cumulative_integral(a, b, g.hx, q);
  };

  // y first along the left edge, then x along rows.
  g.F = Grid<RVec7>(nx, ny);
  const std::vector<RVec7> left = column(g.Fy, dyFy, 0);
  for (int j = 0; j < ny; ++j) {
    const std::vector<RVec7> r = row(g.Fx, dxFx, j);
    for (int i = 0; i < nx; ++i) g.F(i, j) = left[j] + r[i];
  }

  // x first along the bottom edge, then y along columns.
  const std::vector<RVec7> bottom = row(g.Fx, dxFx, 0);
  double path = 0.0;
  for (int i = 0; i < nx; ++i) {
    const std::vector<RVec7> c = column(g.Fy, dyFy, i);
    for (int j = 0; j < ny; ++j) path = std::max(path, norm(bottom[i] + c[j] - g.F(i, j)));
  }
  g.path_residual = path;
}

void parallel_surfaces(SurfaceGrid& g) {
  g.Fplus = Grid<RVec7>(g.nx, g.ny);
  g.Fminus = Grid<RVec7>(g.nx, g.ny);
  g.conf_plus = Grid<double>(g.nx, g.ny);
  g.conf_minus = Grid<double>(g.nx, g.ny);
  double lo = INFINITY;
  for (std::size_t k = 0; k < g.partials.size(); ++k) {
    const RealPartials& p = g.partials[k];
    g.Fplus[k] = g.F[k] + p.phi;
    g.Fminus[k] = g.F[k] - p.phi;
    const double a = norm2(p.x);
    const double t = dot(p.phi, cross(p.x, p.y));
    g.conf_plus[k] = 2.0 * (a - t);
    g.conf_minus[k] = 2.0 * (a + t);
    if (!g.mask[k]) lo = std::min({lo, g.conf_plus[k], g.conf_minus[k]});
  }
  g.parallel_degenerate = lo < kDegenerateConformal;
  if (g.parallel_degenerate)
    g.warnings.push_back("a parallel surface degenerates: min e^{2 omega} = " + sci(lo));
}

void require_regular_parallel(const SurfaceGrid& g) {
  if (g.parallel_degenerate)
    throw Error(ErrorCode::DegenerateParallel, "conformal factor of F+ or F- vanishes (associative locus)");
}

SurfaceGrid synthesize(const MapDescriptor& map, const SynthOptions& opt) {
  SurfaceGrid g = sample_map(map, opt);
  integrate_F(g, opt);
  parallel_surfaces(g);
  return g;
}

double centered_max_deviation(const Grid<RVec7>& a, const Grid<RVec7>& b) {
  RVec7 mean{};
  for (std::size_t k = 0; k < a.size(); ++k) mean += a[k] - b[k];
  mean = mean / static_cast<double>(a.size());
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, norm(a[k] - b[k] - mean));
  return m;
}

}  // namespace g2surf
