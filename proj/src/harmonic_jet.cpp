#include "g2surf/harmonic_jet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "g2surf/cross7.hpp"
#include "g2surf/error.hpp"

namespace g2surf {

namespace {

const cplx kI(0.0, 1.0);
constexpr int kHalfWidth = 3;  // 7x7 local stencil for fd jets

// Coefficients of (X - iY)^a (X + iY)^b / 2^(a+b) as c[p][q] for X^p Y^q.
using Poly = std::array<std::array<cplx, 5>, 5>;

Poly wirtinger_poly(int a, int b) {
  Poly c{};
  c[0][0] = 1.0;
  auto mul = [&](cplx y_coeff) {
    Poly r{};
    for (int p = 0; p < 5; ++p)
      for (int q = 0; q < 5; ++q) {
        if (c[p][q] == cplx{}) continue;
        r[p + 1][q] += 0.5 * c[p][q];
        r[p][q + 1] += 0.5 * y_coeff * c[p][q];
      }
    c = r;
  };
  for (int k = 0; k < a; ++k) mul(-kI);
  for (int k = 0; k < b; ++k) mul(kI);
  return c;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

/// Value at z0 + delta of the Taylor polynomial carried by the jet.
CVec7 taylor(const VJet& jet, cplx delta) {
  CVec7 s{};
  const cplx db = std::conj(delta);
  for (int n = 0; n <= jet.order(); ++n)
    for (int b = 0; b <= n; ++b) {
      const int a = n - b;
      s += (std::pow(delta, a) * std::pow(db, b) / (factorial(a) * factorial(b))) * jet(a, b);
    }
  return s;
}

}  // namespace

RealPartials real_partials(const VJet& j) {
  RealPartials p;
  p.phi = real(j.value());
  const CVec7 j10 = j(1, 0), j01 = j(0, 1);
  p.x = real(j10 + j01);
  p.y = real(kI * (j10 - j01));
  const CVec7 j20 = j(2, 0), j11 = j(1, 1), j02 = j(0, 2);
  p.xx = real(j20 + 2.0 * j11 + j02);
  p.xy = real(kI * (j20 - j02));
  p.yy = real(-j20 + 2.0 * j11 - j02);
  return p;
}

MapJet jet_at(const MapDescriptor& map, cplx z, JetMode mode) {
  MapJet out;
  out.z = z;
  out.source = mode.source;
  if (mode.source == JetSource::analytic) {
    out.jet = map.jet(z);
  } else {
    const double h = mode.h;
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::BadConfig, "fd step must be positive");
    out.h = h;
    std::array<double, 2 * kHalfWidth + 1> nodes;
    for (int k = -kHalfWidth; k <= kHalfWidth; ++k) nodes[k + kHalfWidth] = k * h;
    std::array<std::vector<double>, 5> w;
    for (int m = 0; m <= 4; ++m) w[m] = fornberg_weights(0.0, nodes, m);

    std::array<std::array<RVec7, 2 * kHalfWidth + 1>, 2 * kHalfWidth + 1> s;
    for (int a = -kHalfWidth; a <= kHalfWidth; ++a)
      for (int b = -kHalfWidth; b <= kHalfWidth; ++b) {
        const RVec7 v = map.value(z + cplx(a * h, b * h));
        if (!all_finite(v)) throw Error(ErrorCode::OutOfDomain, "map is not finite near the jet point");
        s[a + kHalfWidth][b + kHalfWidth] = v;
      }
    // D[p][q] = d^p_x d^q_y phi
    std::array<std::array<RVec7, 5>, 5> d{};
    for (int p = 0; p <= 4; ++p)
      for (int q = 0; p + q <= 4; ++q) {
        RVec7 acc{};
        for (int a = 0; a < 2 * kHalfWidth + 1; ++a) {
          if (w[p][a] == 0.0) continue;
          for (int b = 0; b < 2 * kHalfWidth + 1; ++b) acc += (w[p][a] * w[q][b]) * s[a][b];
        }
        d[p][q] = acc;
      }
    out.jet = VJet(VJet::kMaxOrder);
    for (int n = 0; n <= VJet::kMaxOrder; ++n)
      for (int b = 0; b <= n; ++b) {
        const Poly c = wirtinger_poly(n - b, b);
        CVec7 acc{};
        for (int p = 0; p <= n; ++p) acc += c[p][n - p] * d[p][n - p];
        out.jet(n - b, b) = acc;
      }
    out.jet(0, 0) = complexify(s[kHalfWidth][kHalfWidth]);

    double res = 0.0;
    for (cplx corner : {cplx(1, 1), cplx(1, -1), cplx(-1, 1), cplx(-1, -1)})
      res = std::max(res, std::abs(norm(taylor(out.jet, kHalfWidth * h * corner)) - 1.0));
    out.sphere_residual = res;
    if (res > kStepResidualLimit)
      throw Error(ErrorCode::StepTooLarge, "Taylor reconstruction leaves the sphere by " + std::to_string(res));
  }
  out.f0 = real(out.jet.value());
  if (!all_finite(out.f0)) throw Error(ErrorCode::OutOfDomain, "map is not finite at the jet point");
  for (int k = 0; k <= 4; ++k) out.dz[k] = out.jet(k, 0);
  return out;
}

void HarmonicFrame::refresh_norms() {
  for (std::size_t k = 0; k < f.size(); ++k) norms[k] = norm(f[k]);
}

namespace {

HarmonicFrame finish_frame(HarmonicFrame fr) {
  const CVec7& f1 = fr[1];
  const double n1 = norm2(f1);
  fr[-1] = -conj(f1) / cplx(n1);
  fr.alpha = 0.5 * std::log(2.0 * n1);
  fr.conformality_residual = std::abs(dot(f1, f1));
  fr.refresh_norms();
  return fr;
}

}  // namespace

HarmonicFrame frame_from_jet(const VJet& jet, double zero_tol) {
  HarmonicFrame fr;
  fr[0] = complexify(real(jet.value()));
  VJet fj = jet.dz();
  if (norm(fj.value()) < kBranchThreshold) throw Error(ErrorCode::BranchPoint, "|phi_z| vanishes");
  fr[1] = fj.value();
  fr.last = 1;
  for (int j = 1; j < HarmonicFrame::kHigh; ++j) {
    const VJet d = fj.dz();
    const VJet base = fj.truncated(d.order());
    const SJet ratio = herm(d, base) * reciprocal(herm(base, base));
    const VJet next = d - ratio * base;
    if (norm(next.value()) < zero_tol) break;
    fr[j + 1] = next.value();
    fr.last = j + 1;
    fj = next;
  }
  return finish_frame(fr);
}

Grid<HarmonicFrame> frames_by_recursion(const Grid<RVec7>& phi, const Grid<CVec7>& f1, double hx, double hy,
                                        Grid<unsigned char>& mask, double zero_tol) {
  const int nx = phi.nx(), ny = phi.ny();
  mask = Grid<unsigned char>(nx, ny, 0);
  Grid<HarmonicFrame> frames(nx, ny);
  for (std::size_t k = 0; k < phi.size(); ++k) {
    frames[k][0] = complexify(phi[k]);
    frames[k][1] = f1[k];
    frames[k].last = 1;
    if (norm(f1[k]) < kBranchThreshold) mask[k] = 1;
  }
  Grid<CVec7> fj = f1;
  std::vector<bool> alive(phi.size());
  for (std::size_t k = 0; k < phi.size(); ++k) alive[k] = !mask[k];
  for (int j = 1; j < HarmonicFrame::kHigh; ++j) {
    const Grid<CVec7> d = diff_z(fj, hx, hy);
    Grid<CVec7> next(nx, ny);
    for (std::size_t k = 0; k < phi.size(); ++k) {
      if (!alive[k]) continue;
      const double n2 = norm2(fj[k]);
      next[k] = d[k] - (herm(d[k], fj[k]) / n2) * fj[k];
      if (norm(next[k]) < zero_tol) {
        alive[k] = false;
        next[k] = CVec7{};
        continue;
      }
      frames[k][j + 1] = next[k];
      frames[k].last = j + 1;
    }
    fj = std::move(next);
  }
  for (std::size_t k = 0; k < phi.size(); ++k) {
    if (mask[k]) {
      frames[k] = HarmonicFrame{};
      frames[k].last = 0;
      continue;
    }
    frames[k] = finish_frame(frames[k]);
  }
  return frames;
}

RecursionResiduals recursion_residuals(const Grid<HarmonicFrame>& frames, const Grid<unsigned char>& mask, double hx,
                                       double hy, int jmax) {
  const int nx = frames.nx(), ny = frames.ny();
  for (std::size_t k = 0; k < frames.size(); ++k)
    if (!mask[k]) jmax = std::min(jmax, frames[k].last);

  RecursionResiduals out;
  std::vector<Grid<CVec7>> f;
  std::vector<Grid<double>> n2;
  for (int j = 0; j <= jmax; ++j) {
    f.push_back(frames.map([j](const HarmonicFrame& fr) { return fr[j]; }));
    n2.push_back(f.back().map([](const CVec7& v) { return norm2(v); }));
  }
  for (int j = 0; j < jmax; ++j) {
    const Grid<CVec7> dz = diff_z(f[j], hx, hy);
    Grid<cplx> logn(nx, ny);
    for (std::size_t k = 0; k < logn.size(); ++k) logn[k] = mask[k] ? 0.0 : std::log(n2[j][k]);
    const Grid<cplx> dlog = diff_z(logn, hx, hy);
    const Grid<CVec7> dzbar = diff_zbar(f[j + 1], hx, hy);
    for (std::size_t k = 0; k < frames.size(); ++k) {
      if (mask[k]) continue;
      out.forward = std::max(out.forward, norm(dz[k] - f[j + 1][k] - dlog[k] * f[j][k]));
      out.backward = std::max(out.backward, norm(dzbar[k] + (n2[j + 1][k] / n2[j][k]) * f[j][k]));
    }
  }
  return out;
}

std::string IsotropyOrder::to_string() const {
  return (at_least ? ">= " : "") + std::to_string(r);
}

IsotropyOrder isotropy_order(const HarmonicFrame& frame, int r_max, double tol) {
  IsotropyOrder out;
  r_max = std::min(r_max, HarmonicFrame::kHigh);
  for (int i = 1; i <= r_max; ++i) {
    if (i > frame.last) continue;  // vanishing section: trivially orthogonal
    if (std::abs(herm(frame[i], frame[0])) > tol * frame.norm_of(i)) {
      out.r = i - 1;
      out.parity_warning = out.r % 2 == 0;
      return out;
    }
  }
  out.r = r_max;
  out.at_least = true;
  return out;
}

KahlerAngle kahler_angle(const HarmonicFrame& frame, double conformal_tol) {
  const double n1 = norm2(frame[1]);
  if (frame.conformality_residual > conformal_tol * n1)
    throw Error(ErrorCode::NotConformal, "f_1 . f_1 = " + std::to_string(frame.conformality_residual));
  const cplx c = kI * dot(cross(frame[1], frame[-1]), frame[0]);
  KahlerAngle out;
  out.theta = std::acos(std::clamp(c.real(), -1.0, 1.0));
  out.imag_residual = std::abs(c.imag());
  return out;
}

std::string_view to_string(EllipseKind kind) {
  switch (kind) {
    case EllipseKind::point: return "point";
    case EllipseKind::circle: return "circle";
    case EllipseKind::line: return "line";
    case EllipseKind::generic: return "generic";
  }
  return "unknown";
}

EllipseClass ellipse_class(const HarmonicFrame& frame, double tol) {
  EllipseClass out;
  const CVec7& f2 = frame[2];
  out.norm_f2 = frame.last >= 2 ? norm(f2) : 0.0;
  if (out.norm_f2 < tol) {
    out.kind = EllipseKind::point;
    return out;
  }
  out.residual_isotropy = std::abs(dot(f2, f2));
  const CVec7 u = f2 / cplx(out.norm_f2);
  const CVec7 ub = conj(u);
  out.residual_real = norm(u - dot(u, u) * ub);
  if (out.residual_isotropy < tol * out.norm_f2 * out.norm_f2)
    out.kind = EllipseKind::circle;
  else if (out.residual_real < tol)
    out.kind = EllipseKind::line;
  return out;
}

double kahler_constancy_residual(const HarmonicFrame& frame) {
  if (frame.last < 2) return 0.0;
  const CVec7 a = cross(frame[0], frame[1]);
  const double na = norm(a), n2 = norm(frame[2]);
  if (na < std::numeric_limits<double>::min() || n2 < 1e-12) return 0.0;
  return std::abs(herm(frame[2], a)) / (na * n2);
}

}  // namespace g2surf
