#include "g2surf/invariants.hpp"

#include <cmath>
#include <limits>

#include "g2surf/cross7.hpp"
#include "g2surf/error.hpp"

namespace g2surf {

namespace {

const cplx kI(0.0, 1.0);

double sym_norm(const Sym2& m) { return std::sqrt(m[0] * m[0] + 2.0 * m[1] * m[1] + m[2] * m[2]); }

double conformal_factor(const RealPartials& p) { return 0.5 * (norm2(p.x) + norm2(p.y)); }

RVec7 normal_projection(const RealPartials& p, const RVec7& v) {
  const OneForm w = one_form(p);
  return v - (dot(v, w.Fx) / norm2(w.Fx)) * w.Fx - (dot(v, w.Fy) / norm2(w.Fy)) * w.Fy;
}

}  // namespace

FundForms fundamental_forms(const RealPartials& p, std::span<const RVec7> normals) {
  FundForms out;
  const double pxy = dot(p.x, p.y);
  out.I = {norm2(p.y), -pxy, norm2(p.x)};
  const double det = out.I[0] * out.I[2] - out.I[1] * out.I[1];
  if (!(det > 1e-12)) throw Error(ErrorCode::NotImmersion, "det I = " + std::to_string(det));
  const RVec7 a = cross(p.x, p.y), b = cross(p.phi, p.xy), c = cross(p.phi, p.yy);
  for (const RVec7& n : normals) {
    const double an = dot(a, n), bn = dot(b, n), cn = dot(c, n);
    out.II.push_back({an + bn, cn, an - bn});
  }
  return out;
}

double umbilicity_residual(const FundForms& f) {
  const Sym2& I = f.I;
  const double det = I[0] * I[2] - I[1] * I[1];
  double worst = 0.0;
  for (const Sym2& II : f.II) {
    // tr(I^{-1} II) with I^{-1} = [[I22, -I12], [-I12, I11]] / det
    const double tr = (I[2] * II[0] - 2.0 * I[1] * II[1] + I[0] * II[2]) / det;
    const double lam = 0.5 * tr;
    const Sym2 d{II[0] - lam * I[0], II[1] - lam * I[1], II[2] - lam * I[2]};
    worst = std::max(worst, sym_norm(d) / sym_norm(I));
  }
  return worst;
}

std::vector<RVec7> normal_basis(const RealPartials& p) {
  const OneForm w = one_form(p);
  return Subspace::orthonormalize({w.Fx, w.Fy}).complement().basis();
}

MeanCurvature mean_curvature(const HarmonicFrame& frame, double conformal_tol) {
  if (frame.conformality_residual > conformal_tol * frame.norm_of(1) * frame.norm_of(1))
    throw Error(ErrorCode::NotConformal, "f_1 . f_1 = " + std::to_string(frame.conformality_residual));
  const CVec7 h = kI * cross(frame[1], frame[-1]);
  return {real(h), max_abs(imag(h))};
}

RVec7 mean_curvature_real(const RealPartials& p) { return cross(p.x, p.y) / conformal_factor(p); }

Grid<double> gauss_curvature(const SurfaceGrid& g) {
  Grid<double> alpha(g.nx, g.ny);
  for (std::size_t k = 0; k < alpha.size(); ++k) alpha[k] = g.mask[k] ? 0.0 : g.frames[k].alpha;
  const Grid<double> lap = laplacian(alpha, g.hx, g.hy);
  Grid<double> K(g.nx, g.ny);
  for (std::size_t k = 0; k < K.size(); ++k)
    K[k] = g.mask[k] ? std::numeric_limits<double>::quiet_NaN() : -std::exp(-2.0 * alpha[k]) * lap[k];
  return K;
}

PointResiduals classification_residuals(const HarmonicFrame& fr, double point_tol) {
  if (fr.last < 1) throw Error(ErrorCode::DegenerateFrame, "frame is masked (branch point)");
  PointResiduals r;
  if (fr.last < 2 || fr.norm_of(2) < point_tol) return r;
  const CVec7& f0 = fr[0];
  const CVec7& f1 = fr[1];
  const CVec7& fm = fr[-1];
  const CVec7& f2 = fr[2];
  const double n2 = fr.norm_of(2), nm = fr.norm_of(-1), n1 = fr.norm_of(1);
  const double scale = n2 * nm;

  const CVec7 g = cross(f2, fm);
  r.pseudo_umbilical = std::abs(dot(cross(g, f1), f0)) / (scale * n1);
  r.min_hypersphere = norm(g) / scale;

  const CVec7 u = cross(f0, fm);
  const CVec7 g_perp = g - (herm(g, u) / norm2(u)) * u;
  r.parallel_h = norm(g_perp) / scale;

  r.isotropic_surface = std::max(r.pseudo_umbilical, std::abs(dot(f2, f2)) / (n2 * n2));

  const CVec7 v = cross(f0, f1);
  const double nv = norm(v);
  r.along_f0f1 = nv > 0.0 ? std::abs(herm(g, v)) / (scale * nv) : 0.0;
  r.g_isotropy = std::abs(dot(g, g)) / (scale * scale);
  return r;
}

PhiCrossH phixh_constancy(const SurfaceGrid& g) {
  std::vector<RVec7> v;
  v.reserve(g.frames.size());
  PhiCrossH out;
  for (std::size_t k = 0; k < g.frames.size(); ++k) {
    if (g.mask[k]) continue;
    const RVec7 h = real(kI * cross(g.frames[k][1], g.frames[k][-1]));
    v.push_back(cross(g.partials[k].phi, h));
    out.mean += v.back();
  }
  if (v.empty()) return out;
  out.mean = out.mean / static_cast<double>(v.size());
  for (const RVec7& x : v) out.residual = std::max(out.residual, norm(x - out.mean));
  return out;
}

ParallelInvariants parallel_invariants(const HarmonicFrame& fr, const RealPartials& p) {
  ParallelInvariants out;
  const CVec7 hseq = kI * cross(fr[1], fr[-1]);
  const cplx t = kI * dot(fr[0], cross(fr[1], fr[-1]));
  const cplx den_plus = 2.0 - 2.0 * t, den_minus = 2.0 + 2.0 * t;
  if (std::abs(den_plus) < 1e-8 || std::abs(den_minus) < 1e-8)
    throw Error(ErrorCode::AssociativePoint, "2 -+ 2 i f_0.(f_1 x f_-1) vanishes");
  const CVec7 hp = (hseq - fr[0]) / den_plus;
  const CVec7 hm = (hseq + fr[0]) / den_minus;
  out.hplus = real(hp);
  out.hminus = real(hm);
  out.imag_residual = std::max(max_abs(imag(hp)), max_abs(imag(hm)));
  out.norm_plus = norm(out.hplus);
  out.norm_minus = norm(out.hminus);
  out.dot_plus = dot(out.hplus, p.phi);
  out.dot_minus = dot(out.hminus, p.phi);

  const RVec7 xy = cross(p.x, p.y);
  const RVec7 half_lap = 0.5 * p.laplacian();
  const double a = norm2(p.x), s = dot(p.phi, xy);
  out.hplus_real = (xy + half_lap) / (2.0 * (a - s));
  out.hminus_real = (xy - half_lap) / (2.0 * (a + s));
  out.formula_gap = std::max(norm(out.hplus - out.hplus_real), norm(out.hminus - out.hminus_real));
  return out;
}

EllipseF ellipse_of_F(const RealPartials& p, double tol) {
  EllipseF out;
  const double e2a = conformal_factor(p);
  const RVec7 a = normal_projection(p, cross(p.phi, p.xy)) / e2a;
  const RVec7 b = normal_projection(p, cross(p.phi, p.xx)) / e2a;
  out.norm_a = norm(a);
  out.norm_b = norm(b);
  out.dot_ab = dot(a, b);
  out.gram = std::max(0.0, norm2(a) * norm2(b) - out.dot_ab * out.dot_ab);
  const double big = std::max(out.norm_a, out.norm_b);
  if (big < tol)
    out.kind = EllipseKind::point;
  else if (std::abs(out.norm_a - out.norm_b) < tol * big && std::abs(out.dot_ab) < tol * big * big)
    out.kind = EllipseKind::circle;
  else if (std::sqrt(out.gram) < tol * big * big)
    out.kind = EllipseKind::line;
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::minimal_in_hypersphere: return "minimal_in_hypersphere";
    case Verdict::parallel_mean_curvature: return "parallel_mean_curvature";
    case Verdict::pseudo_umbilical_nonparallel: return "pseudo_umbilical_nonparallel";
    case Verdict::isotropic_surface: return "isotropic_surface";
    case Verdict::generic: return "generic";
  }
  return "unknown";
}

Tolerances Tolerances::for_grid(const SurfaceGrid& g) {
  Tolerances t;
  if (g.mode == DerivativeMode::finite_difference) {
    const double fd = 100.0 * g.h() * g.h();
    t.classification = t.point = t.ellipse = t.unit = fd;
  }
  return t;
}

Tolerances Tolerances::scaled(double factor) const {
  Tolerances t = *this;
  t.classification *= factor;
  t.point *= factor;
  t.ellipse *= factor;
  t.unit *= factor;
  return t;
}

namespace {

/// Greedy real span of f_0, Re/Im f_1, Re/Im f_2.
std::vector<RVec7> sequence_span(const HarmonicFrame& fr, double rel_tol) {
  std::vector<RVec7> cand{real(fr[0]), real(fr[1]), imag(fr[1])};
  if (fr.last >= 2) {
    cand.push_back(real(fr[2]));
    cand.push_back(imag(fr[2]));
  }
  std::vector<RVec7> basis;
  for (RVec7 v : cand) {
    const double n0 = norm(v);
    if (n0 == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (const RVec7& b : basis) v -= dot(v, b) * b;
    const double n = norm(v);
    if (n > rel_tol * n0) basis.push_back(v / n);
  }
  return basis;
}

}  // namespace

ClassReport classify(const SurfaceGrid& g, const Tolerances& tol, bool keep_pointwise) {
  ClassReport rep;
  rep.tol = tol;
  if (keep_pointwise) rep.pointwise.emplace(g.nx, g.ny);

  const Grid<double> K = gauss_curvature(g);
  rep.theta_min = INFINITY;
  rep.theta_max = -INFINITY;
  rep.K_min = INFINITY;
  rep.K_max = -INFINITY;
  bool ellipse_uniform = true;

  for (std::size_t k = 0; k < g.frames.size(); ++k) {
    if (g.mask[k]) {
      ++rep.masked;
      continue;
    }
    ++rep.points;
    const HarmonicFrame& fr = g.frames[k];
    const RealPartials& p = g.partials[k];

    const PointResiduals r = classification_residuals(fr, tol.point);
    if (rep.pointwise) (*rep.pointwise)[k] = r;
    rep.pseudo_umbilical.add(r.pseudo_umbilical);
    rep.parallel_h.add(r.parallel_h);
    rep.min_hypersphere.add(r.min_hypersphere);
    rep.isotropic.add(r.isotropic_surface);
    rep.along_f0f1.add(r.along_f0f1);
    rep.g_isotropy.add(r.g_isotropy);

    rep.conformality.add(fr.conformality_residual / (fr.norm_of(1) * fr.norm_of(1)));
    const CVec7 hs = kI * cross(fr[1], fr[-1]);
    rep.hF_unit_deviation.add(std::abs(norm(real(hs)) - 1.0));
    rep.hF_imag.add(max_abs(imag(hs)));
    rep.hF_formula_gap.add(norm(real(hs) - mean_curvature_real(p)));

    const cplx c = kI * dot(cross(fr[1], fr[-1]), fr[0]);
    const double theta = std::acos(std::clamp(c.real(), -1.0, 1.0));
    rep.theta_min = std::min(rep.theta_min, theta);
    rep.theta_max = std::max(rep.theta_max, theta);
    rep.theta_imag = std::max(rep.theta_imag, std::abs(c.imag()));
    rep.kahler_constancy = std::max(rep.kahler_constancy, kahler_constancy_residual(fr));

    rep.K_min = std::min(rep.K_min, K[k]);
    rep.K_max = std::max(rep.K_max, K[k]);

    const EllipseKind e2 = ellipse_class(fr, tol.ellipse).kind;
    if (!rep.ellipse) rep.ellipse = e2;
    else if (*rep.ellipse != e2) ellipse_uniform = false;
    if (ellipse_of_F(p, tol.ellipse).kind != e2) ++rep.ellipse_disagreements;
  }
  if (!ellipse_uniform) rep.ellipse.reset();
  rep.phixh = phixh_constancy(g);

  if (rep.conformality.max > tol.unit) rep.warnings.push_back("map is not conformal to tolerance");

  const bool min_h = rep.min_hypersphere.max < tol.classification;
  const bool par_h = rep.parallel_h.max < tol.classification;
  const bool pu = rep.pseudo_umbilical.max < tol.classification;
  rep.isotropic_surface = rep.isotropic.max < tol.classification;

  // Sequence span at the grid centre; the plane verdicts cross-check the
  // parallel and pseudo-umbilical branches.
  int ci = g.nx / 2, cj = g.ny / 2;
  if (g.mask(ci, cj)) {
    for (std::size_t k = 0; k < g.mask.size(); ++k)
      if (!g.mask[k]) {
        ci = static_cast<int>(k % g.nx);
        cj = static_cast<int>(k / g.nx);
        break;
      }
  }
  const std::vector<RVec7> span = sequence_span(g.frames(ci, cj), 1e-6);
  rep.span_dim = static_cast<int>(span.size());
  if (rep.span_dim == 4) {
    const Subspace w = Subspace::orthonormalize(span);
    const double plane_tol = std::max(kPlaneTolerance, tol.classification);
    rep.span_coassociative = is_coassociative(w, plane_tol);
    rep.span_compatible = admits_cross_compatible(w, plane_tol);
  }

  if (min_h) {
    rep.verdict = Verdict::minimal_in_hypersphere;
  } else if (par_h) {
    rep.verdict = Verdict::parallel_mean_curvature;
    rep.cross_check_ok = rep.span_coassociative && rep.span_coassociative->holds();
  } else if (pu) {
    rep.verdict = Verdict::pseudo_umbilical_nonparallel;
    rep.cross_check_ok = rep.span_dim != 4 || (rep.span_compatible && rep.span_compatible->holds());
  } else if (rep.isotropic_surface) {
    rep.verdict = Verdict::isotropic_surface;
  }
  if (!rep.cross_check_ok) rep.warnings.push_back("plane cross-check disagrees with the verdict");
  if (rep.ellipse_disagreements > 0)
    rep.warnings.push_back("ellipse of F disagrees with the f_2 class at " + std::to_string(rep.ellipse_disagreements) +
                           " points");
  return rep;
}

}  // namespace g2surf
