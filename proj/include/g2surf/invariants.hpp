#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "g2surf/harmonic_jet.hpp"
#include "g2surf/planes.hpp"
#include "g2surf/surface_synth.hpp"

namespace g2surf {

/// Symmetric 2x2 matrix stored as (11, 12, 22).
using Sym2 = std::array<double, 3>;

struct FundForms {
  Sym2 I{};
  std::vector<Sym2> II;  // one per requested normal
};

/// First and second fundamental forms of F expressed through phi:
///   I  = [[|phi_y|^2, -phi_x.phi_y], [-phi_x.phi_y, |phi_x|^2]]
///   II_N = [[(phi_x x phi_y + phi x phi_xy).N, (phi x phi_yy).N],
///           [(phi x phi_yy).N, (phi_x x phi_y - phi x phi_xy).N]]
/// Throws Error{NotImmersion} when det I <= 1e-12.
FundForms fundamental_forms(const RealPartials& p, std::span<const RVec7> normals);

/// Max over normals of |II_N - (tr(I^-1 II_N)/2) I| / |I|; zero when F is umbilical.
double umbilicity_residual(const FundForms& forms);

/// Orthonormal basis of the normal space of F (the complement of span{Fx, Fy}).
std::vector<RVec7> normal_basis(const RealPartials& p);

struct MeanCurvature {
  RVec7 h;
  double imag_residual = 0.0;
};

/// h_F = i f_1 x f_{-1}. Throws Error{NotConformal}.
MeanCurvature mean_curvature(const HarmonicFrame& frame, double conformal_tol = 1e-6);
/// h_F = e^{-2 alpha} phi_x x phi_y with e^{2 alpha} = (|phi_x|^2 + |phi_y|^2) / 2.
RVec7 mean_curvature_real(const RealPartials& p);

/// K = -e^{-2 alpha} Laplacian(alpha), alpha from the frames, FD Laplacian.
/// Masked points get NaN.
Grid<double> gauss_curvature(const SurfaceGrid& grid);

/// Scale-normalized residuals of the classification conditions at one point,
/// with g = f_2 x f_{-1}.
struct PointResiduals {
  double pseudo_umbilical = 0.0;   // |((g x f_1) . f_0)| / (|f_2||f_{-1}||f_1|)
  double parallel_h = 0.0;         // part of g h-orthogonal to f_0 x f_{-1}
  double min_hypersphere = 0.0;    // |g| / (|f_2||f_{-1}|)
  double isotropic_surface = 0.0;  // max(pseudo_umbilical, |f_2.f_2| / |f_2|^2)
  double along_f0f1 = 0.0;         // h-component of g along f_0 x f_1 (always zero)
  double g_isotropy = 0.0;         // |g.g| / (|f_2||f_{-1}|)^2
};

/// Throws Error{DegenerateFrame} for masked frames. All residuals are zero
/// when |f_2| < point_tol.
PointResiduals classification_residuals(const HarmonicFrame& frame, double point_tol = 1e-10);

struct PhiCrossH {
  double residual = 0.0;  // max deviation of phi x h_F from its mean
  RVec7 mean;
};
PhiCrossH phixh_constancy(const SurfaceGrid& grid);

struct ParallelInvariants {
  RVec7 hplus, hminus;            // sequence formula
  RVec7 hplus_real, hminus_real;  // e^{-2 omega+-}(phi_x x phi_y +- Laplacian(phi)/2)
  double norm_plus = 0.0, norm_minus = 0.0;
  double dot_plus = 0.0, dot_minus = 0.0;  // h+- . phi
  double formula_gap = 0.0;                // max |sequence - real| over both signs
  double imag_residual = 0.0;
};

/// h+- = (i f_1 x f_{-1} -+ f_0) / (2 -+ 2 i f_0.(f_1 x f_{-1})).
/// Throws Error{AssociativePoint} when a denominator is below 1e-8.
ParallelInvariants parallel_invariants(const HarmonicFrame& frame, const RealPartials& p);

/// Ellipse of curvature of F from the projections
///   a = e^{-2 alpha} P(phi x phi_xy),  b = e^{-2 alpha} P(phi x phi_xx)
/// onto the normal space; point, circle or line degeneracy.
struct EllipseF {
  double norm_a = 0.0, norm_b = 0.0, dot_ab = 0.0, gram = 0.0;
  EllipseKind kind = EllipseKind::generic;
};
EllipseF ellipse_of_F(const RealPartials& p, double tol = 1e-6);

enum class Verdict {
  minimal_in_hypersphere,
  parallel_mean_curvature,
  pseudo_umbilical_nonparallel,
  isotropic_surface,
  generic,
};
std::string_view to_string(Verdict v);

struct Tolerances {
  double classification = 1e-5;  // exact-vanishing conditions
  double point = 1e-6;           // |f_2| considered zero
  double ellipse = 1e-6;
  double unit = 1e-6;            // | |h_F| - 1 |

  /// 1e-5 with analytic jets, 100 h^2 with finite differences.
  static Tolerances for_grid(const SurfaceGrid& grid);
  Tolerances scaled(double factor) const;
};

/// Running max and mean.
struct Aggregate {
  double max = 0.0;
  double mean = 0.0;
  int count = 0;
  void add(double v) {
    max = std::max(max, v);
    mean += (v - mean) / ++count;
  }
};

struct ClassReport {
  Verdict verdict = Verdict::generic;
  bool isotropic_surface = false;
  Tolerances tol;

  Aggregate pseudo_umbilical, parallel_h, min_hypersphere, isotropic, along_f0f1, g_isotropy;
  Aggregate hF_unit_deviation, hF_formula_gap, hF_imag, conformality;
  double theta_min = 0.0, theta_max = 0.0, theta_imag = 0.0;
  double K_min = 0.0, K_max = 0.0;
  PhiCrossH phixh;
  double kahler_constancy = 0.0;  // max over points

  // Ellipse of curvature: f_2-based class (if the same everywhere) and the
  // number of points where the projection-based class disagrees.
  std::optional<EllipseKind> ellipse;
  int ellipse_disagreements = 0;

  // Real span of f_0, f_1, f_2 at the grid centre and its plane verdicts.
  int span_dim = 0;
  std::optional<PlaneVerdict> span_coassociative;
  std::optional<PlaneVerdict> span_compatible;
  bool cross_check_ok = true;

  int points = 0;
  int masked = 0;
  std::vector<std::string> warnings;

  std::optional<Grid<PointResiduals>> pointwise;
};

/// Residual fields, aggregates and the verdict:
///   min_hypersphere < tol -> minimal_in_hypersphere
///   else parallel_h < tol -> parallel_mean_curvature (span should be coassociative)
///   else pseudo_umbilical < tol -> pseudo_umbilical_nonparallel (span should
///     admit an x-compatible split)
///   else isotropic flag -> isotropic_surface, otherwise generic.
/// The isotropic flag is reported independently of the verdict.
ClassReport classify(const SurfaceGrid& grid, const Tolerances& tol, bool keep_pointwise = false);
inline ClassReport classify(const SurfaceGrid& grid) { return classify(grid, Tolerances::for_grid(grid)); }

}  // namespace g2surf
