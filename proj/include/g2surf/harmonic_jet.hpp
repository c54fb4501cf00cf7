#pragma once

#include <array>
#include <optional>
#include <string>

#include "g2surf/catalog.hpp"
#include "g2surf/stencil.hpp"
#include "g2surf/vec7.hpp"
#include "g2surf/wirtinger_jet.hpp"

namespace g2surf {

/// |phi_z| below this marks a branch point.
inline constexpr double kBranchThreshold = 1e-8;
/// Largest admissible sphere-constraint residual of an FD jet.
inline constexpr double kStepResidualLimit = 1e-3;

enum class JetSource { analytic, finite_difference };

struct JetMode {
  JetSource source = JetSource::analytic;
  double h = 1e-2;

  static JetMode analytic() { return {}; }
  static JetMode fd(double h) { return {JetSource::finite_difference, h}; }
};

/// Real partial derivatives of phi up to order two.
struct RealPartials {
  RVec7 phi, x, y, xx, xy, yy;
  RVec7 laplacian() const { return xx + yy; }
};

/// Complex derivatives of phi at one parameter point.
struct MapJet {
  cplx z;
  RVec7 f0;
  std::array<CVec7, 5> dz{};  // dz[k] = d^k phi / dz^k, dz[0] = phi
  VJet jet;                   // all Wirtinger derivatives up to order four
  JetSource source = JetSource::analytic;
  double h = 0.0;
  double sphere_residual = 0.0;  // Taylor reconstruction check (fd only)
};

/// Real partials from a Wirtinger jet (order >= 2).
RealPartials real_partials(const VJet& jet);

/// Jet of `map` at z. In fd mode all mixed partials d^p_x d^q_y (p + q <= 4)
/// come from a 7x7 tensor stencil of spacing h and are converted to Wirtinger
/// form. Throws Error{OutOfDomain} on non-finite samples and
/// Error{StepTooLarge} when the Taylor polynomial of the jet leaves the unit
/// sphere by more than kStepResidualLimit at the stencil corners.
MapJet jet_at(const MapDescriptor& map, cplx z, JetMode mode = JetMode::analytic());

/// Harmonic-sequence sections f_{-1}, f_0, ..., f_4 at a point.
struct HarmonicFrame {
  static constexpr int kLow = -1;
  static constexpr int kHigh = 4;

  std::array<CVec7, kHigh - kLow + 1> f{};
  std::array<double, kHigh - kLow + 1> norms{};
  /// Largest j for which f_j was produced (the sequence stops once a section
  /// vanishes; later entries are zero).
  int last = kHigh;
  double alpha = 0.0;                   // e^{2 alpha} = 2 |f_1|^2
  double conformality_residual = 0.0;  // |f_1 . f_1|

  CVec7& operator[](int j) { return f[static_cast<std::size_t>(j - kLow)]; }
  const CVec7& operator[](int j) const { return f[static_cast<std::size_t>(j - kLow)]; }
  double norm_of(int j) const { return norms[static_cast<std::size_t>(j - kLow)]; }
  void refresh_norms();
};

/// Frame by exact jet arithmetic:
///   f_{j+1} = d f_j/dz - (h(d f_j/dz, f_j) / |f_j|^2) f_j,   f_1 = phi_z,
///   f_{-1} = -conj(f_1) / |f_1|^2.
/// A section with |f_j| < zero_tol ends the sequence. Throws Error{BranchPoint}
/// when |phi_z| < kBranchThreshold.
HarmonicFrame frame_from_jet(const VJet& jet, double zero_tol = 1e-10);
inline HarmonicFrame frame_from_jet(const MapJet& jet, double zero_tol = 1e-10) {
  return frame_from_jet(jet.jet, zero_tol);
}

/// Frames on a grid by the recursion itself: each f_{j+1} is the FD
/// z-derivative of the f_j field with its f_j component removed. `f1` is
/// phi_z (analytic or FD). Points with |f_1| < kBranchThreshold are flagged in
/// `mask` (nonzero) and carry a zero frame.
Grid<HarmonicFrame> frames_by_recursion(const Grid<RVec7>& phi, const Grid<CVec7>& f1, double hx, double hy,
                                        Grid<unsigned char>& mask, double zero_tol = 1e-6);

/// Max residuals of the two relations of the recursion, checked on frame
/// fields by re-deriving with FD:
///   forward:  d f_j/dz - f_{j+1} - (d/dz log|f_j|^2) f_j
///   backward: d f_{j+1}/dzbar + (|f_{j+1}|^2 / |f_j|^2) f_j
/// for j = 0 .. jmax - 1, over unmasked points.
struct RecursionResiduals {
  double forward = 0.0;
  double backward = 0.0;
};
RecursionResiduals recursion_residuals(const Grid<HarmonicFrame>& frames, const Grid<unsigned char>& mask, double hx,
                                       double hy, int jmax = 3);

struct IsotropyOrder {
  int r = 0;                // valid when !at_least
  bool at_least = false;    // r is a lower bound (no non-orthogonal section found)
  bool parity_warning = false;  // finite and even: conformal sphere maps have odd order
  std::string to_string() const;
};

/// Smallest i <= r_max with |h(f_i, f_0)| > tol |f_i|, minus one.
IsotropyOrder isotropy_order(const HarmonicFrame& frame, int r_max = 4, double tol = 1e-6);

struct KahlerAngle {
  double theta = 0.0;
  double imag_residual = 0.0;  // imaginary part of i (f_1 x f_{-1}) . f_0
};

/// theta from (f_1 x f_{-1}) . f_0 = -i cos(theta). Throws Error{NotConformal}
/// when |f_1 . f_1| / |f_1|^2 exceeds conformal_tol.
KahlerAngle kahler_angle(const HarmonicFrame& frame, double conformal_tol = 1e-6);

enum class EllipseKind { point, circle, line, generic };
std::string_view to_string(EllipseKind kind);

struct EllipseClass {
  EllipseKind kind = EllipseKind::generic;
  double residual_isotropy = 0.0;  // |f_2 . f_2|
  double residual_real = 0.0;      // distance of span{f_2} from its conjugate
  double norm_f2 = 0.0;
};

EllipseClass ellipse_class(const HarmonicFrame& frame, double tol = 1e-6);

/// |h(f_2, f_0 x f_1)| / (|f_0 x f_1| |f_2|); zero when the Kahler angle
/// is constant. Returns 0 when f_2 vanishes.
double kahler_constancy_residual(const HarmonicFrame& frame);

}  // namespace g2surf
