#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "g2surf/vec7.hpp"
#include "g2surf/wirtinger_jet.hpp"

namespace g2surf {

enum class MapKind {
  clifford_coassoc,     // Clifford torus in span{e4..e7}
  clifford_w1234,       // Clifford torus in span{e1..e4}
  flat_exponential,     // sum_k v_k exp(mu_k z - conj(mu_k) zbar) + conj
  totally_geodesic_s2,  // inverse stereographic chart of S^2 in span{e1,e2,e3}
  rotated,              // R_v(beta) applied to an inner map
  flipped,              // inner map precomposed with z -> zbar
  exp_sum,              // general real sum of c_k exp(a_k z + b_k zbar)
};

std::string_view to_string(MapKind kind);

/// One term c * exp(a z + b zbar) of an exponential-sum map.
struct ExpTerm {
  CVec7 coeff;
  cplx a;
  cplx b;
};

/// Parameters of the flat family; validated on construction.
struct FlatParams {
  std::array<cplx, 3> mu;
  std::array<CVec7, 3> v;
};

/// Immutable description of a sphere-valued map phi of z = x + i y, with
/// analytic Wirtinger jets to order four.
class MapDescriptor {
 public:
  MapKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  /// phi(z).
  RVec7 value(cplx z) const;
  /// Full Wirtinger jet of phi at z, entries d^a dbar^b phi for a + b <= order.
  VJet jet(cplx z, int order = VJet::kMaxOrder) const;

  /// Parameters (meaningful for the matching kind only).
  const std::vector<ExpTerm>& terms() const { return terms_; }
  const FlatParams& flat() const { return flat_; }
  const RVec7& axis() const { return axis_; }
  double beta() const { return beta_; }
  const MapDescriptor* inner() const { return inner_.get(); }

  // Constructors for every catalog entry.
  friend MapDescriptor clifford_coassoc();
  friend MapDescriptor clifford_w1234();
  friend MapDescriptor flat_exponential(const std::array<cplx, 3>& mu, const std::array<CVec7, 3>& v);
  friend MapDescriptor trex();
  friend MapDescriptor totally_geodesic_s2();
  friend MapDescriptor rotate_map(const MapDescriptor& inner, const RVec7& axis, double beta);
  friend MapDescriptor flip_orientation(const MapDescriptor& inner);
  friend MapDescriptor exp_sum(std::vector<ExpTerm> terms, std::string name);

 private:
  MapKind kind_ = MapKind::exp_sum;
  std::string name_;
  std::vector<ExpTerm> terms_;  // every exponential-backed kind
  FlatParams flat_{};
  RVec7 axis_{};
  double beta_ = 0.0;
  std::shared_ptr<const MapDescriptor> inner_;
};

/// phi(x, y) = (cos x e4 + sin x e5 + cos y e6 + sin y e7) / sqrt 2.
MapDescriptor clifford_coassoc();
/// phi(x, y) = (cos x e1 + sin x e2 + cos y e3 + sin y e4) / sqrt 2.
MapDescriptor clifford_w1234();

/// Flat minimal surface built from three unit complex numbers and three
/// vectors. Throws Error{ConstraintViolated} naming the first failed
/// constraint (orthogonality, normalization, balance, distinct +-mu, or
/// |phi| = 1 on samples).
MapDescriptor flat_exponential(const std::array<cplx, 3>& mu, const std::array<CVec7, 3>& v);

/// The flat example in S^6 cap e4-perp: mu = (1, w, w^2) with w = exp(2 pi i/3),
/// v_k = exp(i pi/6)(e_k + i e_{k+4}) / (2 sqrt 3).
MapDescriptor trex();

/// Totally geodesic S^2 in span{e1, e2, e3} oriented as an almost complex
/// curve: i phi_z = phi x phi_z, phi(0) = -e3.
MapDescriptor totally_geodesic_s2();

/// Pointwise R_v(beta): v -> v, x -> cos(beta) x + sin(beta) v x x on v-perp.
/// Throws Error{NotInEquator} when the inner map leaves v-perp on samples and
/// Error{ConstraintViolated} when |v| != 1.
MapDescriptor rotate_map(const MapDescriptor& inner, const RVec7& axis, double beta);

/// phi(z) -> phi(zbar); reverses the orientation of the parameter domain.
MapDescriptor flip_orientation(const MapDescriptor& inner);

/// General exponential sum. Validated to be real and unit-length on samples
/// (Error{ConstraintViolated} otherwise); harmonicity is not required.
MapDescriptor exp_sum(std::vector<ExpTerm> terms, std::string name = "exp_sum");

/// A sphere-valued map that is not harmonic:
/// (cos x e4 + sin x e5 + cos 2y e6 + sin 2y e7) / sqrt 2.
MapDescriptor non_harmonic_torus();

/// The rotation R_v(beta) as a linear map.
RVec7 rotate_vector(const RVec7& axis, double beta, const RVec7& x);
CVec7 rotate_vector(const RVec7& axis, double beta, const CVec7& x);

/// |i phi_z - phi x phi_z| / |phi_z|; zero exactly for almost complex curves.
/// Throws Error{BranchPoint} if |phi_z| vanishes.
double almost_complex_residual(const VJet& jet);

/// Deterministic sample points used by the validators.
std::vector<cplx> validation_samples();

/// Named catalog lookup: clifford_coassoc, clifford_w1234, trex,
/// totally_geodesic_s2, totally_geodesic_s2_flipped, trex_rotated,
/// non_harmonic_torus. Throws Error{BadConfig} for unknown names.
MapDescriptor catalog_map(std::string_view name);
std::vector<std::string> catalog_names();

/// Default parameter rectangle {x0, x1, y0, y1} for a catalog map.
std::array<double, 4> default_domain(const MapDescriptor& map);

// JSON: {"kind": ..., params}; complex numbers as [re, im], vectors as arrays
// of seven such pairs (or seven reals for real vectors).
nlohmann::json to_json(const MapDescriptor& map);
MapDescriptor map_from_json(const nlohmann::json& j);

}  // namespace g2surf
