#pragma once

#include <cstddef>

#include <nlohmann/json.hpp>

#include "knot_energy/arc_length.hpp"
#include "knot_energy/curve.hpp"

namespace knot_energy {

/// N×N midpoint grid θ_k = (k + ½)/N on (R/Z)²; cells with cyclic index
/// distance below `diagonal_skip` are excised.
struct QuadratureSpec {
  std::size_t N = 512;
  std::size_t diagonal_skip = 1;

  /// InvalidArgument unless N >= 16 and 1 <= diagonal_skip <= N/4.
  void validate() const;
};

struct DensitySample {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double M1 = 0.0;
  double M2 = 0.0;
  double cos_phi = 0.0;  // raw, not clamped
  double g = 0.0;
  double measure = 0.0;  // ||f'(θ1)|| ||f'(θ2)||
};

/// All pointwise quantities at (θ1, θ2). InvalidArgument when f(θ1) = f(θ2).
DensitySample density_sample(const ParametricCurve& curve, double theta1, double theta2);

/// ½||τ1 - τ2||² / ||Δf||², per unit arc-length pair.
double density_M1(const ParametricCurve& curve, double theta1, double theta2);

/// (2/||Δf||²) ⟨τ1∧u, τ2∧u⟩ with u = Δf/||Δf||.
double density_M2(const ParametricCurve& curve, double theta1, double theta2);

/// 2(Δf·τ1)(Δf·τ2)/||Δf||² - τ1·τ2, unclamped.
double cos_conformal_angle(const ParametricCurve& curve, double theta1, double theta2);

/// ||f'(θ1)|| ||f'(θ2)|| / ||Δf||².
double invariant_g(const ParametricCurve& curve, double theta1, double theta2);

inline constexpr double default_derivative_step = 1e-4;
inline constexpr double min_derivative_step = 1e-6;

/// cos φ = (G/2) ∂²/∂θ1∂θ2 log G with G = 1/invariant_g, differentiated by a
/// central-difference stencil of step h. The factor sin²(π(θ1 - θ2)) is split
/// off before differencing and its exact mixed log-derivative 2π²/sin² is added
/// back; it carries the singular part, so the remainder is smooth.
/// StepTooLarge when the pair is closer than 10h on R/Z.
double cos_conformal_angle_via_g(const ParametricCurve& curve, double theta1, double theta2,
                                 double h = default_derivative_step);

struct ContinuumParts {
  double E1 = 0.0;
  double E2 = 0.0;
};

struct HatParts {
  double hatE1 = 0.0;
  double hatE2 = 0.0;
};

/// Midpoint sums of M1·measure and M2·measure. EmbeddingError if the
/// bi-Lipschitz witness on the grid fails.
ContinuumParts integrate_E1_E2(const ParametricCurve& curve, const QuadratureSpec& spec);

/// 4 + ∬ (1 - cos φ)/||Δf||² · measure.
double integrate_E_cosine(const ParametricCurve& curve, const QuadratureSpec& spec);

/// ∬ (1/||Δf||² - 1/D²) ds1 ds2 on an N×N midpoint grid in arc length, D the
/// intrinsic distance. Requires table.resolution() >= 4N.
double integrate_E_ohara(const ParametricCurve& curve, const ArcLengthTable& table, const QuadratureSpec& spec);

/// Quadrature of the densities
///   (1/G)(1 + ½ ∂12 G)   and   -(1/(2G²))(2G ∂12 G - ∂1 G ∂2 G)
/// in the θ-measure. Chord terms of log G are differentiated exactly; only
/// d/dθ log||f'|| uses a central difference of step h. StepTooLarge unless
/// h <= cell/10.
HatParts integrate_hatE(const ParametricCurve& curve, const QuadratureSpec& spec, double h = default_derivative_step);

struct ContinuumReport {
  std::size_t N = 0;
  double E = 0.0;
  double E1 = 0.0;
  double E2 = 0.0;
  double hatE1 = 0.0;
  double hatE2 = 0.0;
  double E_ohara = 0.0;
};

/// Every continuum quantity on one grid; the arc-length table uses resolution 4N.
ContinuumReport continuum_report(const ParametricCurve& curve, const QuadratureSpec& spec,
                                 double h = default_derivative_step);

nlohmann::json to_json(const ContinuumReport& report);
ContinuumReport continuum_report_from_json(const nlohmann::json& json);

}  // namespace knot_energy
