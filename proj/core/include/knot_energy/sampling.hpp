#pragma once

#include <cstddef>
#include <vector>

#include "knot_energy/curve.hpp"
#include "knot_energy/polygon.hpp"

namespace knot_energy {

struct EquilateralSample {
  ClosedPolygon polygon;
  std::vector<double> thetas;  // θ_0 = 0 < θ_1 < ... < θ_{m-1} < 1
  double spread = 0.0;
  std::size_t sweeps = 0;
};

inline constexpr std::size_t equilateral_max_sweeps = 10000;

/// Inscribed polygon f(θ_i) whose chords agree to relative spread <= tol.
///
/// Fixed-point sweep: with the current θ_i, build the cumulative chord-length
/// profile S(θ) (piecewise linear through (θ_i, S_i), closing at θ = 1) and
/// move each θ_i to S^{-1}(i·L_m/m). θ_0 = 0 is held fixed as a gauge. A
/// fixed point has all chords equal to L_m/m. Throws NumericFailure with the
/// final spread if `equilateral_max_sweeps` sweeps do not reach `tol`.
EquilateralSample sample_equilateral(const ParametricCurve& curve, std::size_t m, double tol);

ClosedPolygon equilateral_sample(const ParametricCurve& curve, std::size_t m, double tol);

}  // namespace knot_energy
