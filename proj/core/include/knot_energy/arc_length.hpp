#pragma once

#include <cstddef>
#include <vector>

#include "knot_energy/curve.hpp"

namespace knot_energy {

/// Cumulative arc length s_k at θ_k = k/resolution, k = 0..resolution,
/// by 5-point Gauss-Legendre per cell on ||f'||. s_0 = 0 and s_resolution = L.
class ArcLengthTable {
 public:
  struct Node {
    double theta;
    double s;
  };

  explicit ArcLengthTable(std::vector<Node> grid);

  const std::vector<Node>& grid() const noexcept { return grid_; }
  double total_length() const noexcept { return grid_.back().s; }
  std::size_t resolution() const noexcept { return grid_.size() - 1; }

  /// Piecewise-linear inverse of s(θ); s is reduced mod L.
  double theta_at(double s) const;

 private:
  std::vector<Node> grid_;
};

ArcLengthTable arc_length(const ParametricCurve& curve, std::size_t resolution);

/// D(s1, s2) = min(|s1 - s2|, L - |s1 - s2|) for s1, s2 in [0, L].
double intrinsic_distance(const ArcLengthTable& table, double s1, double s2);

/// θ with s(θ) = s, refined by Newton steps on the curve's own speed from the
/// table's linear guess. Sub-interval arc length uses 5-point Gauss-Legendre, so
/// the result is consistent with the tabulated nodes to the node accuracy.
double theta_at_arc_length(const ParametricCurve& curve, const ArcLengthTable& table, double s);

}  // namespace knot_energy
