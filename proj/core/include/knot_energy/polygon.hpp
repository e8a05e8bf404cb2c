#pragma once

#include <cstddef>
#include <vector>

#include "knot_energy/vec.hpp"

namespace knot_energy {

/// Cyclically ordered vertex list f_0, ..., f_{m-1}; indices are taken mod m.
/// Invariants: m >= 4, one shared dimension, consecutive vertices distinct.
class ClosedPolygon {
 public:
  explicit ClosedPolygon(std::vector<VecN> vertices);

  std::size_t size() const noexcept { return vertices_.size(); }
  std::size_t dim() const noexcept { return vertices_.front().dim(); }
  const std::vector<VecN>& vertices() const noexcept { return vertices_; }

  /// Vertex i mod m.
  const VecN& vertex(std::size_t i) const noexcept { return vertices_[i % vertices_.size()]; }

  /// ||f_{i+1} - f_i||.
  double edge_length(std::size_t i) const noexcept;
  std::vector<double> edge_lengths() const;

  /// Total length L_m.
  double perimeter() const;

  /// max_i ||Δ_i f|| / min_i ||Δ_i f|| - 1; zero for equilateral polygons.
  double equilateral_spread() const;

  /// Largest pairwise vertex distance.
  double diameter() const noexcept;

  /// (f_k, f_{k+1}, ..., f_{k-1}).
  ClosedPolygon rotated(std::size_t k) const;
  /// (f_{m-1}, ..., f_0).
  ClosedPolygon reversed() const;

  friend bool operator==(const ClosedPolygon&, const ClosedPolygon&) = default;

 private:
  std::vector<VecN> vertices_;
};

/// Relative spread of a list of positive lengths (max/min - 1).
double relative_spread(const std::vector<double>& lengths);

/// Regular m-gon on the unit circle in the x1-x2 plane of R^dim, f_i at angle 2πi/m.
ClosedPolygon regular_polygon(std::size_t m, std::size_t dim = 3);

}  // namespace knot_energy
