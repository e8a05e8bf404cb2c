#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "knot_energy/polygon.hpp"

namespace knot_energy {

/// Square table u_ij with both indices taken mod m, stored row-major.
///
/// For a polygon this holds the discrete Möbius invariant
///
///   g_ij = ||f_j - f_i|| ||f_{j+1} - f_{i+1}|| / (||f_{i+1} - f_i|| ||f_{j+1} - f_j||),
///
/// the cross ratio of (f_i, f_{i+1}, f_j, f_{j+1}). The diagonal is g_ii = 0
/// (its numerator vanishes); shifted reads in the difference operators touch
/// the diagonal when |i - j| = 1 and see that zero.
class CrossRatioGrid {
 public:
  CrossRatioGrid(std::size_t m, std::vector<double> values);

  std::size_t size() const noexcept { return m_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[(i % m_) * m_ + (j % m_)]; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::size_t m_;
  std::vector<double> values_;
};

CrossRatioGrid cross_ratio_grid(const ClosedPolygon& polygon);

// Forward differences on the grid:
//   Δ_i u_ij = u_{(i+1)j} - u_ij,  Δ_j u_ij = u_{i(j+1)} - u_ij,
//   Δ_iΔ_j u_ij = u_{(i+1)(j+1)} - u_{(i+1)j} - u_{i(j+1)} + u_ij.
double fwd_diff_i(const CrossRatioGrid& grid, std::size_t i, std::size_t j) noexcept;
double fwd_diff_j(const CrossRatioGrid& grid, std::size_t i, std::size_t j) noexcept;
double mixed_diff(const CrossRatioGrid& grid, std::size_t i, std::size_t j) noexcept;

/// Δ_i u = u_{i+1} - u_i on a cyclic sequence.
double fwd_diff(std::span<const double> u, std::size_t i);

struct Means {
  double arithmetic = 0.0;
  double geometric = 0.0;
  double harmonic = 0.0;
};

/// A_i, G_i, H_i of (u_i, u_{i+1}). InvalidArgument on nonpositive entries.
Means sequence_means(std::span<const double> u, std::size_t i);

struct GridMeans {
  Means i;   // over u_ij, u_{(i+1)j}
  Means j;   // over u_ij, u_{i(j+1)}
  Means ij;  // over the four corners u_ij, u_{(i+1)j}, u_{i(j+1)}, u_{(i+1)(j+1)}
};

GridMeans grid_means(const CrossRatioGrid& grid, std::size_t i, std::size_t j);

struct EnergyBreakdown {
  double total = 0.0;  // E^m = part1 + part2 + 4
  double part1 = 0.0;  // E1^m
  double part2 = 0.0;  // E2^m
};

/// All per-pair sums over ordered pairs i != j, in one pass.
struct DiscreteSums {
  double e1 = 0.0;
  double e2 = 0.0;             // with the +1 regularization
  double e2_unmodified = 0.0;  // without it
  double correction = 0.0;     // Σ 1/(2 g_ij²) = e2_unmodified - e2
  double total = 0.0;          // 4 + Σ of the per-pair e1 + e2 density, summed on its own
};

/// Allowed gap between the separately summed total and part1 + part2 + 4,
/// relative to max(1, |part1| + |part2|).
inline constexpr double decomposition_tolerance = 1e-12;

/// Throws SelfIntersectionError(i, j) for the first row i (then column j) with
/// an off-diagonal g_ij that is not positive. Rows are reduced with
/// compensated summation and merged in row order, so the result does not
/// depend on the thread count.
DiscreteSums discrete_sums(const CrossRatioGrid& grid);

/// E1^m = Σ_{i≠j} (1/g_ij)(1 + ½ Δ_iΔ_j g_ij).
double discrete_E1(const ClosedPolygon& polygon);

/// E2^m = -Σ_{i≠j} (1/(2 g_ij²)) { det[[Δ_iΔ_j g_ij, Δ_i g_ij], [Δ_j g_ij, 2 g_ij]] + 1 }.
double discrete_E2(const ClosedPolygon& polygon);

/// E2^m without the +1 term; diverges on regular m-gons as m grows.
double discrete_E2_unmodified(const ClosedPolygon& polygon);

/// The total is summed independently of the parts; NumericFailure if it
/// disagrees with part1 + part2 + 4 beyond decomposition_tolerance.
EnergyBreakdown discrete_energy(const ClosedPolygon& polygon);
EnergyBreakdown discrete_energy(const CrossRatioGrid& grid);

/// Breakdown with the unmodified E2 in place of E2.
EnergyBreakdown discrete_energy_unmodified(const ClosedPolygon& polygon);

}  // namespace knot_energy
