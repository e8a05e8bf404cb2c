#include "knot_energy/discrete_energy.hpp"

#include <algorithm>
#include <cmath>

#include "knot_energy/compensated_sum.hpp"
#include "knot_energy/errors.hpp"
#include "knot_energy/parallel.hpp"

namespace knot_energy {

CrossRatioGrid::CrossRatioGrid(std::size_t m, std::vector<double> values) : m_(m), values_(std::move(values)) {
  if (m_ == 0) throw InvalidArgument("grid must be non-empty");
  if (values_.size() != m_ * m_) throw InvalidArgument("grid needs m*m values");
}

CrossRatioGrid cross_ratio_grid(const ClosedPolygon& polygon) {
  const std::size_t m = polygon.size();
  std::vector<double> distance(m * m);
  parallel_for(m, [&](std::size_t i) {
    for (std::size_t j = 0; j < m; ++j) distance[i * m + j] = dist(polygon.vertex(i), polygon.vertex(j));
  });
  const auto edges = polygon.edge_lengths();

  std::vector<double> g(m * m);
  parallel_for(m, [&](std::size_t i) {
    const std::size_t ip = (i + 1) % m;
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t jp = (j + 1) % m;
      g[i * m + j] = i == j ? 0.0 : distance[i * m + j] * distance[ip * m + jp] / (edges[i] * edges[j]);
    }
  });
  return CrossRatioGrid(m, std::move(g));
}

double fwd_diff_i(const CrossRatioGrid& u, std::size_t i, std::size_t j) noexcept { return u(i + 1, j) - u(i, j); }

double fwd_diff_j(const CrossRatioGrid& u, std::size_t i, std::size_t j) noexcept { return u(i, j + 1) - u(i, j); }

double mixed_diff(const CrossRatioGrid& u, std::size_t i, std::size_t j) noexcept {
  return u(i + 1, j + 1) - u(i + 1, j) - u(i, j + 1) + u(i, j);
}

double fwd_diff(std::span<const double> u, std::size_t i) {
  if (u.empty()) throw InvalidArgument("empty sequence");
  return u[(i + 1) % u.size()] - u[i % u.size()];
}

namespace {

void require_positive(double x) {
  if (!(x > 0.0)) throw InvalidArgument("geometric and harmonic means need strictly positive entries");
}

Means means_of(double a, double b) {
  require_positive(a);
  require_positive(b);
  return {0.5 * (a + b), std::sqrt(a * b), 2.0 / (1.0 / a + 1.0 / b)};
}

}  // namespace

Means sequence_means(std::span<const double> u, std::size_t i) {
  if (u.empty()) throw InvalidArgument("empty sequence");
  return means_of(u[i % u.size()], u[(i + 1) % u.size()]);
}

GridMeans grid_means(const CrossRatioGrid& u, std::size_t i, std::size_t j) {
  const double a = u(i, j), b = u(i + 1, j), c = u(i, j + 1), d = u(i + 1, j + 1);
  GridMeans out{means_of(a, b), means_of(a, c), {}};
  require_positive(d);
  out.ij = {0.25 * (a + b + c + d), std::sqrt(std::sqrt(a * b * c * d)), 4.0 / (1.0 / a + 1.0 / b + 1.0 / c + 1.0 / d)};
  return out;
}

DiscreteSums discrete_sums(const CrossRatioGrid& grid) {
  const std::size_t m = grid.size();
  struct RowSums {
    CompensatedSum e1, e2, e2_unmodified, correction, combined;
  };
  std::vector<RowSums> rows(m);

  parallel_for(m, [&](std::size_t i) {
    RowSums& row = rows[i];
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const double g = grid(i, j);
      if (!(g > 0.0) || !std::isfinite(g)) throw SelfIntersectionError(i, j);
      const double g_i = grid(i + 1, j);
      const double g_j = grid(i, j + 1);
      const double g_ij = grid(i + 1, j + 1);
      const double d_i = g_i - g;
      const double d_j = g_j - g;
      const double d_ij = g_ij - g_i - g_j + g;
      const double det = d_ij * (2.0 * g) - d_i * d_j;
      const double inv_2g2 = 1.0 / (2.0 * g * g);

      const double term1 = (1.0 + 0.5 * d_ij) / g;
      const double term2 = -(det + 1.0) * inv_2g2;
      row.e1 += term1;
      row.e2 += term2;
      row.combined += term1 + term2;
      row.e2_unmodified += -det * inv_2g2;
      row.correction += inv_2g2;
    }
  });

  RowSums total;
  for (const RowSums& row : rows) {
    total.e1 += row.e1;
    total.e2 += row.e2;
    total.e2_unmodified += row.e2_unmodified;
    total.correction += row.correction;
    total.combined += row.combined;
  }
  return {total.e1.value(), total.e2.value(), total.e2_unmodified.value(), total.correction.value(),
          4.0 + total.combined.value()};
}

double discrete_E1(const ClosedPolygon& polygon) { return discrete_sums(cross_ratio_grid(polygon)).e1; }

double discrete_E2(const ClosedPolygon& polygon) { return discrete_sums(cross_ratio_grid(polygon)).e2; }

double discrete_E2_unmodified(const ClosedPolygon& polygon) {
  return discrete_sums(cross_ratio_grid(polygon)).e2_unmodified;
}

EnergyBreakdown discrete_energy(const CrossRatioGrid& grid) {
  const DiscreteSums sums = discrete_sums(grid);
  const double split = sums.e1 + sums.e2 + 4.0;
  if (!(std::abs(sums.total - split) <= decomposition_tolerance * std::max(1.0, std::abs(sums.e1) + std::abs(sums.e2)))) {
    throw NumericFailure("E^m differs from E1^m + E2^m + 4 beyond rounding", sums.total - split);
  }
  return {sums.total, sums.e1, sums.e2};
}

EnergyBreakdown discrete_energy(const ClosedPolygon& polygon) { return discrete_energy(cross_ratio_grid(polygon)); }

EnergyBreakdown discrete_energy_unmodified(const ClosedPolygon& polygon) {
  const DiscreteSums sums = discrete_sums(cross_ratio_grid(polygon));
  return {sums.e1 + sums.e2_unmodified + 4.0, sums.e1, sums.e2_unmodified};
}

}  // namespace knot_energy
