#include "knot_energy/arc_length.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "knot_energy/errors.hpp"

namespace knot_energy {

namespace {

// Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 5> gl_nodes = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                            0.9061798459386640};
constexpr std::array<double, 5> gl_weights = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                              0.4786286704993665, 0.2369268850561891};

double speed_integral(const ParametricCurve& curve, double from, double to) {
  const double half = 0.5 * (to - from);
  const double mid = 0.5 * (to + from);
  double sum = 0.0;
  for (std::size_t k = 0; k < gl_nodes.size(); ++k) sum += gl_weights[k] * curve.speed(mid + half * gl_nodes[k]);
  return half * sum;
}

std::size_t bracket(const std::vector<ArcLengthTable::Node>& grid, double s) {
  auto it = std::upper_bound(grid.begin(), grid.end(), s,
                             [](double value, const ArcLengthTable::Node& n) { return value < n.s; });
  if (it == grid.begin()) return 0;
  const auto k = static_cast<std::size_t>(std::distance(grid.begin(), it)) - 1;
  return std::min(k, grid.size() - 2);
}

double wrap(double s, double total) {
  double r = std::fmod(s, total);
  if (r < 0.0) r += total;
  return r;
}

}  // namespace

ArcLengthTable::ArcLengthTable(std::vector<Node> grid) : grid_(std::move(grid)) {
  if (grid_.size() < 2) throw InvalidArgument("arc-length table needs at least two nodes");
  if (grid_.front().s != 0.0) throw InvalidArgument("arc-length table must start at s = 0");
  for (std::size_t k = 1; k < grid_.size(); ++k) {
    if (!(grid_[k].s > grid_[k - 1].s)) throw InvalidArgument("arc length must be strictly increasing");
  }
}

double ArcLengthTable::theta_at(double s) const {
  s = wrap(s, total_length());
  const std::size_t k = bracket(grid_, s);
  const Node& lo = grid_[k];
  const Node& hi = grid_[k + 1];
  return lo.theta + (hi.theta - lo.theta) * (s - lo.s) / (hi.s - lo.s);
}

ArcLengthTable arc_length(const ParametricCurve& curve, std::size_t resolution) {
  if (resolution < 16) throw InvalidArgument("arc-length resolution must be at least 16");
  std::vector<ArcLengthTable::Node> grid(resolution + 1);
  const double h = 1.0 / static_cast<double>(resolution);
  double s = 0.0;
  grid[0] = {0.0, 0.0};
  for (std::size_t k = 1; k <= resolution; ++k) {
    const double theta = static_cast<double>(k) * h;
    s += speed_integral(curve, theta - h, theta);
    grid[k] = {theta, s};
  }
  grid[resolution].theta = 1.0;
  return ArcLengthTable(std::move(grid));
}

double intrinsic_distance(const ArcLengthTable& table, double s1, double s2) {
  const double total = table.total_length();
  if (s1 < 0.0 || s1 > total || s2 < 0.0 || s2 > total) {
    throw InvalidArgument("intrinsic_distance arguments must lie in [0, L]");
  }
  const double d = std::abs(s1 - s2);
  return std::min(d, total - d);
}

double theta_at_arc_length(const ParametricCurve& curve, const ArcLengthTable& table, double s) {
  s = wrap(s, table.total_length());
  const auto& grid = table.grid();
  const std::size_t k = bracket(grid, s);
  const auto& lo = grid[k];
  double theta = table.theta_at(s);
  for (int iter = 0; iter < 8; ++iter) {
    const double residual = lo.s + speed_integral(curve, lo.theta, theta) - s;
    const double step = residual / curve.speed(theta);
    theta -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return theta;
}

}  // namespace knot_energy
