#include "knot_energy/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "knot_energy/errors.hpp"

namespace knot_energy {

ClosedPolygon::ClosedPolygon(std::vector<VecN> vertices) : vertices_(std::move(vertices)) {
  const std::size_t m = vertices_.size();
  if (m < 4) throw InvalidArgument("m ≥ 4 required (got " + std::to_string(m) + " vertices)");
  const std::size_t n = vertices_.front().dim();
  if (n < 2) throw InvalidArgument("vertex dimension must be at least 2");
  for (const VecN& v : vertices_) {
    if (v.dim() != n) throw InvalidArgument("all vertices must share one dimension");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!(edge_length(i) > 0.0)) {
      throw InvalidArgument("consecutive vertices " + std::to_string(i) + " and " + std::to_string((i + 1) % m) +
                            " coincide");
    }
  }
}

double ClosedPolygon::edge_length(std::size_t i) const noexcept { return dist(vertex(i + 1), vertex(i)); }

std::vector<double> ClosedPolygon::edge_lengths() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = edge_length(i);
  return out;
}

double ClosedPolygon::perimeter() const {
  double total = 0.0;
  for (double e : edge_lengths()) total += e;
  return total;
}

double relative_spread(const std::vector<double>& lengths) {
  if (lengths.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(lengths.begin(), lengths.end());
  return *hi / *lo - 1.0;
}

double ClosedPolygon::equilateral_spread() const { return relative_spread(edge_lengths()); }

double ClosedPolygon::diameter() const noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) best = std::max(best, dist2(vertices_[i], vertices_[j]));
  }
  return std::sqrt(best);
}

ClosedPolygon ClosedPolygon::rotated(std::size_t k) const {
  std::vector<VecN> out(vertices_);
  std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k % size()), out.end());
  return ClosedPolygon(std::move(out));
}

ClosedPolygon ClosedPolygon::reversed() const {
  return ClosedPolygon(std::vector<VecN>(vertices_.rbegin(), vertices_.rend()));
}

ClosedPolygon regular_polygon(std::size_t m, std::size_t dim) {
  std::vector<VecN> vertices;
  vertices.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m);
    VecN v(dim);
    v[0] = std::cos(angle);
    v[1] = std::sin(angle);
    vertices.push_back(std::move(v));
  }
  return ClosedPolygon(std::move(vertices));
}

}  // namespace knot_energy
