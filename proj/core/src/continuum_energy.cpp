#include "knot_energy/continuum_energy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "knot_energy/compensated_sum.hpp"
#include "knot_energy/errors.hpp"
#include "knot_energy/parallel.hpp"

namespace knot_energy {

namespace {

constexpr double pi = std::numbers::pi;

// Dot products of one parameter pair, from which every density follows.
struct PairGeometry {
  double chord2;      // ||Δf||²
  double d_v1;        // Δf·f'(θ1)
  double d_v2;        // Δf·f'(θ2)
  double speed1;      // ||f'(θ1)||
  double speed2;      // ||f'(θ2)||
  double tangent_gap;  // ||τ1 - τ2||²
  double tangent_dot;  // τ1·τ2
  double reflected_gap;  // ||τ1 + R_u τ2||² = 2(1 - cos φ), R_u the reflection along u = Δf/||Δf||
};

PairGeometry pair_geometry(const double* p1, const double* v1, const double* p2, const double* v2, std::size_t dim) {
  PairGeometry g{};
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double d = p1[k] - p2[k];
    g.chord2 += d * d;
    g.d_v1 += d * v1[k];
    g.d_v2 += d * v2[k];
    s1 += v1[k] * v1[k];
    s2 += v2[k] * v2[k];
  }
  g.speed1 = std::sqrt(s1);
  g.speed2 = std::sqrt(s2);
  const double chord = std::sqrt(g.chord2);
  const double t2_u = g.d_v2 / (g.speed2 * chord);
  for (std::size_t k = 0; k < dim; ++k) {
    const double t1 = v1[k] / g.speed1;
    const double t2 = v2[k] / g.speed2;
    const double w = t1 + t2 - 2.0 * t2_u * (p1[k] - p2[k]) / chord;
    g.tangent_gap += (t1 - t2) * (t1 - t2);
    g.tangent_dot += t1 * t2;
    g.reflected_gap += w * w;
  }
  return g;
}

double M1_of(const PairGeometry& g) { return 0.5 * g.tangent_gap / g.chord2; }

// ⟨τ1∧u, τ2∧u⟩ = τ1·τ2 - (τ1·u)(τ2·u) for a unit vector u.
double M2_of(const PairGeometry& g) {
  const double a = g.d_v1 / g.speed1;
  const double b = g.d_v2 / g.speed2;
  return 2.0 / g.chord2 * (g.tangent_dot - a * b / g.chord2);
}

double cos_phi_of(const PairGeometry& g) {
  const double a = g.d_v1 / g.speed1;
  const double b = g.d_v2 / g.speed2;
  return 2.0 * a * b / g.chord2 - g.tangent_dot;
}

PairGeometry pair_geometry(const ParametricCurve& curve, double theta1, double theta2) {
  const VecN p1 = curve.position(theta1), p2 = curve.position(theta2);
  const VecN v1 = curve.velocity(theta1), v2 = curve.velocity(theta2);
  const PairGeometry g = pair_geometry(p1.coords().data(), v1.coords().data(), p2.coords().data(),
                                       v2.coords().data(), curve.dim());
  if (!(g.chord2 > 0.0)) {
    throw InvalidArgument("coincident points f(θ1) = f(θ2) at θ1 = " + std::to_string(theta1) +
                          ", θ2 = " + std::to_string(theta2));
  }
  if (!(g.speed1 > 0.0) || !(g.speed2 > 0.0)) throw InvalidArgument("curve is not immersed at the given parameters");
  return g;
}

// Positions and velocities on the midpoint grid, stored flat.
struct GridSamples {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<double> positions;
  std::vector<double> velocities;

  const double* position(std::size_t k) const { return positions.data() + k * dim; }
  const double* velocity(std::size_t k) const { return velocities.data() + k * dim; }
};

double midpoint(std::size_t k, std::size_t n) { return (static_cast<double>(k) + 0.5) / static_cast<double>(n); }

GridSamples sample_grid(const ParametricCurve& curve, std::size_t n) {
  GridSamples s{n, curve.dim(), std::vector<double>(n * curve.dim()), std::vector<double>(n * curve.dim())};
  for (std::size_t k = 0; k < n; ++k) {
    const double t = midpoint(k, n);
    const VecN p = curve.position(t);
    const VecN v = curve.velocity(t);
    std::copy(p.coords().begin(), p.coords().end(), s.positions.begin() + static_cast<std::ptrdiff_t>(k * s.dim));
    std::copy(v.coords().begin(), v.coords().end(), s.velocities.begin() + static_cast<std::ptrdiff_t>(k * s.dim));
  }
  return s;
}

void require_embedded(const ParametricCurve& curve, std::size_t n) {
  const BiLipschitzWitness w = bilipschitz_witness(curve, n);
  if (!w.holds()) throw EmbeddingError(w.lower, w.upper);
}

std::size_t cyclic_gap(std::size_t k, std::size_t l, std::size_t n) {
  const std::size_t d = k > l ? k - l : l - k;
  return std::min(d, n - d);
}

// Σ over non-excised cells of term(k, l), K values per cell; rows are reduced
// in parallel and merged in row order.
template <std::size_t K, class Term>
std::array<double, K> grid_sum(const QuadratureSpec& spec, Term term) {
  const std::size_t n = spec.N;
  std::vector<std::array<CompensatedSum, K>> rows(n);
  parallel_for(n, [&](std::size_t k) {
    auto& row = rows[k];
    for (std::size_t l = 0; l < n; ++l) {
      if (cyclic_gap(k, l, n) < spec.diagonal_skip) continue;
      const std::array<double, K> values = term(k, l);
      for (std::size_t c = 0; c < K; ++c) row[c] += values[c];
    }
  });
  std::array<CompensatedSum, K> total{};
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < K; ++c) total[c] += row[c];
  }
  std::array<double, K> out{};
  for (std::size_t c = 0; c < K; ++c) out[c] = total[c].value();
  return out;
}

double log_chord_over_sine(const ParametricCurve& curve, double theta1, double theta2) {
  const PairGeometry g = pair_geometry(curve, theta1, theta2);
  const double s = std::sin(pi * (theta1 - theta2));
  return std::log(g.chord2 / (g.speed1 * g.speed2)) - std::log(s * s);
}

void require_step(double h) {
  if (!(h >= min_derivative_step) || !std::isfinite(h)) {
    throw InvalidArgument("derivative step must be at least " + std::to_string(min_derivative_step));
  }
}

}  // namespace

void QuadratureSpec::validate() const {
  if (N < 16) throw InvalidArgument("quadrature grid needs N ≥ 16 (got " + std::to_string(N) + ")");
  if (diagonal_skip < 1 || diagonal_skip > N / 4) {
    throw InvalidArgument("diagonal_skip must lie in [1, N/4] (got " + std::to_string(diagonal_skip) + ")");
  }
}

DensitySample density_sample(const ParametricCurve& curve, double theta1, double theta2) {
  const PairGeometry g = pair_geometry(curve, theta1, theta2);
  return {theta1,
          theta2,
          M1_of(g),
          M2_of(g),
          cos_phi_of(g),
          g.speed1 * g.speed2 / g.chord2,
          g.speed1 * g.speed2};
}

double density_M1(const ParametricCurve& curve, double theta1, double theta2) {
  return M1_of(pair_geometry(curve, theta1, theta2));
}

double density_M2(const ParametricCurve& curve, double theta1, double theta2) {
  return M2_of(pair_geometry(curve, theta1, theta2));
}

double cos_conformal_angle(const ParametricCurve& curve, double theta1, double theta2) {
  return cos_phi_of(pair_geometry(curve, theta1, theta2));
}

double invariant_g(const ParametricCurve& curve, double theta1, double theta2) {
  const PairGeometry g = pair_geometry(curve, theta1, theta2);
  return g.speed1 * g.speed2 / g.chord2;
}

double cos_conformal_angle_via_g(const ParametricCurve& curve, double theta1, double theta2, double h) {
  require_step(h);
  if (circle_distance(theta1, theta2) < 10.0 * h) {
    throw StepTooLarge("parameter separation is below 10h", h);
  }
  const auto F = [&](double a, double b) { return log_chord_over_sine(curve, a, b); };
  const double mixed =
      (F(theta1 + h, theta2 + h) - F(theta1 + h, theta2 - h) - F(theta1 - h, theta2 + h) + F(theta1 - h, theta2 - h)) /
      (4.0 * h * h);
  const double s = std::sin(pi * (theta1 - theta2));
  const double singular = 2.0 * pi * pi / (s * s);
  const PairGeometry g = pair_geometry(curve, theta1, theta2);
  const double G = g.chord2 / (g.speed1 * g.speed2);
  return 0.5 * G * (mixed + singular);
}

ContinuumParts integrate_E1_E2(const ParametricCurve& curve, const QuadratureSpec& spec) {
  spec.validate();
  require_embedded(curve, spec.N);
  const GridSamples s = sample_grid(curve, spec.N);
  const auto sums = grid_sum<2>(spec, [&](std::size_t k, std::size_t l) {
    const PairGeometry g = pair_geometry(s.position(k), s.velocity(k), s.position(l), s.velocity(l), s.dim);
    const double measure = g.speed1 * g.speed2;
    return std::array<double, 2>{M1_of(g) * measure, M2_of(g) * measure};
  });
  const double cell = 1.0 / (static_cast<double>(spec.N) * static_cast<double>(spec.N));
  return {sums[0] * cell, sums[1] * cell};
}

double integrate_E_cosine(const ParametricCurve& curve, const QuadratureSpec& spec) {
  spec.validate();
  require_embedded(curve, spec.N);
  const GridSamples s = sample_grid(curve, spec.N);
  const auto sums = grid_sum<1>(spec, [&](std::size_t k, std::size_t l) {
    const PairGeometry g = pair_geometry(s.position(k), s.velocity(k), s.position(l), s.velocity(l), s.dim);
    // 1 - cos φ as a sum of squares: no cancellation and never negative.
    return std::array<double, 1>{0.5 * g.reflected_gap / g.chord2 * g.speed1 * g.speed2};
  });
  const double cell = 1.0 / (static_cast<double>(spec.N) * static_cast<double>(spec.N));
  return 4.0 + sums[0] * cell;
}

double integrate_E_ohara(const ParametricCurve& curve, const ArcLengthTable& table, const QuadratureSpec& spec) {
  spec.validate();
  if (table.resolution() < 4 * spec.N) {
    throw InvalidArgument("arc-length table resolution must be at least 4N (got " +
                          std::to_string(table.resolution()) + " for N = " + std::to_string(spec.N) + ")");
  }
  require_embedded(curve, spec.N);

  const std::size_t n = spec.N;
  const double length = table.total_length();
  const double step = length / static_cast<double>(n);
  std::vector<VecN> points;
  points.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    points.push_back(curve.position(theta_at_arc_length(curve, table, (static_cast<double>(k) + 0.5) * step)));
  }

  const auto sums = grid_sum<1>(spec, [&](std::size_t k, std::size_t l) {
    const double chord2 = dist2(points[k], points[l]);
    if (!(chord2 > 0.0)) throw EmbeddingError(0.0, 0.0);
    const double arc = step * static_cast<double>(cyclic_gap(k, l, n));
    return std::array<double, 1>{1.0 / chord2 - 1.0 / (arc * arc)};
  });
  return sums[0] * step * step;
}

HatParts integrate_hatE(const ParametricCurve& curve, const QuadratureSpec& spec, double h) {
  spec.validate();
  require_step(h);
  const double cell = 1.0 / static_cast<double>(spec.N);
  if (h > cell / 10.0) {
    throw StepTooLarge("derivative step exceeds a tenth of the grid cell " + std::to_string(cell), h);
  }
  require_embedded(curve, spec.N);
  const GridSamples s = sample_grid(curve, spec.N);

  // d/dθ log||f'(θ)|| = f'·f''/||f'||², f'' by central difference.
  std::vector<double> log_speed_rate(spec.N);
  for (std::size_t k = 0; k < spec.N; ++k) {
    const double t = midpoint(k, spec.N);
    const VecN accel = (1.0 / (2.0 * h)) * (curve.velocity(t + h) - curve.velocity(t - h));
    const VecN v = curve.velocity(t);
    log_speed_rate[k] = dot(v, accel) / norm2(v);
  }

  const auto sums = grid_sum<2>(spec, [&](std::size_t k, std::size_t l) {
    const PairGeometry g = pair_geometry(s.position(k), s.velocity(k), s.position(l), s.velocity(l), s.dim);
    // log G = log||Δf||² - log||f'(θ1)|| - log||f'(θ2)||, Δf = f(θ1) - f(θ2).
    const double d1_log_chord = 2.0 * g.d_v1 / g.chord2;
    const double d2_log_chord = -2.0 * g.d_v2 / g.chord2;
    double v1_v2 = 0.0;
    for (std::size_t c = 0; c < s.dim; ++c) v1_v2 += s.velocity(k)[c] * s.velocity(l)[c];
    const double d12_log_chord = -2.0 * v1_v2 / g.chord2 - d1_log_chord * d2_log_chord;

    const double G = g.chord2 / (g.speed1 * g.speed2);
    const double a1 = d1_log_chord - log_speed_rate[k];
    const double a2 = d2_log_chord - log_speed_rate[l];
    const double dG1 = G * a1;
    const double dG2 = G * a2;
    const double dG12 = G * (d12_log_chord + a1 * a2);

    const double hat1 = (1.0 / G) * (1.0 + 0.5 * dG12);
    const double hat2 = -(1.0 / (2.0 * G * G)) * (2.0 * G * dG12 - dG1 * dG2);
    return std::array<double, 2>{hat1, hat2};
  });
  const double area = cell * cell;
  return {sums[0] * area, sums[1] * area};
}

ContinuumReport continuum_report(const ParametricCurve& curve, const QuadratureSpec& spec, double h) {
  spec.validate();
  const ContinuumParts parts = integrate_E1_E2(curve, spec);
  const HatParts hat = integrate_hatE(curve, spec, h);
  const ArcLengthTable table = arc_length(curve, 4 * spec.N);
  return {spec.N,   integrate_E_cosine(curve, spec), parts.E1, parts.E2, hat.hatE1, hat.hatE2,
          integrate_E_ohara(curve, table, spec)};
}

nlohmann::json to_json(const ContinuumReport& r) {
  return {{"N", r.N},         {"E", r.E},         {"E1", r.E1},          {"E2", r.E2},
          {"hatE1", r.hatE1}, {"hatE2", r.hatE2}, {"E_ohara", r.E_ohara}};
}

ContinuumReport continuum_report_from_json(const nlohmann::json& json) {
  try {
    return {json.at("N").get<std::size_t>(),     json.at("E").get<double>(),     json.at("E1").get<double>(),
            json.at("E2").get<double>(),         json.at("hatE1").get<double>(), json.at("hatE2").get<double>(),
            json.at("E_ohara").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed continuum report: ") + e.what());
  }
}

}  // namespace knot_energy
