#include "knot_energy/sampling.hpp"

#include <string>

#include "knot_energy/errors.hpp"

namespace knot_energy {

namespace {

std::vector<VecN> evaluate(const ParametricCurve& curve, const std::vector<double>& thetas) {
  std::vector<VecN> points;
  points.reserve(thetas.size());
  for (double t : thetas) points.push_back(curve.position(t));
  return points;
}

std::vector<double> chords(const std::vector<VecN>& points) {
  const std::size_t m = points.size();
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = dist(points[(i + 1) % m], points[i]);
  return out;
}

}  // namespace

EquilateralSample sample_equilateral(const ParametricCurve& curve, std::size_t m, double tol) {
  if (m < 4) throw InvalidArgument("m ≥ 4 required");
  if (!(tol > 0.0)) throw InvalidArgument("spread tolerance must be positive");

  std::vector<double> thetas(m);
  for (std::size_t i = 0; i < m; ++i) thetas[i] = static_cast<double>(i) / static_cast<double>(m);
  for (double t : thetas) {
    if (!(curve.speed(t) > 0.0)) throw InvalidArgument("curve is not immersed at θ = " + std::to_string(t));
  }

  std::vector<double> cumulative(m + 1);
  std::vector<double> next(m);
  double spread = 0.0;
  for (std::size_t sweep = 0; sweep <= equilateral_max_sweeps; ++sweep) {
    auto points = evaluate(curve, thetas);
    const auto lengths = chords(points);
    for (double c : lengths) {
      if (!(c > 0.0)) throw NumericFailure("equilateral sampler produced a degenerate chord", c);
    }
    spread = relative_spread(lengths);
    if (spread <= tol) {
      return {ClosedPolygon(std::move(points)), std::move(thetas), spread, sweep};
    }
    if (sweep == equilateral_max_sweeps) break;

    cumulative[0] = 0.0;
    for (std::size_t i = 0; i < m; ++i) cumulative[i + 1] = cumulative[i] + lengths[i];
    const double perimeter = cumulative[m];

    next[0] = 0.0;
    std::size_t seg = 0;
    for (std::size_t i = 1; i < m; ++i) {
      const double level = static_cast<double>(i) * perimeter / static_cast<double>(m);
      while (seg + 1 < m && cumulative[seg + 1] <= level) ++seg;
      const double lo = thetas[seg];
      const double hi = seg + 1 < m ? thetas[seg + 1] : 1.0;
      next[i] = lo + (hi - lo) * (level - cumulative[seg]) / lengths[seg];
    }
    thetas.swap(next);
  }
  throw NumericFailure("equilateral sampler did not converge within " + std::to_string(equilateral_max_sweeps) +
                           " sweeps (spread " + std::to_string(spread) + ")",
                       spread);
}

ClosedPolygon equilateral_sample(const ParametricCurve& curve, std::size_t m, double tol) {
  return sample_equilateral(curve, m, tol).polygon;
}

}  // namespace knot_energy
