#include "knot_energy/harness.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "knot_energy/discrete_energy.hpp"
#include "knot_energy/errors.hpp"
#include "knot_energy/moebius.hpp"
#include "knot_energy/parallel.hpp"
#include "knot_energy/sampling.hpp"

namespace knot_energy {

namespace {

double relative_deviation(double reference, double value) {
  const double scale = std::abs(reference);
  return scale > 0.0 ? std::abs(value - reference) / scale : std::abs(value - reference);
}

void require_increasing(std::span<const std::size_t> m_list, std::size_t minimum) {
  if (m_list.empty()) throw InvalidArgument("m list must not be empty");
  for (std::size_t k = 0; k < m_list.size(); ++k) {
    if (m_list[k] < minimum) {
      throw InvalidArgument("every m must be at least " + std::to_string(minimum) + " (got " +
                            std::to_string(m_list[k]) + ")");
    }
    if (k > 0 && m_list[k] <= m_list[k - 1]) throw InvalidArgument("m list must be strictly increasing");
  }
}

}  // namespace

ContinuumReference continuum_reference(const ParametricCurve& curve, const QuadratureSpec& spec) {
  const ContinuumParts parts = integrate_E1_E2(curve, spec);
  return {integrate_E_cosine(curve, spec), parts.E1, parts.E2};
}

ContinuumReference ReferenceCache::get(const ParametricCurve& curve, const QuadratureSpec& spec) {
  if (curve.label().empty()) return continuum_reference(curve, spec);
  const auto key = std::make_tuple(curve.label(), spec.N, spec.diagonal_skip);
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  const ContinuumReference value = continuum_reference(curve, spec);
  std::lock_guard lock(mutex_);
  return entries_.emplace(key, value).first->second;
}

std::size_t ReferenceCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

SweepResult convergence_sweep(const ParametricCurve& curve, std::span<const std::size_t> m_list,
                              const QuadratureSpec& spec, double tol, ReferenceCache* cache) {
  require_increasing(m_list, 8);
  spec.validate();
  const ContinuumReference ref = cache ? cache->get(curve, spec) : continuum_reference(curve, spec);

  SweepResult result;
  for (std::size_t m : m_list) {
    try {
      const EquilateralSample sample = sample_equilateral(curve, m, tol);
      const EnergyBreakdown e = discrete_energy(sample.polygon);
      result.rows.push_back({m, e.total, e.part1, e.part2, ref.E, ref.E1, ref.E2, std::abs(e.total - ref.E),
                             std::abs(e.part1 - ref.E1), std::abs(e.part2 - ref.E2), sample.spread});
      if (sample.spread > spread_warning_threshold) {
        std::ostringstream os;
        os << "m=" << m << ": equilateral spread " << sample.spread << " exceeds " << spread_warning_threshold;
        result.warnings.push_back(os.str());
      }
    } catch (Error& e) {
      e.add_context("m=" + std::to_string(m));
      throw;
    }
  }
  return result;
}

double InvarianceRow::max_deviation() const noexcept { return std::max({rel_dev_E, rel_dev_E1, rel_dev_E2}); }

double InvarianceResult::max_deviation() const noexcept {
  double worst = 0.0;
  for (const auto& row : rows) worst = std::max(worst, row.max_deviation());
  return worst;
}

InvarianceResult invariance_trial(const ClosedPolygon& polygon, std::size_t seeds, double margin, MapFamily family) {
  if (!(margin >= 0.5)) throw InvalidArgument("invariance margin must be at least 0.5");
  const EnergyBreakdown base = discrete_energy(polygon);

  struct Outcome {
    std::optional<InvarianceRow> row;
    std::string skip_reason;
  };
  std::vector<Outcome> outcomes(seeds + 1);

  parallel_for(seeds + 1, [&](std::size_t index) {
    const auto seed = static_cast<std::uint64_t>(index);
    const MoebiusMap map = seed == 0 ? MoebiusMap()
                           : family == MapFamily::inversive ? random_admissible_map(seed, polygon, margin)
                                                            : random_similarity(seed, polygon);
    try {
      const EnergyBreakdown e = discrete_energy(apply_polygon(map, polygon));
      outcomes[index].row = InvarianceRow{seed, map.kind(), relative_deviation(base.total, e.total),
                                          relative_deviation(base.part1, e.part1),
                                          relative_deviation(base.part2, e.part2)};
    } catch (const PoleError& e) {
      outcomes[index].skip_reason = e.what();
    }
  });

  InvarianceResult result;
  for (std::size_t index = 0; index < outcomes.size(); ++index) {
    if (outcomes[index].row) {
      result.rows.push_back(*outcomes[index].row);
    } else {
      result.skipped.push_back({static_cast<std::uint64_t>(index), outcomes[index].skip_reason});
    }
  }
  return result;
}

ControlResult negative_control(std::span<const std::size_t> m_list) {
  require_increasing(m_list, 4);
  ControlResult result;
  for (std::size_t m : m_list) {
    const DiscreteSums s = discrete_sums(cross_ratio_grid(regular_polygon(m)));
    result.rows.push_back({m, s.e2_unmodified, s.e1 + s.e2_unmodified + 4.0, s.e2, s.e1 + s.e2 + 4.0, s.correction});
  }
  result.unmodified_growing = true;
  result.modified_bounded = true;
  for (std::size_t k = 0; k < result.rows.size(); ++k) {
    const ControlRow& row = result.rows[k];
    if (!(row.E >= 3.0 && row.E <= 5.0)) result.modified_bounded = false;
    if (k > 0 && !(std::abs(row.E2_unmodified) > std::abs(result.rows[k - 1].E2_unmodified))) {
      result.unmodified_growing = false;
    }
  }
  return result;
}

}  // namespace knot_energy
