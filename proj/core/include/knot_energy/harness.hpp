#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "knot_energy/continuum_energy.hpp"
#include "knot_energy/curve.hpp"
#include "knot_energy/polygon.hpp"

namespace knot_energy {

/// Spread above which a sweep row is flagged as not equilateral enough.
inline constexpr double spread_warning_threshold = 1e-6;

struct SweepRow {
  std::size_t m = 0;
  double E = 0.0;
  double E1 = 0.0;
  double E2 = 0.0;
  double E_ref = 0.0;
  double E1_ref = 0.0;
  double E2_ref = 0.0;
  double err_E = 0.0;
  double err_E1 = 0.0;
  double err_E2 = 0.0;
  double spread = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<std::string> warnings;
};

/// Continuum values a sweep compares against: E by the cosine formula, E1 and E2
/// from the decomposition.
struct ContinuumReference {
  double E = 0.0;
  double E1 = 0.0;
  double E2 = 0.0;
};

/// Memoizes references per (curve label, N, diagonal_skip). Safe to share
/// between threads. Curves without a label are never cached.
class ReferenceCache {
 public:
  ContinuumReference get(const ParametricCurve& curve, const QuadratureSpec& spec);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::tuple<std::string, std::size_t, std::size_t>, ContinuumReference> entries_;
};

ContinuumReference continuum_reference(const ParametricCurve& curve, const QuadratureSpec& spec);

/// For each m: equilateral sample at spread tolerance `tol`, discrete energy,
/// and absolute errors against the continuum reference. Library errors are
/// rethrown with "m=<m>: " prepended. InvalidArgument unless m_list is
/// strictly increasing with every m >= 8.
SweepResult convergence_sweep(const ParametricCurve& curve, std::span<const std::size_t> m_list,
                              const QuadratureSpec& spec, double tol, ReferenceCache* cache = nullptr);

enum class MapFamily { inversive, similarity };

struct InvarianceRow {
  std::uint64_t seed = 0;
  std::string map_kind;
  double rel_dev_E = 0.0;
  double rel_dev_E1 = 0.0;
  double rel_dev_E2 = 0.0;

  double max_deviation() const noexcept;
};

struct SkippedSeed {
  std::uint64_t seed = 0;
  std::string reason;
};

struct InvarianceResult {
  std::vector<InvarianceRow> rows;
  std::vector<SkippedSeed> skipped;

  double max_deviation() const noexcept;
};

/// Seed 0 is the identity map; seeds 1..seeds draw random maps of `family`
/// (see random_admissible_map and random_similarity). Seeds whose map hits a
/// pole are skipped and listed. Requires margin >= 0.5.
InvarianceResult invariance_trial(const ClosedPolygon& polygon, std::size_t seeds, double margin,
                                  MapFamily family = MapFamily::inversive);

struct ControlRow {
  std::size_t m = 0;
  double E2_unmodified = 0.0;
  double E_unmodified = 0.0;
  double E2 = 0.0;
  double E = 0.0;
  double correction = 0.0;  // Σ 1/(2 g_ij²)
};

struct ControlResult {
  std::vector<ControlRow> rows;
  bool unmodified_growing = false;  // |E2_unmodified| strictly increasing in m
  bool modified_bounded = false;    // every modified E in [3, 5]
};

/// Unmodified against modified E2 on regular m-gons.
ControlResult negative_control(std::span<const std::size_t> m_list);

}  // namespace knot_energy
