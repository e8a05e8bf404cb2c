#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "knot_energy/errors.hpp"
#include "knot_energy/harness.hpp"
#include "knot_energy/moebius.hpp"
#include "knot_energy/sampling.hpp"

using namespace knot_energy;

namespace {

const ParametricCurve& trefoil() {
  static const ParametricCurve c = named_curve(CurveDescriptor::trefoil());
  return c;
}

}  // namespace

TEST_CASE("sweep rows are self-consistent") {
  const std::vector<std::size_t> m_list{16, 32, 64};
  ReferenceCache cache;
  const SweepResult result = convergence_sweep(trefoil(), m_list, QuadratureSpec{64, 1}, 1e-10, &cache);
  REQUIRE(result.rows.size() == 3);
  CHECK(result.warnings.empty());
  for (std::size_t k = 0; k < 3; ++k) {
    const SweepRow& row = result.rows[k];
    CHECK(row.m == m_list[k]);
    CHECK(std::abs(row.E - (4.0 + row.E1 + row.E2)) <= 1e-12 * std::max(1.0, std::abs(row.E1) + std::abs(row.E2)));
    CHECK(row.err_E == std::abs(row.E - row.E_ref));
    CHECK(row.err_E1 == std::abs(row.E1 - row.E1_ref));
    CHECK(row.err_E2 == std::abs(row.E2 - row.E2_ref));
    CHECK(row.spread <= 1e-10);
    CHECK(row.E_ref == result.rows.front().E_ref);
  }
  CHECK(cache.size() == 1);

  const SweepResult again = convergence_sweep(trefoil(), m_list, QuadratureSpec{64, 1}, 1e-10, &cache);
  CHECK(cache.size() == 1);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(again.rows[k].E == result.rows[k].E);
    CHECK(again.rows[k].E_ref == result.rows[k].E_ref);
  }
}

TEST_CASE("reference cache keys on grid and label") {
  ReferenceCache cache;
  const ParametricCurve circle = named_curve(CurveDescriptor::circle());
  const ContinuumReference a = cache.get(circle, QuadratureSpec{32, 1});
  const ContinuumReference b = cache.get(circle, QuadratureSpec{32, 2});
  CHECK(cache.size() == 2);
  CHECK(a.E1 != b.E1);
  CHECK(cache.get(circle, QuadratureSpec{32, 1}).E1 == a.E1);
  CHECK(cache.size() == 2);

  const ParametricCurve unlabeled(
      3, [&](double t) { return circle.position(t); }, [&](double t) { return circle.velocity(t); });
  (void)cache.get(unlabeled, QuadratureSpec{32, 1});
  CHECK(cache.size() == 2);
}

TEST_CASE("sweep validates its vertex counts") {
  const QuadratureSpec spec{32, 1};
  for (const std::vector<std::size_t>& bad :
       {std::vector<std::size_t>{}, std::vector<std::size_t>{4, 16}, std::vector<std::size_t>{32, 16},
        std::vector<std::size_t>{16, 16}}) {
    CHECK_THROWS_AS(convergence_sweep(trefoil(), bad, spec, 1e-10), InvalidArgument);
  }
}

TEST_CASE("sweep errors carry the vertex count") {
  const std::vector<std::size_t> m_list{8, 16};
  try {
    // Tolerance below what the sampler can reach.
    (void)convergence_sweep(named_curve(CurveDescriptor::ellipse(2.0, 1.0)), m_list, QuadratureSpec{32, 1}, 1e-300);
    FAIL("expected a sampler failure");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).rfind("m=8: ", 0) == 0);
    CHECK(e.is_numeric());
  }
}

TEST_CASE("invariance trial") {
  const ClosedPolygon polygon = equilateral_sample(trefoil(), 64, 1e-10);

  SUBCASE("identity seed is exact") {
    const InvarianceResult result = invariance_trial(polygon, 5, 0.5);
    REQUIRE(result.rows.size() + result.skipped.size() == 6);
    CHECK(result.rows.front().seed == 0);
    CHECK(result.rows.front().map_kind == "identity");
    CHECK(result.rows.front().max_deviation() == 0.0);
  }

  SUBCASE("inversive maps") {
    const InvarianceResult result = invariance_trial(polygon, 20, 0.5);
    CHECK(result.skipped.empty());
    CHECK(result.rows.size() == 21);
    CHECK(result.max_deviation() < 1e-8);
    for (std::size_t k = 1; k < result.rows.size(); ++k) {
      CHECK(result.rows[k].seed == k);
      CHECK(result.rows[k].map_kind == "inversive");
    }
  }

  SUBCASE("similarities") {
    const InvarianceResult result = invariance_trial(polygon, 20, 0.5, MapFamily::similarity);
    CHECK(result.max_deviation() < 1e-12);
    CHECK(result.rows.back().map_kind == "similarity");
  }

  SUBCASE("deterministic") {
    const InvarianceResult a = invariance_trial(polygon, 6, 0.75);
    const InvarianceResult b = invariance_trial(polygon, 6, 0.75);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t k = 0; k < a.rows.size(); ++k) CHECK(a.rows[k].rel_dev_E == b.rows[k].rel_dev_E);
  }

  CHECK_THROWS_AS(invariance_trial(polygon, 3, 0.4), InvalidArgument);
}

TEST_CASE("negative control") {
  // Below m = 64 the unmodified sum changes sign, so growth is checked from there.
  const std::vector<std::size_t> m_list{64, 128, 256, 512};
  const ControlResult result = negative_control(m_list);
  REQUIRE(result.rows.size() == m_list.size());
  CHECK(result.unmodified_growing);
  CHECK(result.modified_bounded);
  for (const auto& row : result.rows) {
    CHECK(row.E2 == doctest::Approx(row.E2_unmodified - row.correction).epsilon(1e-12));
    CHECK(row.E >= 3.0);
    CHECK(row.E <= 5.0);
    CHECK(row.correction > 0.0);
  }
  for (std::size_t k = 1; k < result.rows.size(); ++k) {
    CHECK(std::abs(result.rows[k].E2_unmodified) > std::abs(result.rows[k - 1].E2_unmodified));
  }
  const std::vector<std::size_t> bad{3, 8};
  CHECK_THROWS_AS(negative_control(bad), InvalidArgument);
  const std::vector<std::size_t> small{8, 16, 32};
  CHECK_FALSE(negative_control(small).unmodified_growing);
}
