#include <doctest.h>

#include <cmath>
#include <numbers>
#include <variant>

#include "knot_energy/discrete_energy.hpp"
#include "knot_energy/errors.hpp"
#include "knot_energy/moebius.hpp"
#include "knot_energy/sampling.hpp"
#include "support/generators.hpp"

using namespace knot_energy;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Random map with stages of every kind, inversion center kept away from `avoid`.
MoebiusMap random_mixed_map(gen::Rng& rng, std::size_t dim, const std::vector<VecN>& avoid) {
  VecN center = rng.point(dim, 3.0);
  for (int tries = 0; tries < 100; ++tries) {
    double closest = INFINITY;
    for (const auto& p : avoid) closest = std::min(closest, dist(p, center));
    if (closest > 0.5) break;
    center = rng.point(dim, 3.0);
  }
  const ClosedPolygon helper = regular_polygon(6, dim);
  const MoebiusMap similarity = random_similarity(rng.bits(), helper);
  std::vector<MoebiusStage> stages{Translation{rng.point(dim)}, Inversion{center, rng.uniform(0.5, 2.0)}};
  for (const auto& s : similarity.stages()) stages.push_back(s);
  return MoebiusMap(stages);
}

}  // namespace

TEST_CASE("apply on hand examples") {
  const MoebiusMap inversion({Inversion{VecN{0.0, 0.0, 0.0}, 1.0}});
  CHECK(inversion.apply(VecN{2.0, 0.0, 0.0}) == VecN{0.5, 0.0, 0.0});

  const MoebiusMap identity;
  const VecN p{0.3, -4.0, 1.25};
  CHECK(identity.apply(p) == p);
  CHECK(identity.kind() == "identity");
  CHECK(inversion.kind() == "inversive");
}

TEST_CASE("apply reports the stage that hits a pole") {
  const MoebiusMap map({Translation{VecN{1.0, 0.0}}, Inversion{VecN{1.0, 0.0}, 1.0}});
  try {
    (void)map.apply(VecN{0.0, 0.0});
    FAIL("expected a pole");
  } catch (const PoleError& e) {
    CHECK(e.stage() == 1);
    CHECK(e.kind() == ErrorKind::pole);
  }
}

TEST_CASE("map validation") {
  CHECK_THROWS_AS(MoebiusMap({Scaling{0.0}}), InvalidArgument);
  CHECK_THROWS_AS(MoebiusMap({Inversion{VecN{0.0, 0.0}, -1.0}}), InvalidArgument);
  CHECK_THROWS_AS(MoebiusMap({Orthogonal{2, {1.0, 0.1, 0.0, 1.0}}}), InvalidArgument);
  CHECK_THROWS_AS(MoebiusMap({Translation{VecN{0.0, 0.0}}, Translation{VecN{0.0, 0.0, 0.0}}}), InvalidArgument);
  CHECK_THROWS_AS(MoebiusMap({Translation{VecN{1.0, 0.0}}}).apply(VecN{0.0, 0.0, 0.0}), InvalidArgument);
}

TEST_CASE("composing with the algebraic inverse returns the input") {
  gen::Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const VecN p = rng.point(3);
    const MoebiusMap map = random_mixed_map(rng, 3, {p});
    const VecN back = map.inverse().apply(map.apply(p));
    CHECK(dist(back, p) <= 1e-12 * std::max(1.0, norm(p)));
  }
}

TEST_CASE("pushforward matches a finite difference of apply") {
  gen::Rng rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const VecN p = rng.point(3), v = rng.point(3);
    const MoebiusMap map = random_mixed_map(rng, 3, {p});
    const auto [image, dv] = map.pushforward(p, v);
    CHECK(dist(image, map.apply(p)) <= 1e-14 * std::max(1.0, norm(image)));
    const double h = 1e-6;
    const VecN fd = (1.0 / (2.0 * h)) * (map.apply(p + h * v) - map.apply(p - h * v));
    CHECK(dist(fd, dv) <= 1e-6 * std::max(1.0, norm(dv)));
  }
}

TEST_CASE("cross_ratio hand values") {
  const VecN a{0.0, 0.0}, b{1.0, 0.0}, c{2.0, 0.0}, d{3.0, 0.0};
  CHECK(cross_ratio(a, b, c, d) == doctest::Approx(4.0));
  CHECK(cross_ratio(a, b, a, d) == 0.0);
  CHECK_THROWS_AS(cross_ratio(a, a, c, d), InvalidArgument);
  CHECK_THROWS_AS(cross_ratio(a, b, c, c), InvalidArgument);
}

TEST_CASE("cross_ratio is preserved by inversions centered outside the quadruple") {
  gen::Rng rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const VecN a = rng.point(2), b = rng.point(2), c = rng.point(2), d = rng.point(2);
    VecN center = rng.point(2, 3.0);
    while (std::min({dist(center, a), dist(center, b), dist(center, c), dist(center, d)}) < 0.1) {
      center = rng.point(2, 3.0);
    }
    const MoebiusMap map({Inversion{center, rng.uniform(0.2, 3.0)}});
    const double before = cross_ratio(a, b, c, d);
    const double after = cross_ratio(map.apply(a), map.apply(b), map.apply(c), map.apply(d));
    REQUIRE(rel(after, before) < 1e-10);
  }
}

TEST_CASE("similarities preserve cross ratios to rounding") {
  gen::Rng rng(24);
  const ClosedPolygon helper = regular_polygon(8, 4);
  for (int trial = 0; trial < 500; ++trial) {
    const VecN a = rng.point(4), b = rng.point(4), c = rng.point(4), d = rng.point(4);
    const MoebiusMap map = random_similarity(rng.bits(), helper);
    const double before = cross_ratio(a, b, c, d);
    REQUIRE(rel(cross_ratio(map.apply(a), map.apply(b), map.apply(c), map.apply(d)), before) < 1e-13);
  }
}

TEST_CASE("apply is injective on admissible point sets") {
  gen::Rng rng(25);
  std::vector<VecN> points;
  for (int k = 0; k < 60; ++k) points.push_back(rng.point(3));
  const MoebiusMap map = random_mixed_map(rng, 3, points);
  std::vector<VecN> images;
  for (const auto& p : points) images.push_back(map.apply(p));
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) CHECK(dist(images[i], images[j]) > 0.0);
  }
}

TEST_CASE("apply_polygon") {
  const ClosedPolygon sq({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
  CHECK(apply_polygon(MoebiusMap(), sq) == sq);

  const ClosedPolygon doubled = apply_polygon(MoebiusMap({Scaling{2.0}}), sq);
  for (std::size_t i = 0; i < 4; ++i) CHECK(doubled.edge_length(i) == 2.0);

  SUBCASE("far inversion keeps the cross-ratio grid") {
    const ClosedPolygon hexagon = regular_polygon(6);
    const MoebiusMap map({Inversion{VecN{5.0, 1.0, -2.0}, 1.5}});
    const CrossRatioGrid before = cross_ratio_grid(hexagon);
    const CrossRatioGrid after = cross_ratio_grid(apply_polygon(map, hexagon));
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) {
        if (i == j) continue;
        CHECK(rel(after(i, j), before(i, j)) < 1e-10);
      }
    }
  }

  SUBCASE("pole names the vertex") {
    const MoebiusMap map({Inversion{VecN{1.0, 1.0}, 1.0}});
    try {
      (void)apply_polygon(map, sq);
      FAIL("expected a pole");
    } catch (const PoleError& e) {
      CHECK(e.vertex() == 2);
      CHECK(e.stage() == 0);
    }
  }
}

TEST_CASE("random_admissible_map") {
  const ClosedPolygon polygon = equilateral_sample(named_curve(CurveDescriptor::trefoil()), 64, 1e-10);
  const double diameter = polygon.diameter();

  SUBCASE("deterministic in the seed") {
    CHECK(random_admissible_map(5, polygon, 0.5) == random_admissible_map(5, polygon, 0.5));
  }
  SUBCASE("center keeps its distance") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const MoebiusMap map = random_admissible_map(seed, polygon, 0.5);
      REQUIRE(map.stages().size() == 4);
      const auto* inversion = std::get_if<Inversion>(&map.stages().front());
      REQUIRE(inversion != nullptr);
      double closest = INFINITY;
      for (const auto& v : polygon.vertices()) closest = std::min(closest, dist(v, inversion->center));
      CHECK(closest >= 0.5 * diameter);
    }
  }
  SUBCASE("different seeds give different maps") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      CHECK_FALSE(random_admissible_map(seed, polygon, 0.5) == random_admissible_map(seed + 1, polygon, 0.5));
    }
  }
  SUBCASE("stage order") {
    const MoebiusMap map = random_admissible_map(9, polygon, 0.5);
    CHECK(std::holds_alternative<Inversion>(map.stages()[0]));
    CHECK(std::holds_alternative<Scaling>(map.stages()[1]));
    CHECK(std::holds_alternative<Orthogonal>(map.stages()[2]));
    CHECK(std::holds_alternative<Translation>(map.stages()[3]));
    CHECK(random_similarity(9, polygon).kind() == "similarity");
  }
}

TEST_CASE("map JSON round trip") {
  const ClosedPolygon polygon = regular_polygon(16);
  const MoebiusMap map = random_admissible_map(17, polygon, 0.5);
  const auto json = to_json(map);
  CHECK(json["stages"][0]["type"] == "inversion");
  CHECK(moebius_from_json(json) == map);
  CHECK(moebius_from_json(nlohmann::json::parse(json.dump())) == map);
  CHECK_THROWS_AS(moebius_from_json(nlohmann::json{{"stages", {{{"type", "shear"}}}}}), ParseError);
  CHECK_THROWS_AS(moebius_from_json(nlohmann::json::object()), ParseError);
}
