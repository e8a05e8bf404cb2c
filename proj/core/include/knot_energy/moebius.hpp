#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "knot_energy/curve.hpp"
#include "knot_energy/polygon.hpp"
#include "knot_energy/vec.hpp"

namespace knot_energy {

struct Translation {
  VecN offset;
};

struct Scaling {
  double factor = 1.0;
};

/// Row-major n×n orthogonal matrix.
struct Orthogonal {
  std::size_t n = 0;
  std::vector<double> matrix;
};

/// x ↦ c + r²(x - c)/||x - c||².
struct Inversion {
  VecN center;
  double radius = 1.0;
};

using MoebiusStage = std::variant<Translation, Scaling, Orthogonal, Inversion>;

inline constexpr double default_pole_tolerance = 1e-12;

/// Composition of similarities and sphere inversions of R^n, stored in
/// application order. Evaluation never passes through the point at infinity:
/// a point within the pole tolerance of an inversion center is rejected.
class MoebiusMap {
 public:
  MoebiusMap() = default;
  explicit MoebiusMap(std::vector<MoebiusStage> stages);

  const std::vector<MoebiusStage>& stages() const noexcept { return stages_; }
  bool empty() const noexcept { return stages_.empty(); }
  bool has_inversion() const noexcept;

  /// Staged image of p. Throws PoleError naming the stage when an intermediate
  /// point comes within `pole_tolerance` of an inversion center.
  VecN apply(const VecN& p, double pole_tolerance = default_pole_tolerance) const;

  /// Image of p together with the differential dT_p applied to v.
  std::pair<VecN, VecN> pushforward(const VecN& p, const VecN& v, double pole_tolerance = default_pole_tolerance) const;

  /// Algebraic inverse: stages reversed, each primitive inverted.
  MoebiusMap inverse() const;

  /// Short tag: "identity", "similarity" or "inversive".
  std::string kind() const;

  friend bool operator==(const MoebiusMap& a, const MoebiusMap& b);

 private:
  std::vector<MoebiusStage> stages_;
};

bool operator==(const Translation& a, const Translation& b);
bool operator==(const Scaling& a, const Scaling& b);
bool operator==(const Orthogonal& a, const Orthogonal& b);
bool operator==(const Inversion& a, const Inversion& b);

/// ||a - c||·||b - d|| / (||a - b||·||c - d||). Zero when a = c or b = d;
/// InvalidArgument when a = b or c = d.
double cross_ratio(const VecN& a, const VecN& b, const VecN& c, const VecN& d);

/// Vertex-wise image. The pole tolerance at each stage is
/// `relative_pole_tolerance` × diameter of the stage's input vertex set; the
/// PoleError reports the offending vertex index.
ClosedPolygon apply_polygon(const MoebiusMap& map, const ClosedPolygon& polygon,
                            double relative_pole_tolerance = default_pole_tolerance);

/// T ∘ f with exact pushforward velocity dT(f'(θ)).
ParametricCurve apply_curve(const MoebiusMap& map, const ParametricCurve& curve);

/// Translation ∘ Orthogonal ∘ Scaling ∘ Inversion, deterministic in `seed`.
/// The inversion center lies at distance >= margin × diameter from every vertex.
MoebiusMap random_admissible_map(std::uint64_t seed, const ClosedPolygon& polygon, double margin);

/// Translation ∘ Orthogonal ∘ Scaling with no inversion, deterministic in `seed`.
MoebiusMap random_similarity(std::uint64_t seed, const ClosedPolygon& polygon);

/// {"stages": [{"type": "inversion", "center": [...], "radius": r}, ...]} in application order.
nlohmann::json to_json(const MoebiusMap& map);
MoebiusMap moebius_from_json(const nlohmann::json& json);

}  // namespace knot_energy
