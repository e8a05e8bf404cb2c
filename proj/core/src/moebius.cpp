#include "knot_energy/moebius.hpp"

#include <cmath>
#include <random>

#include "knot_energy/errors.hpp"

namespace knot_energy {

namespace {

std::size_t stage_dim(const MoebiusStage& stage) {
  return std::visit(
      [](const auto& s) -> std::size_t {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Translation>) return s.offset.dim();
        if constexpr (std::is_same_v<S, Orthogonal>) return s.n;
        if constexpr (std::is_same_v<S, Inversion>) return s.center.dim();
        return 0;  // scaling works in any dimension
      },
      stage);
}

void validate(const MoebiusStage& stage) {
  std::visit(
      [](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Scaling>) {
          if (!(s.factor > 0.0) || !std::isfinite(s.factor)) throw InvalidArgument("scaling factor must be positive");
        } else if constexpr (std::is_same_v<S, Inversion>) {
          if (!(s.radius > 0.0) || !std::isfinite(s.radius)) throw InvalidArgument("inversion radius must be positive");
        } else if constexpr (std::is_same_v<S, Orthogonal>) {
          if (s.n < 2 || s.matrix.size() != s.n * s.n) throw InvalidArgument("orthogonal stage needs an n×n matrix");
          for (std::size_t r = 0; r < s.n; ++r) {
            for (std::size_t c = 0; c < s.n; ++c) {
              double qtq = 0.0;
              for (std::size_t k = 0; k < s.n; ++k) qtq += s.matrix[k * s.n + r] * s.matrix[k * s.n + c];
              if (std::abs(qtq - (r == c ? 1.0 : 0.0)) > 1e-12) throw InvalidArgument("matrix is not orthogonal to 1e-12");
            }
          }
        }
      },
      stage);
}

VecN multiply(const Orthogonal& q, const VecN& x) {
  VecN out(q.n);
  for (std::size_t r = 0; r < q.n; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < q.n; ++c) s += q.matrix[r * q.n + c] * x[c];
    out[r] = s;
  }
  return out;
}

Orthogonal transpose(const Orthogonal& q) {
  Orthogonal t{q.n, std::vector<double>(q.matrix.size())};
  for (std::size_t r = 0; r < q.n; ++r) {
    for (std::size_t c = 0; c < q.n; ++c) t.matrix[c * q.n + r] = q.matrix[r * q.n + c];
  }
  return t;
}

VecN invert(const Inversion& inv, const VecN& x) {
  VecN y = x - inv.center;
  const double scale = inv.radius * inv.radius / norm2(y);
  return inv.center + scale * y;
}

VecN random_gaussian(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  VecN v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = normal(rng);
  return v;
}

Orthogonal random_orthogonal(std::mt19937_64& rng, std::size_t n) {
  // Modified Gram-Schmidt on a Gaussian matrix, run twice for orthogonality
  // at rounding level.
  std::vector<VecN> rows;
  while (rows.size() < n) {
    VecN v = random_gaussian(rng, n);
    for (int pass = 0; pass < 2; ++pass) {
      for (const VecN& u : rows) v -= dot(u, v) * u;
    }
    const double len = norm(v);
    if (len < 1e-6) continue;
    rows.push_back((1.0 / len) * v);
  }
  Orthogonal q{n, std::vector<double>(n * n)};
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) q.matrix[r * n + c] = rows[r][c];
  }
  return q;
}

VecN centroid(const ClosedPolygon& polygon) {
  VecN c(polygon.dim());
  for (const VecN& v : polygon.vertices()) c += v;
  return (1.0 / static_cast<double>(polygon.size())) * c;
}

double diameter_of(const std::vector<VecN>& points) {
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) best = std::max(best, dist2(points[i], points[j]));
  }
  return std::sqrt(best);
}

nlohmann::json vec_json(const VecN& v) { return std::vector<double>(v.coords().begin(), v.coords().end()); }

VecN vec_from_json(const nlohmann::json& j) { return VecN(j.get<std::vector<double>>()); }

}  // namespace

MoebiusMap::MoebiusMap(std::vector<MoebiusStage> stages) : stages_(std::move(stages)) {
  std::size_t n = 0;
  for (const auto& stage : stages_) {
    validate(stage);
    const std::size_t d = stage_dim(stage);
    if (d == 0) continue;
    if (n != 0 && d != n) throw InvalidArgument("all Möbius stages must share one dimension");
    n = d;
  }
}

bool MoebiusMap::has_inversion() const noexcept {
  for (const auto& stage : stages_) {
    if (std::holds_alternative<Inversion>(stage)) return true;
  }
  return false;
}

VecN MoebiusMap::apply(const VecN& p, double pole_tolerance) const {
  VecN x = p;
  for (std::size_t k = 0; k < stages_.size(); ++k) {
    const auto& stage = stages_[k];
    const std::size_t n = stage_dim(stage);
    if (n != 0 && n != x.dim()) throw InvalidArgument("point dimension does not match Möbius stage " + std::to_string(k));
    if (const auto* t = std::get_if<Translation>(&stage)) {
      x += t->offset;
    } else if (const auto* s = std::get_if<Scaling>(&stage)) {
      x *= s->factor;
    } else if (const auto* q = std::get_if<Orthogonal>(&stage)) {
      x = multiply(*q, x);
    } else if (const auto* inv = std::get_if<Inversion>(&stage)) {
      const double d = dist(x, inv->center);
      if (d <= pole_tolerance) throw PoleError(k, d);
      x = invert(*inv, x);
    }
  }
  return x;
}

std::pair<VecN, VecN> MoebiusMap::pushforward(const VecN& p, const VecN& v, double pole_tolerance) const {
  require_same_dim(p, v);
  VecN x = p;
  VecN dx = v;
  for (std::size_t k = 0; k < stages_.size(); ++k) {
    const auto& stage = stages_[k];
    const std::size_t n = stage_dim(stage);
    if (n != 0 && n != x.dim()) throw InvalidArgument("point dimension does not match Möbius stage " + std::to_string(k));
    if (const auto* t = std::get_if<Translation>(&stage)) {
      x += t->offset;
    } else if (const auto* s = std::get_if<Scaling>(&stage)) {
      x *= s->factor;
      dx *= s->factor;
    } else if (const auto* q = std::get_if<Orthogonal>(&stage)) {
      x = multiply(*q, x);
      dx = multiply(*q, dx);
    } else if (const auto* inv = std::get_if<Inversion>(&stage)) {
      VecN y = x - inv->center;
      const double s2 = norm2(y);
      const double d = std::sqrt(s2);
      if (d <= pole_tolerance) throw PoleError(k, d);
      const double r2 = inv->radius * inv->radius;
      // d/dx [r² y/|y|²] v = r² (v/|y|² - 2 (y·v) y/|y|⁴)
      dx = (r2 / s2) * dx - (2.0 * r2 * dot(y, dx) / (s2 * s2)) * y;
      x = inv->center + (r2 / s2) * y;
    }
  }
  return {std::move(x), std::move(dx)};
}

MoebiusMap MoebiusMap::inverse() const {
  std::vector<MoebiusStage> out;
  out.reserve(stages_.size());
  for (auto it = stages_.rbegin(); it != stages_.rend(); ++it) {
    std::visit(
        [&](const auto& s) {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, Translation>) out.emplace_back(Translation{-1.0 * s.offset});
          if constexpr (std::is_same_v<S, Scaling>) out.emplace_back(Scaling{1.0 / s.factor});
          if constexpr (std::is_same_v<S, Orthogonal>) out.emplace_back(transpose(s));
          if constexpr (std::is_same_v<S, Inversion>) out.emplace_back(s);
        },
        *it);
  }
  return MoebiusMap(std::move(out));
}

std::string MoebiusMap::kind() const {
  if (stages_.empty()) return "identity";
  return has_inversion() ? "inversive" : "similarity";
}

bool operator==(const Translation& a, const Translation& b) { return a.offset == b.offset; }
bool operator==(const Scaling& a, const Scaling& b) { return a.factor == b.factor; }
bool operator==(const Orthogonal& a, const Orthogonal& b) { return a.n == b.n && a.matrix == b.matrix; }
bool operator==(const Inversion& a, const Inversion& b) { return a.center == b.center && a.radius == b.radius; }
bool operator==(const MoebiusMap& a, const MoebiusMap& b) { return a.stages_ == b.stages_; }

double cross_ratio(const VecN& a, const VecN& b, const VecN& c, const VecN& d) {
  require_same_dim(a, b);
  require_same_dim(a, c);
  require_same_dim(a, d);
  const double denominator = dist(a, b) * dist(c, d);
  if (!(denominator > 0.0)) throw InvalidArgument("cross ratio undefined: a = b or c = d");
  return dist(a, c) * dist(b, d) / denominator;
}

ClosedPolygon apply_polygon(const MoebiusMap& map, const ClosedPolygon& polygon, double relative_pole_tolerance) {
  std::vector<VecN> points = polygon.vertices();
  const auto& stages = map.stages();
  for (std::size_t k = 0; k < stages.size(); ++k) {
    const auto& stage = stages[k];
    if (const auto* inv = std::get_if<Inversion>(&stage)) {
      require_same_dim(points.front(), inv->center);
      const double tolerance = relative_pole_tolerance * diameter_of(points);
      for (std::size_t i = 0; i < points.size(); ++i) {
        const double d = dist(points[i], inv->center);
        if (d <= tolerance) throw PoleError(k, d, i);
      }
    }
    const MoebiusMap single({stage});
    for (VecN& p : points) p = single.apply(p, 0.0);
  }
  return ClosedPolygon(std::move(points));
}

ParametricCurve apply_curve(const MoebiusMap& map, const ParametricCurve& curve) {
  return ParametricCurve(
      curve.dim(), [map, curve](double t) { return map.apply(curve.position(t)); },
      [map, curve](double t) { return map.pushforward(curve.position(t), curve.velocity(t)).second; },
      "T(" + curve.label() + ")");
}

MoebiusMap random_admissible_map(std::uint64_t seed, const ClosedPolygon& polygon, double margin) {
  if (!(margin > 0.0)) throw InvalidArgument("margin must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = polygon.dim();
  const double diameter = polygon.diameter();
  const VecN center_of_mass = centroid(polygon);
  double spread_radius = 0.0;
  for (const VecN& v : polygon.vertices()) spread_radius = std::max(spread_radius, dist(v, center_of_mass));

  VecN direction = random_gaussian(rng, n);
  direction *= 1.0 / norm(direction);
  // Every vertex is within spread_radius of the centroid, so it is at least
  // margin·diameter·(1 + u) from the center.
  const double offset = spread_radius + margin * diameter * (1.0 + unit(rng));
  const VecN inversion_center = center_of_mass + offset * direction;
  const double radius = offset * std::exp(unit(rng) - 0.5);
  const double factor = std::exp(2.0 * unit(rng) - 1.0);
  Orthogonal rotation = random_orthogonal(rng, n);
  VecN shift = diameter * random_gaussian(rng, n);

  return MoebiusMap({Inversion{inversion_center, radius}, Scaling{factor}, std::move(rotation), Translation{std::move(shift)}});
}

MoebiusMap random_similarity(std::uint64_t seed, const ClosedPolygon& polygon) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = polygon.dim();
  const double factor = std::exp(2.0 * unit(rng) - 1.0);
  Orthogonal rotation = random_orthogonal(rng, n);
  VecN shift = polygon.diameter() * random_gaussian(rng, n);
  return MoebiusMap({Scaling{factor}, std::move(rotation), Translation{std::move(shift)}});
}

nlohmann::json to_json(const MoebiusMap& map) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& stage : map.stages()) {
    std::visit(
        [&](const auto& s) {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, Translation>) {
            stages.push_back({{"type", "translation"}, {"offset", vec_json(s.offset)}});
          } else if constexpr (std::is_same_v<S, Scaling>) {
            stages.push_back({{"type", "scaling"}, {"factor", s.factor}});
          } else if constexpr (std::is_same_v<S, Orthogonal>) {
            nlohmann::json rows = nlohmann::json::array();
            for (std::size_t r = 0; r < s.n; ++r) {
              rows.push_back(std::vector<double>(s.matrix.begin() + static_cast<std::ptrdiff_t>(r * s.n),
                                                 s.matrix.begin() + static_cast<std::ptrdiff_t>((r + 1) * s.n)));
            }
            stages.push_back({{"type", "orthogonal"}, {"matrix", rows}});
          } else {
            stages.push_back({{"type", "inversion"}, {"center", vec_json(s.center)}, {"radius", s.radius}});
          }
        },
        stage);
  }
  return {{"stages", stages}};
}

MoebiusMap moebius_from_json(const nlohmann::json& json) {
  try {
    std::vector<MoebiusStage> stages;
    for (const auto& s : json.at("stages")) {
      const auto type = s.at("type").get<std::string>();
      if (type == "translation") {
        stages.emplace_back(Translation{vec_from_json(s.at("offset"))});
      } else if (type == "scaling") {
        stages.emplace_back(Scaling{s.at("factor").get<double>()});
      } else if (type == "orthogonal") {
        const auto rows = s.at("matrix").get<std::vector<std::vector<double>>>();
        Orthogonal q{rows.size(), {}};
        for (const auto& row : rows) {
          if (row.size() != q.n) throw InvalidArgument("orthogonal matrix must be square");
          q.matrix.insert(q.matrix.end(), row.begin(), row.end());
        }
        stages.emplace_back(std::move(q));
      } else if (type == "inversion") {
        stages.emplace_back(Inversion{vec_from_json(s.at("center")), s.at("radius").get<double>()});
      } else {
        throw ParseError("unknown Möbius stage type '" + type + "'");
      }
    }
    return MoebiusMap(std::move(stages));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed Möbius map JSON: ") + e.what());
  }
}

}  // namespace knot_energy
