#include "knot_energy/curve.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <vector>

#include "knot_energy/errors.hpp"

namespace knot_energy {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::vector<double> parse_numbers(std::string_view args, std::string_view what) {
  std::vector<double> out;
  while (!args.empty()) {
    const auto comma = args.find(',');
    std::string_view token = args.substr(0, comma);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
      throw InvalidArgument("malformed parameter '" + std::string(token) + "' in curve " + std::string(what));
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    args.remove_prefix(comma + 1);
  }
  return out;
}

bool is_integer(double x) { return std::isfinite(x) && x == std::round(x); }

}  // namespace

ParametricCurve::ParametricCurve(std::size_t dim, Map position, Map velocity, std::string label)
    : dim_(dim), position_(std::move(position)), velocity_(std::move(velocity)), label_(std::move(label)) {
  if (dim_ < 2) throw InvalidArgument("curve dimension must be at least 2");
  if (!position_ || !velocity_) throw InvalidArgument("curve requires both position and velocity maps");
}

CurveDescriptor CurveDescriptor::ellipse(double a, double b) {
  CurveDescriptor d;
  d.kind = CurveKind::ellipse;
  d.a = a;
  d.b = b;
  return d;
}

CurveDescriptor CurveDescriptor::torus_knot(int p, int q, double major_radius, double minor_radius) {
  CurveDescriptor d;
  d.kind = CurveKind::torus_knot;
  d.p = p;
  d.q = q;
  d.major_radius = major_radius;
  d.minor_radius = minor_radius;
  return d;
}

CurveDescriptor CurveDescriptor::parse(std::string_view text) {
  if (text == "circle") return circle();
  if (text == "trefoil") return trefoil();

  auto open = text.find_first_of("(:");
  if (open == std::string_view::npos) throw InvalidArgument("unknown curve '" + std::string(text) + "'");
  const std::string_view name = text.substr(0, open);
  std::string_view args = text.substr(open + 1);
  if (text[open] == '(') {
    if (args.empty() || args.back() != ')') throw InvalidArgument("unbalanced parenthesis in curve '" + std::string(text) + "'");
    args.remove_suffix(1);
  }
  const auto values = parse_numbers(args, text);

  if (name == "ellipse") {
    if (values.size() != 2) throw InvalidArgument("ellipse takes two parameters (a,b)");
    return ellipse(values[0], values[1]);
  }
  if (name == "torus_knot") {
    if (values.size() != 4) throw InvalidArgument("torus_knot takes four parameters (p,q,R,r)");
    if (!is_integer(values[0]) || !is_integer(values[1])) throw InvalidArgument("torus_knot windings must be integers");
    return torus_knot(static_cast<int>(values[0]), static_cast<int>(values[1]), values[2], values[3]);
  }
  throw InvalidArgument("unknown curve '" + std::string(text) + "'");
}

std::string CurveDescriptor::to_string() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case CurveKind::circle: os << "circle"; break;
    case CurveKind::ellipse: os << "ellipse(" << a << ',' << b << ')'; break;
    case CurveKind::torus_knot: os << "torus_knot(" << p << ',' << q << ',' << major_radius << ',' << minor_radius << ')'; break;
  }
  return os.str();
}

ParametricCurve named_curve(const CurveDescriptor& d) {
  switch (d.kind) {
    case CurveKind::circle:
      return ParametricCurve(
                 3, [](double t) { return VecN{std::cos(two_pi * t), std::sin(two_pi * t), 0.0}; },
                 [](double t) { return VecN{-two_pi * std::sin(two_pi * t), two_pi * std::cos(two_pi * t), 0.0}; },
                 d.to_string());
    case CurveKind::ellipse: {
      if (!(d.a > 0.0) || !(d.b > 0.0)) throw InvalidArgument("ellipse semi-axes must be positive");
      const double a = d.a, b = d.b;
      return ParametricCurve(
          3, [a, b](double t) { return VecN{a * std::cos(two_pi * t), b * std::sin(two_pi * t), 0.0}; },
          [a, b](double t) { return VecN{-two_pi * a * std::sin(two_pi * t), two_pi * b * std::cos(two_pi * t), 0.0}; },
          d.to_string());
    }
    case CurveKind::torus_knot: {
      const double R = d.major_radius, r = d.minor_radius;
      if (!(r > 0.0) || !(R > r)) throw InvalidArgument("torus knot requires R > r > 0");
      if (d.p == 0 || d.q == 0 || std::gcd(d.p, d.q) != 1) throw InvalidArgument("torus knot requires gcd(p,q) = 1");
      const double wp = two_pi * d.p, wq = two_pi * d.q;
      return ParametricCurve(
          3,
          [=](double t) {
            const double c = R + r * std::cos(wq * t);
            return VecN{c * std::cos(wp * t), c * std::sin(wp * t), r * std::sin(wq * t)};
          },
          [=](double t) {
            const double c = R + r * std::cos(wq * t);
            const double dc = -r * wq * std::sin(wq * t);
            return VecN{dc * std::cos(wp * t) - c * wp * std::sin(wp * t), dc * std::sin(wp * t) + c * wp * std::cos(wp * t),
                        r * wq * std::cos(wq * t)};
          },
          d.to_string());
    }
  }
  throw InvalidArgument("unknown curve kind");
}

ParametricCurve reparametrize(const ParametricCurve& curve, std::function<double(double)> phi,
                              std::function<double(double)> dphi) {
  return ParametricCurve(
      curve.dim(), [curve, phi](double t) { return curve.position(phi(t)); },
      [curve, phi, dphi](double t) { return dphi(t) * curve.velocity(phi(t)); }, curve.label() + "∘φ");
}

bool BiLipschitzWitness::holds() const noexcept { return min_speed > 0.0 && lower > 1e-9 * upper; }

double circle_distance(double a, double b) noexcept {
  double d = std::fmod(std::abs(a - b), 1.0);
  return std::min(d, 1.0 - d);
}

BiLipschitzWitness bilipschitz_witness(const ParametricCurve& curve, std::size_t samples) {
  if (samples < 2) throw InvalidArgument("bi-Lipschitz witness needs at least two samples");
  std::vector<VecN> points;
  points.reserve(samples);
  BiLipschitzWitness w{std::numeric_limits<double>::infinity(), 0.0, std::numeric_limits<double>::infinity()};
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(samples);
    points.push_back(curve.position(t));
    w.min_speed = std::min(w.min_speed, curve.speed(t));
  }
  for (std::size_t a = 0; a < samples; ++a) {
    for (std::size_t b = a + 1; b < samples; ++b) {
      const std::size_t gap = std::min(b - a, samples - (b - a));
      const double ratio = dist(points[a], points[b]) * static_cast<double>(samples) / static_cast<double>(gap);
      w.lower = std::min(w.lower, ratio);
      w.upper = std::max(w.upper, ratio);
    }
  }
  return w;
}

}  // namespace knot_energy
