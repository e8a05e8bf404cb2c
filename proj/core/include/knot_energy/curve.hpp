#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "knot_energy/vec.hpp"

namespace knot_energy {

/// Closed curve θ ↦ f(θ) on R/Z (period 1) with its exact derivative.
class ParametricCurve {
 public:
  using Map = std::function<VecN(double)>;

  ParametricCurve(std::size_t dim, Map position, Map velocity, std::string label = {});

  std::size_t dim() const noexcept { return dim_; }
  VecN position(double theta) const { return position_(theta); }
  VecN velocity(double theta) const { return velocity_(theta); }
  double speed(double theta) const { return norm(velocity_(theta)); }

  /// Descriptor text for named curves; used as a cache key by the harness.
  const std::string& label() const noexcept { return label_; }

 private:
  std::size_t dim_;
  Map position_;
  Map velocity_;
  std::string label_;
};

enum class CurveKind { circle, ellipse, torus_knot };

/// Named test curve. Textual forms: `circle`, `ellipse(a,b)`, `torus_knot(p,q,R,r)`
/// and the alias `trefoil` = torus_knot(2,3,2,0.5). `:` may replace the parentheses,
/// e.g. `ellipse:2,1`, to avoid shell quoting.
struct CurveDescriptor {
  CurveKind kind = CurveKind::circle;
  double a = 1.0;  // ellipse semi-axes
  double b = 1.0;
  int p = 2;  // torus knot windings
  int q = 3;
  double major_radius = 2.0;
  double minor_radius = 0.5;

  static CurveDescriptor circle() { return {}; }
  static CurveDescriptor ellipse(double a, double b);
  static CurveDescriptor torus_knot(int p, int q, double major_radius, double minor_radius);
  static CurveDescriptor trefoil() { return torus_knot(2, 3, 2.0, 0.5); }

  static CurveDescriptor parse(std::string_view text);
  std::string to_string() const;
};

/// Curves live in R^3 with period-1 parametrization:
///   circle      (cos 2πθ, sin 2πθ, 0)
///   ellipse     (a cos 2πθ, b sin 2πθ, 0)
///   torus_knot  ((R + r cos 2πqθ) cos 2πpθ, (R + r cos 2πqθ) sin 2πpθ, r sin 2πqθ)
/// Throws InvalidArgument for a, b <= 0, R <= r <= 0 or gcd(p, q) != 1.
ParametricCurve named_curve(const CurveDescriptor& descriptor);

/// f ∘ φ for an orientation-preserving diffeomorphism φ of R/Z (φ(θ+1) = φ(θ)+1).
ParametricCurve reparametrize(const ParametricCurve& curve, std::function<double(double)> phi,
                              std::function<double(double)> dphi);

/// Sample-grid bi-Lipschitz constants: lower·d(θa,θb) <= ||f(θa)-f(θb)|| <= upper·d(θa,θb)
/// over all pairs of the midpoint grid θ_k = (k + 1/2)/samples, d the distance on R/Z.
struct BiLipschitzWitness {
  double lower = 0.0;
  double upper = 0.0;
  double min_speed = 0.0;

  /// Embedded and immersed at grid scale: lower > 1e-9·upper and min_speed > 0.
  bool holds() const noexcept;
};

BiLipschitzWitness bilipschitz_witness(const ParametricCurve& curve, std::size_t samples);

/// Distance on R/Z.
double circle_distance(double a, double b) noexcept;

}  // namespace knot_energy
