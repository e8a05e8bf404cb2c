#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace knot_energy {

/// Point or vector in R^n, n >= 2, finite coordinates.
class VecN {
 public:
  VecN() = default;
  /// Zero vector of dimension `n`.
  explicit VecN(std::size_t n);
  VecN(std::initializer_list<double> coords);
  explicit VecN(std::vector<double> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t k) const noexcept { return coords_[k]; }
  double& operator[](std::size_t k) noexcept { return coords_[k]; }
  std::span<const double> coords() const noexcept { return coords_; }

  /// Unit basis vector e_k in R^n.
  static VecN basis(std::size_t n, std::size_t k);

  VecN& operator+=(const VecN& other);
  VecN& operator-=(const VecN& other);
  VecN& operator*=(double s) noexcept;

  friend bool operator==(const VecN&, const VecN&) = default;

 private:
  std::vector<double> coords_;
};

VecN operator+(VecN a, const VecN& b);
VecN operator-(VecN a, const VecN& b);
VecN operator*(double s, VecN a);
VecN operator*(VecN a, double s);

// The helpers below do not check dimensions; callers in hot loops pass
// vectors already known to agree. Checked entry points throw InvalidArgument.
double dot(const VecN& a, const VecN& b) noexcept;
double norm2(const VecN& a) noexcept;
double norm(const VecN& a) noexcept;
double dist2(const VecN& a, const VecN& b) noexcept;
double dist(const VecN& a, const VecN& b) noexcept;

/// Throws InvalidArgument unless a and b share a dimension.
void require_same_dim(const VecN& a, const VecN& b);

/// Inner product on the second exterior power:
/// <a^b, c^d> = (a.c)(b.d) - (a.d)(b.c).
double wedge_inner(const VecN& a, const VecN& b, const VecN& c, const VecN& d);

}  // namespace knot_energy
