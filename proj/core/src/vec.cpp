#include "knot_energy/vec.hpp"

#include <cmath>
#include <string>

#include "knot_energy/errors.hpp"

namespace knot_energy {

namespace {

void validate(const std::vector<double>& coords) {
  if (coords.size() < 2) throw InvalidArgument("vector dimension must be at least 2");
  for (double x : coords) {
    if (!std::isfinite(x)) throw InvalidArgument("vector coordinates must be finite");
  }
}

}  // namespace

VecN::VecN(std::size_t n) : coords_(n, 0.0) {
  if (n < 2) throw InvalidArgument("vector dimension must be at least 2");
}

VecN::VecN(std::initializer_list<double> coords) : coords_(coords) { validate(coords_); }

VecN::VecN(std::vector<double> coords) : coords_(std::move(coords)) { validate(coords_); }

VecN VecN::basis(std::size_t n, std::size_t k) {
  if (k >= n) throw InvalidArgument("basis index out of range");
  VecN e(n);
  e[k] = 1.0;
  return e;
}

VecN& VecN::operator+=(const VecN& other) {
  require_same_dim(*this, other);
  for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] += other.coords_[k];
  return *this;
}

VecN& VecN::operator-=(const VecN& other) {
  require_same_dim(*this, other);
  for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] -= other.coords_[k];
  return *this;
}

VecN& VecN::operator*=(double s) noexcept {
  for (double& x : coords_) x *= s;
  return *this;
}

VecN operator+(VecN a, const VecN& b) { return a += b; }
VecN operator-(VecN a, const VecN& b) { return a -= b; }
VecN operator*(double s, VecN a) { return a *= s; }
VecN operator*(VecN a, double s) { return a *= s; }

double dot(const VecN& a, const VecN& b) noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) s += a[k] * b[k];
  return s;
}

double norm2(const VecN& a) noexcept { return dot(a, a); }

double norm(const VecN& a) noexcept { return std::sqrt(norm2(a)); }

double dist2(const VecN& a, const VecN& b) noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

double dist(const VecN& a, const VecN& b) noexcept { return std::sqrt(dist2(a, b)); }

void require_same_dim(const VecN& a, const VecN& b) {
  if (a.dim() != b.dim()) {
    throw InvalidArgument("dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
}

double wedge_inner(const VecN& a, const VecN& b, const VecN& c, const VecN& d) {
  require_same_dim(a, b);
  require_same_dim(a, c);
  require_same_dim(a, d);
  return dot(a, c) * dot(b, d) - dot(a, d) * dot(b, c);
}

}  // namespace knot_energy
