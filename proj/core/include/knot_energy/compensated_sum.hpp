#pragma once

#include <cmath>

namespace knot_energy {

/// Neumaier's variant of Kahan summation: the rounding error of every
/// addition is recovered exactly (TwoSum) and carried in `compensation`.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double value) noexcept {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  /// Ordered merge of a partial sum.
  CompensatedSum& operator+=(const CompensatedSum& other) noexcept {
    *this += other.sum_;
    compensation_ += other.compensation_;
    return *this;
  }

  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace knot_energy
