// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>

namespace nwa {

/// Nearest integer, halves rounded away from zero.
inline std::int64_t nint(double x) { return static_cast<std::int64_t>(std::round(x)); }

/// Numerically stable running mean / variance (Welford), optionally weighted.
class RunningMoments {
 public:
  void add(double x, double weight = 1.0) {
    if (weight <= 0.0) return;
    weight_ += weight;
    const double delta = x - mean_;
    mean_ += delta * weight / weight_;
    m2_ += weight * delta * (x - mean_);
  }

  double weight() const { return weight_; }
  double mean() const { return mean_; }
  double m2() const { return m2_; }

  /// Sample variance (ddof = 1); zero until more than one unit of weight.
  double variance() const {
    return weight_ > 1.0 ? (m2_ > 0.0 ? m2_ / (weight_ - 1.0) : 0.0) : 0.0;
  }

 private:
  double weight_ = 0.0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace nwa
