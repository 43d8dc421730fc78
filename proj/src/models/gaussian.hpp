// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <numbers>

namespace nwa::models {

inline constexpr double kVarianceFloor = 1e-9;

inline double gaussian_log_pdf(double x, double mean, double variance) {
  const double var = variance < kVarianceFloor ? kVarianceFloor : variance;
  const double d = x - mean;
  return -0.5 * std::log(2.0 * std::numbers::pi * var) - d * d / (2.0 * var);
}

inline double gaussian_cdf(double x, double mean, double stddev) {
  return 0.5 * std::erfc(-(x - mean) / (stddev * std::numbers::sqrt2));
}

}  // namespace nwa::models
