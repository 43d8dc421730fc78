// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>

#include "features/window.hpp"

namespace nwa::features {

struct WindowMetrics {
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;
  double avg = 0.0;
  double std = 0.0;
  double f = 0.0;

  double get(int metric_index) const;  // 1..6
};

/// Maximum modulus over all DFT bins (DC included) of `x`, length-|x| FFT.
double max_dft_modulus(std::span<const double> x);

/// Metrics over a full window; nullopt while the window is filling.
std::optional<WindowMetrics> compute_metrics(const WindowState& state);

/// Metrics over an explicit buffer of length w (oldest first).
WindowMetrics compute_metrics(std::span<const double> buffer);

}  // namespace nwa::features
