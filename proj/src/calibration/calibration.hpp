// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "stream/types.hpp"

namespace nwa::calibration {

struct CalibrationConfig {
  double duration_s = 90.0;
};

/// The four sliding-window lengths shared by every channel.
struct WindowSet {
  std::int64_t q1 = 0;
  std::int64_t q2 = 0;
  std::int64_t q3 = 0;
  std::int64_t avg = 0;

  std::array<std::int64_t, 4> lengths() const { return {q1, q2, q3, avg}; }
  std::int64_t longest() const;

  friend bool operator==(const WindowSet&, const WindowSet&) = default;
};

struct MinimaSpacing {
  stream::SensorAddress address;
  std::int64_t v = 0;
};

struct CalibrationResult {
  WindowSet windows;
  std::uint64_t k = 0;  // calibration length in master slots
  std::vector<MinimaSpacing> spacings;
  std::vector<stream::SensorAddress> excluded;
};

/// Calibration length in master slots; at least 3.
std::uint64_t calibration_length(const stream::StreamDescriptor& d, const CalibrationConfig& config);

/// Distance between the first two strict local minima of `signal`
/// (x[n-1] > x[n] < x[n+1]). Throws kCalibrationInsufficient naming
/// `channel` when fewer than two exist.
std::int64_t find_minima_spacing(std::span<const double> signal, std::string_view channel = "");

/// Quartile / mean window lengths from the spacing set, scaled by
/// nint(2 r_max / r_min). Needs at least four spacings.
WindowSet derive_windows(std::span<const std::int64_t> spacings, double r_min, double r_max);

/// Runs both steps over the first `calibration_length` slots. Channels with
/// too few minima are excluded as long as four or more remain.
CalibrationResult calibrate(const stream::StreamDescriptor& d, std::span<const stream::RawSlot> slots,
                            const CalibrationConfig& config = {});

}  // namespace nwa::calibration
