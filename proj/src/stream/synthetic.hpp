// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "stream/types.hpp"

namespace nwa::stream {

struct ScheduleSegment {
  ClassLabel label = 0;
  double duration_s = 0.0;
};

/// Movement regime of one practice class. Amplitudes are indexed by
/// location (wrist, ankle, pole).
struct Regime {
  double cadence_hz = 0.8;
  std::array<double, 3> amplitude = {1.0, 1.0, 1.0};
  bool pole_contact_spikes = true;
  double pole_drag_noise = 0.0;
};

struct SyntheticConfig {
  double accel_rate_hz = 12.5;
  double gyro_rate_hz = 25.0;
  double mag_rate_hz = 10.0;
  double noise_stddev = 0.03;
  bool rotate_axes = true;
  /// c0 correct (full arm swing, planted poles), c1 cheating (fast short
  /// steps, poles carried), c2 incorrect (slow gait, dragged poles).
  std::array<Regime, 3> regimes = {{
      {0.8, {1.0, 0.6, 1.0}, true, 0.0},
      {1.6, {0.12, 0.2, 0.06}, false, 0.0},
      {0.5, {0.04, 0.04, 0.03}, false, 0.08},
  }};
};

/// Deterministic three-class stream over the 54 wrist/ankle/pole channels.
/// The master clock runs at the fastest sensor rate; slower sensors leave
/// absent values between their samples.
Stream generate_synthetic(std::uint64_t seed, std::span<const ScheduleSegment> schedule,
                          const SyntheticConfig& config = {});

/// Parses `c0:120,c1:60,...` into segments.
std::vector<ScheduleSegment> parse_schedule(std::string_view text);

/// Default session used by the CLI: 500 s, c0 / c1 / c2.
std::vector<ScheduleSegment> default_schedule();

}  // namespace nwa::stream
