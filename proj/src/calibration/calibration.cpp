// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "calibration/calibration.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "common/error.hpp"
#include "common/numeric.hpp"

namespace nwa::calibration {

std::int64_t WindowSet::longest() const { return std::max({q1, q2, q3, avg}); }

std::uint64_t calibration_length(const stream::StreamDescriptor& d, const CalibrationConfig& config) {
  const auto k = nint(config.duration_s * d.master_rate());
  if (k < 3) fail(ErrorKind::kConfig, "calibration needs at least 3 slots");
  return static_cast<std::uint64_t>(k);
}

std::int64_t find_minima_spacing(std::span<const double> signal, std::string_view channel) {
  std::int64_t first = -1;
  for (std::size_t n = 1; n + 1 < signal.size(); ++n) {
    if (signal[n - 1] > signal[n] && signal[n] < signal[n + 1]) {
      if (first < 0) {
        first = static_cast<std::int64_t>(n);
      } else {
        return static_cast<std::int64_t>(n) - first;
      }
    }
  }
  fail(ErrorKind::kCalibrationInsufficient,
       "fewer than two local minima in calibration signal" +
           (channel.empty() ? std::string() : " of " + std::string(channel)));
}

WindowSet derive_windows(std::span<const std::int64_t> spacings, double r_min, double r_max) {
  if (spacings.size() < 4) {
    fail(ErrorKind::kCalibrationInsufficient,
         "window derivation needs at least 4 channel spacings, got " + std::to_string(spacings.size()));
  }
  if (!(r_min > 0.0) || r_min > r_max) fail(ErrorKind::kConfig, "need 0 < r_min <= r_max");

  std::vector<std::int64_t> sorted(spacings.begin(), spacings.end());
  std::sort(sorted.begin(), sorted.end());
  const auto count = static_cast<double>(sorted.size());
  const std::int64_t scale = nint(2.0 * r_max / r_min);
  auto quartile = [&](int j) {
    const auto idx = std::min<std::int64_t>(nint(j * count / 4.0), sorted.size() - 1);
    return scale * sorted[idx];
  };
  const double mean =
      static_cast<double>(std::accumulate(sorted.begin(), sorted.end(), std::int64_t{0})) / count;
  return {quartile(1), quartile(2), quartile(3), scale * nint(mean)};
}

CalibrationResult calibrate(const stream::StreamDescriptor& d, std::span<const stream::RawSlot> slots,
                            const CalibrationConfig& config) {
  CalibrationResult result;
  result.k = calibration_length(d, config);
  if (slots.size() < result.k) {
    fail(ErrorKind::kData, "stream shorter than the calibration stage (" + std::to_string(result.k) +
                               " slots)");
  }
  const auto window = slots.first(result.k);

  std::vector<std::int64_t> values;
  std::vector<double> signal;
  for (std::size_t ch = 0; ch < d.addresses.size(); ++ch) {
    signal.clear();
    for (const auto& slot : window) {
      if (slot.values[ch]) signal.push_back(*slot.values[ch]);
    }
    try {
      const auto v = find_minima_spacing(signal, d.addresses[ch].str());
      result.spacings.push_back({d.addresses[ch], v});
      values.push_back(v);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kCalibrationInsufficient) throw;
      result.excluded.push_back(d.addresses[ch]);
    }
  }
  result.windows = derive_windows(values, d.r_min, d.r_max);
  return result;
}

}  // namespace nwa::calibration
