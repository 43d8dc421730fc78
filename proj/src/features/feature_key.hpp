// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stream/types.hpp"

namespace nwa::features {

/// Metric index: 0 is the raw channel value, 1..6 follow Q1, Q2, Q3, avg,
/// std, F.
enum class Metric : std::uint8_t { kRaw, kQ1, kQ2, kQ3, kAvg, kStd, kF };
enum class WindowId : std::uint8_t { kQ1, kQ2, kQ3, kAvg };

inline constexpr int kMetricCount = 7;
inline constexpr int kWindowCount = 4;

std::string_view to_string(Metric m);
std::string_view to_string(WindowId w);

using FeatureId = std::uint32_t;

inline constexpr FeatureId kFeatureIdUniverse =
    static_cast<FeatureId>(stream::kAddressUniverse * kWindowCount * kMetricCount);

struct FeatureKey {
  Metric metric = Metric::kRaw;
  WindowId window = WindowId::kQ1;  // ignored for raw keys
  stream::SensorAddress address;

  FeatureId id() const {
    const auto w = metric == Metric::kRaw ? 0u : static_cast<unsigned>(window);
    return (static_cast<unsigned>(address.index()) * kWindowCount + w) * kMetricCount +
           static_cast<unsigned>(metric);
  }
  static FeatureKey from_id(FeatureId id);

  /// `{metric}:{window}:{position}-{location}-{sensor}-{axis}`, raw keys use
  /// `raw:-:{address}`.
  std::string str() const;
  static std::optional<FeatureKey> parse(std::string_view text);

  friend bool operator==(const FeatureKey& a, const FeatureKey& b) { return a.id() == b.id(); }
};

inline std::string key_string(FeatureId id) { return FeatureKey::from_id(id).str(); }

/// Sparse per-slot sample: only defined and selected keys, sorted by id.
struct FeatureVector {
  std::uint64_t n = 0;
  std::vector<std::pair<FeatureId, double>> values;

  const double* find(FeatureId id) const;
  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
  /// Restores the sorted-by-id invariant after bulk insertion.
  void sort();
};

}  // namespace nwa::features
