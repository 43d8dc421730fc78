// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "features/feature_key.hpp"

#include <algorithm>
#include <array>

namespace nwa::features {
namespace {

constexpr std::array<std::string_view, kMetricCount> kMetricNames = {"raw", "Q1",  "Q2", "Q3",
                                                                     "avg", "std", "F"};
constexpr std::array<std::string_view, kWindowCount> kWindowNames = {"wQ1", "wQ2", "wQ3", "wAvg"};

}  // namespace

std::string_view to_string(Metric m) { return kMetricNames[static_cast<int>(m)]; }
std::string_view to_string(WindowId w) { return kWindowNames[static_cast<int>(w)]; }

FeatureKey FeatureKey::from_id(FeatureId id) {
  FeatureKey key;
  key.metric = static_cast<Metric>(id % kMetricCount);
  id /= kMetricCount;
  key.window = static_cast<WindowId>(id % kWindowCount);
  key.address = stream::SensorAddress::from_index(static_cast<int>(id / kWindowCount));
  return key;
}

std::string FeatureKey::str() const {
  std::string out(to_string(metric));
  out += ':';
  out += metric == Metric::kRaw ? std::string_view("-") : to_string(window);
  out += ':';
  out += address.str();
  return out;
}

std::optional<FeatureKey> FeatureKey::parse(std::string_view text) {
  const auto c1 = text.find(':');
  if (c1 == std::string_view::npos) return std::nullopt;
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) return std::nullopt;
  const auto m = std::find(kMetricNames.begin(), kMetricNames.end(), text.substr(0, c1));
  if (m == kMetricNames.end()) return std::nullopt;
  FeatureKey key;
  key.metric = static_cast<Metric>(m - kMetricNames.begin());
  const auto wname = text.substr(c1 + 1, c2 - c1 - 1);
  if (key.metric == Metric::kRaw) {
    if (wname != "-") return std::nullopt;
  } else {
    const auto w = std::find(kWindowNames.begin(), kWindowNames.end(), wname);
    if (w == kWindowNames.end()) return std::nullopt;
    key.window = static_cast<WindowId>(w - kWindowNames.begin());
  }
  auto addr = stream::SensorAddress::parse(text.substr(c2 + 1));
  if (!addr) return std::nullopt;
  key.address = *addr;
  return key;
}

const double* FeatureVector::find(FeatureId id) const {
  auto it = std::lower_bound(values.begin(), values.end(), id,
                             [](const auto& entry, FeatureId key) { return entry.first < key; });
  return it != values.end() && it->first == id ? &it->second : nullptr;
}

void FeatureVector::sort() {
  std::sort(values.begin(), values.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

}  // namespace nwa::features
