// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "features/selection.hpp"

#include <algorithm>

#include "common/error.hpp"

namespace nwa::features {

SelectionState::SelectionState() : moments_(kFeatureIdUniverse) {}

void SelectionState::observe(FeatureId id, double value) {
  auto& m = moments_[id];
  if (m.weight() == 0.0) keys_.push_back(id);
  m.add(value);
}

double SelectionState::tune() {
  if (keys_.empty()) fail(ErrorKind::kConfig, "threshold tuning saw no defined feature keys");
  std::vector<double> vars;
  vars.reserve(keys_.size());
  for (FeatureId id : keys_) vars.push_back(variance(id));
  threshold_ = median(std::move(vars));
  frozen_ = true;
  return threshold_;
}

std::vector<FeatureId> SelectionState::selected_keys() const {
  std::vector<FeatureId> out;
  for (FeatureId id : keys_) {
    if (selected(id)) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) fail(ErrorKind::kConfig, "median of empty set");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace nwa::features
