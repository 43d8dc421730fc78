// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "common/numeric.hpp"
#include "features/feature_key.hpp"

namespace nwa::features {

/// Online per-key variance with a frozen threshold t² once tuning ends.
/// A key is selected iff its variance is strictly greater than t².
class SelectionState {
 public:
  SelectionState();

  void observe(FeatureId id, double value);

  bool defined(FeatureId id) const { return moments_[id].weight() > 0.0; }
  double variance(FeatureId id) const { return moments_[id].variance(); }
  double threshold() const { return threshold_; }
  bool frozen() const { return frozen_; }
  bool selected(FeatureId id) const { return defined(id) && variance(id) > threshold_; }

  /// Sets t² to the median variance over defined keys and freezes it.
  /// Throws kConfig when no key is defined.
  double tune();
  /// Overrides t² (does not freeze).
  void set_threshold(double t2) { threshold_ = t2; }

  std::vector<FeatureId> defined_keys() const { return keys_; }
  std::vector<FeatureId> selected_keys() const;

 private:
  std::vector<RunningMoments> moments_;
  std::vector<FeatureId> keys_;  // in first-seen order
  double threshold_ = 0.0;
  bool frozen_ = false;
};

/// Median with mean-of-middle-pair for even counts.
double median(std::vector<double> values);

}  // namespace nwa::features
