// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "calibration/calibration.hpp"
#include "features/feature_key.hpp"
#include "features/metrics.hpp"
#include "features/selection.hpp"
#include "features/window.hpp"
#include "stream/types.hpp"

namespace nwa::features {

enum class DataKind { kRaw, kEngineered };

std::string_view to_string(DataKind kind);
std::optional<DataKind> parse_data_kind(std::string_view text);

struct PipelineConfig {
  DataKind kind = DataKind::kEngineered;
  calibration::CalibrationConfig calibration;
  double tuning_s = 60.0;
};

enum class Phase { kCalibrating, kTuning, kRunning };

/// Per-stream feature engine. Buffers the calibration interval, derives the
/// window set, primes every window with the buffered samples, then emits a
/// selected FeatureVector for each later slot.
class FeaturePipeline {
 public:
  FeaturePipeline(stream::StreamDescriptor descriptor, PipelineConfig config);

  /// Consumes one slot; returns the Φ-selected vector once past calibration.
  std::optional<FeatureVector> push(const stream::RawSlot& slot);

  Phase phase() const { return phase_; }
  bool calibrated() const { return calibration_.has_value(); }
  const calibration::CalibrationResult& calibration() const;
  const SelectionState& selection() const { return selection_; }
  const stream::StreamDescriptor& descriptor() const { return descriptor_; }
  const PipelineConfig& config() const { return config_; }

  std::uint64_t calibration_slots() const { return k_; }
  std::uint64_t tuning_slots() const { return tuning_len_; }
  std::uint64_t slots_seen() const { return seen_; }

  /// Every defined key at the last pushed slot, before Φ.
  const FeatureVector& last_candidates() const { return candidates_; }

 private:
  struct Channel {
    FeatureId raw_id = 0;
    std::array<WindowState, kWindowCount> windows;
    std::array<std::optional<WindowMetrics>, kWindowCount> metrics;
    std::array<std::array<FeatureId, 6>, kWindowCount> ids{};
  };

  void finish_calibration();
  void advance_windows(const stream::RawSlot& slot, std::vector<bool>* fresh);

  stream::StreamDescriptor descriptor_;
  PipelineConfig config_;
  Phase phase_ = Phase::kCalibrating;
  std::uint64_t k_ = 0;
  std::uint64_t tuning_len_ = 0;
  std::uint64_t seen_ = 0;
  std::uint64_t tuned_ = 0;
  std::vector<stream::RawSlot> buffer_;
  std::optional<calibration::CalibrationResult> calibration_;
  std::vector<Channel> channels_;
  SelectionState selection_;
  FeatureVector candidates_;
  std::vector<bool> fresh_;
};

}  // namespace nwa::features
