// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "features/pipeline.hpp"

#include <algorithm>

#include "common/error.hpp"
#include "common/numeric.hpp"

namespace nwa::features {

std::string_view to_string(DataKind kind) { return kind == DataKind::kRaw ? "raw" : "engineered"; }

std::optional<DataKind> parse_data_kind(std::string_view text) {
  if (text == "raw") return DataKind::kRaw;
  if (text == "engineered") return DataKind::kEngineered;
  return std::nullopt;
}

FeaturePipeline::FeaturePipeline(stream::StreamDescriptor descriptor, PipelineConfig config)
    : descriptor_(std::move(descriptor)), config_(config) {
  if (config_.tuning_s <= 0.0) fail(ErrorKind::kConfig, "tuning interval must be positive");
  k_ = calibration::calibration_length(descriptor_, config_.calibration);
  tuning_len_ = static_cast<std::uint64_t>(std::max<std::int64_t>(
      1, nint(config_.tuning_s * descriptor_.master_rate())));
  buffer_.reserve(k_);
}

const calibration::CalibrationResult& FeaturePipeline::calibration() const {
  if (!calibration_) fail(ErrorKind::kConfig, "calibration has not completed");
  return *calibration_;
}

void FeaturePipeline::finish_calibration() {
  calibration_ = calibration::calibrate(descriptor_, buffer_, config_.calibration);
  const auto lengths = calibration_->windows.lengths();
  channels_.resize(descriptor_.addresses.size());
  for (std::size_t c = 0; c < channels_.size(); ++c) {
    auto& ch = channels_[c];
    FeatureKey key{Metric::kRaw, WindowId::kQ1, descriptor_.addresses[c]};
    ch.raw_id = key.id();
    for (int w = 0; w < kWindowCount; ++w) {
      ch.windows[w] = WindowState(static_cast<std::size_t>(lengths[w]));
      key.window = static_cast<WindowId>(w);
      for (int m = 1; m <= 6; ++m) {
        key.metric = static_cast<Metric>(m);
        ch.ids[w][m - 1] = key.id();
      }
    }
  }
  if (config_.kind == DataKind::kEngineered) {
    for (const auto& slot : buffer_) {
      for (std::size_t c = 0; c < channels_.size(); ++c) {
        const auto& v = slot.values[c];
        if (!v) continue;
        for (auto& win : channels_[c].windows) win.update(v);
      }
    }
    for (auto& ch : channels_) {
      for (int w = 0; w < kWindowCount; ++w) ch.metrics[w] = compute_metrics(ch.windows[w]);
    }
  }
  buffer_.clear();
  buffer_.shrink_to_fit();
  phase_ = Phase::kTuning;
}

std::optional<FeatureVector> FeaturePipeline::push(const stream::RawSlot& slot) {
  if (slot.values.size() != descriptor_.addresses.size()) {
    fail(ErrorKind::kData, "slot " + std::to_string(slot.n) + " has " +
                               std::to_string(slot.values.size()) + " values, expected " +
                               std::to_string(descriptor_.addresses.size()));
  }
  ++seen_;
  if (phase_ == Phase::kCalibrating) {
    buffer_.push_back(slot);
    if (buffer_.size() >= k_) finish_calibration();
    return std::nullopt;
  }

  candidates_.n = slot.n;
  candidates_.values.clear();
  const bool engineered = config_.kind == DataKind::kEngineered;
  for (std::size_t c = 0; c < channels_.size(); ++c) {
    auto& ch = channels_[c];
    const auto& v = slot.values[c];
    if (v) {
      candidates_.values.emplace_back(ch.raw_id, *v);
      selection_.observe(ch.raw_id, *v);
    }
    if (!engineered) continue;
    for (int w = 0; w < kWindowCount; ++w) {
      if (v) {
        ch.windows[w].update(v);
        ch.metrics[w] = compute_metrics(ch.windows[w]);
      }
      if (!ch.metrics[w]) continue;
      for (int m = 1; m <= 6; ++m) {
        const double value = ch.metrics[w]->get(m);
        candidates_.values.emplace_back(ch.ids[w][m - 1], value);
        if (v) selection_.observe(ch.ids[w][m - 1], value);
      }
    }
  }
  candidates_.sort();

  if (phase_ == Phase::kTuning && ++tuned_ >= tuning_len_) {
    selection_.tune();
    phase_ = Phase::kRunning;
  }
  const auto n_init = static_cast<std::uint64_t>(calibration_->windows.longest());
  if (seen_ <= n_init) return std::nullopt;

  FeatureVector out;
  out.n = slot.n;
  out.values.reserve(candidates_.values.size());
  for (const auto& entry : candidates_.values) {
    if (selection_.selected(entry.first)) out.values.push_back(entry);
  }
  return out;
}

}  // namespace nwa::features
