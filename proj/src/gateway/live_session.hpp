// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evaluation/prequential.hpp"
#include "explain/explain.hpp"
#include "features/pipeline.hpp"
#include "gateway/broadcaster.hpp"
#include "gateway/run_config.hpp"
#include "stream/types.hpp"

namespace nwa::gateway {

using features::FeatureId;
using stream::ClassLabel;

inline constexpr double kDisplayRateHz = 25.0;

struct InboundTag {
  ClassLabel label = 0;
  std::optional<std::uint64_t> slot;
  std::string source;
};

/// Parses `{"type":"tag","label":"c0","slot":int?,"source":"..."}`; throws
/// kData with a message fit for an error event.
InboundTag parse_inbound_tag(std::string_view text, std::size_t n_classes);

std::string error_event(std::string_view message);

/// Replays one stream through the pipeline, the evaluator and the explainer,
/// publishing wire events. All engine state is owned by the thread calling
/// `advance`; `submit_tag` and `request_explanation` are safe from any thread.
class LiveSession {
 public:
  using Clock = std::chrono::steady_clock;

  LiveSession(const RunConfig& config, stream::Stream stream, Broadcaster& out);

  /// Queues a tag for the worker; returns false when the session has ended.
  bool submit_tag(InboundTag tag);
  void request_explanation();

  /// Publishes the opening metrics event.
  void begin();
  /// Processes one slot; returns false once the stream is exhausted.
  bool advance();
  /// Replays at the configured speed until the end or `stop`.
  void run(const std::atomic<bool>* stop = nullptr);

  bool finished() const { return finished_.load(); }
  std::uint64_t slots_processed() const { return cursor_; }
  const stream::Stream& stream() const { return stream_; }
  const evaluation::PrequentialEvaluator& evaluator() const { return eval_; }
  const features::FeaturePipeline& pipeline() const { return pipeline_; }
  evaluation::ScenarioSpec spec() const { return spec_; }
  /// The opening event for a new connection.
  std::string hello(std::uint64_t client) const;

 private:
  void drain_inbound();
  void publish_slot(const stream::RawSlot& slot);
  void publish_prediction(const evaluation::PredictionRecord& rec);
  void publish_explanation(std::uint64_t n, const features::FeatureVector& x);
  void publish_metrics(std::string_view reason);
  void finish();
  const models::AdaptiveRandomForest* forest() const;

  RunConfig config_;
  stream::Stream stream_;
  Broadcaster& out_;
  evaluation::ScenarioSpec spec_;
  std::size_t n_classes_;
  features::FeaturePipeline pipeline_;
  evaluation::PrequentialEvaluator eval_;
  explain::Explainer explainer_;

  std::uint64_t cursor_ = 0;
  std::uint64_t emitted_ = 0;
  std::optional<std::uint64_t> last_display_tick_;
  std::uint64_t last_n_ = 0;
  std::optional<features::FeatureVector> last_x_;
  std::vector<FeatureId> display_keys_;
  std::size_t curve_seen_ = 0;
  std::uint64_t next_explain_ = 0;
  Clock::time_point last_metrics_{};
  std::atomic<bool> finished_{false};

  std::mutex inbound_mu_;
  std::vector<InboundTag> inbound_;
  std::atomic<bool> explain_requested_{false};
};

}  // namespace nwa::gateway
