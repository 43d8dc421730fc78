// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "calibration/calibration.hpp"
#include "evaluation/metrics.hpp"
#include "features/pipeline.hpp"
#include "labeling/labeling.hpp"
#include "models/factory.hpp"

namespace nwa::evaluation {

using features::DataKind;
using features::FeatureVector;
using models::ModelId;

enum class Scenario { kA, kB, kC, kD };
std::string_view to_string(Scenario s);
std::optional<Scenario> parse_scenario(std::string_view text);

struct ScenarioSpec {
  Scenario id = Scenario::kA;
  DataKind kind = DataKind::kEngineered;
  ModelId model = ModelId::kGnb;
  std::size_t stride = 10;
  std::size_t partitions = 8;

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// A, B and D: 10 slots on the 25 Hz family, 30 on the 100 Hz one; C: 100.
std::size_t default_stride(Scenario s, stream::DatasetKind dataset);
ScenarioSpec make_scenario(Scenario s, DataKind kind, ModelId model, stream::DatasetKind dataset);
/// Throws kConfig: D needs engineered data and K-means; A-C need a
/// supervised model; stride and partitions must be positive.
void validate(const ScenarioSpec& spec);

/// One emitted feature vector. `index` counts emitted vectors from 1.
struct Sample {
  std::uint64_t index = 0;
  FeatureVector x;
  std::optional<ClassLabel> truth;
};

struct SampleSet {
  std::vector<Sample> samples;
  std::uint64_t slots = 0;
  std::uint64_t emitted = 0;
  calibration::CalibrationResult calibration;
  double threshold = 0.0;
  std::size_t defined_keys = 0;
  std::size_t selected_keys = 0;
  double pipeline_seconds = 0.0;
};

/// Runs the feature pipeline over the stream, keeping the samples whose
/// emission index is a multiple of any stride in `strides`.
SampleSet extract_samples(const stream::Stream& stream, const features::PipelineConfig& config,
                          std::span<const std::size_t> strides);

/// Samples whose emission index is a multiple of `stride`, in order.
std::vector<const Sample*> decimate(std::span<const Sample> samples, std::size_t stride);

/// Splits into `partitions` contiguous blocks and permutes the blocks.
template <typename T>
void shuffle_blocks(std::vector<T>& items, std::size_t partitions, std::uint64_t seed);

struct PredictionRecord {
  std::uint64_t n = 0;
  std::optional<ClassLabel> truth;
  ClassLabel pred = 0;
  Proba proba;
  int cluster = -1;
  bool bootstrap = false;
  std::uint64_t predict_seq = 0;
  std::uint64_t learn_seq = 0;
};

struct PrequentialMetrics {
  std::size_t n_classes = 0;
  std::uint64_t samples = 0;
  std::uint64_t learn_calls = 0;
  std::size_t sessions = 1;
  double accuracy = 0.0;
  double accuracy_std = 0.0;
  double precision_macro = 0.0;
  std::vector<double> precision;
  double recall_macro = 0.0;
  std::vector<double> recall;
  double precision_micro = 0.0;
  double recall_micro = 0.0;
  double crloss = 0.0;
  double rmse = 0.0;
  double mae = 0.0;
  double preq_time_s = 0.0;
  double per_sample_ms = 0.0;
  /// Scenario D: accuracy of the labels in force at each slot, and agreement
  /// of the explainability forest with them.
  std::optional<double> online_accuracy;
  std::optional<double> agreement;
};

PrequentialMetrics summarize(const MetricAccumulator& acc);
/// Means over sessions; `accuracy_std` is the sample standard deviation of
/// the session accuracies.
PrequentialMetrics aggregate(std::span<const PrequentialMetrics> sessions);

struct EvalOptions {
  models::ModelConfig models;
  models::KMeansConfig kmeans = models::KMeansConfig::nwgti();
  std::uint64_t tick_slots = 500;
  labeling::JudgeMode judge_mode = labeling::JudgeMode::kFull;
  /// When false a tick that cannot label every cluster keeps the previous map.
  bool strict_coverage = true;
};

struct CurvePoint {
  std::uint64_t n = 0;
  double accuracy = 0.0;
  double crloss = 0.0;
};

/// Prequential loop for one scenario: every step predicts, scores, then
/// learns. Scenario D clusters, labels the cluster through the current
/// label map and trains the explainability forest on that label.
class PrequentialEvaluator {
 public:
  PrequentialEvaluator(const ScenarioSpec& spec, std::size_t n_classes, std::uint64_t seed,
                       EvalOptions options = {});

  /// Scenario D: tags take part in the first tick at or after their slot.
  void add_tag(labeling::JudgeTag tag);

  const PredictionRecord& step(const FeatureVector& x, std::optional<ClassLabel> truth);

  PrequentialMetrics metrics() const;

  const ScenarioSpec& spec() const { return spec_; }
  std::size_t n_classes() const { return n_classes_; }
  const std::vector<PredictionRecord>& log() const { return log_; }
  std::uint64_t learn_calls() const { return learn_calls_; }
  double model_seconds() const { return model_seconds_; }
  std::uint64_t digest() const;
  const std::vector<CurvePoint>& curve() const { return curve_; }
  const std::vector<labeling::JudgeTag>& tags() const { return tags_; }

  const models::Classifier* classifier() const { return classifier_.get(); }
  const models::KMeans* kmeans() const { return kmeans_.get(); }
  const models::AdaptiveRandomForest* explainer() const { return explainer_.get(); }
  const labeling::ClusterLabelMap& label_map() const { return map_; }
  bool bootstrapping() const { return !ticked_; }
  /// Final a posteriori cluster->class mapping over all scored samples.
  labeling::Mapping final_mapping() const;

 private:
  const PredictionRecord& step_supervised(const FeatureVector& x, std::optional<ClassLabel> truth);
  const PredictionRecord& step_clustering(const FeatureVector& x, std::optional<ClassLabel> truth);
  void tick(std::uint64_t n);
  bool any_truth() const;

  ScenarioSpec spec_;
  std::size_t n_classes_;
  EvalOptions options_;
  std::unique_ptr<models::Classifier> classifier_;
  std::unique_ptr<models::KMeans> kmeans_;
  std::unique_ptr<models::AdaptiveRandomForest> explainer_;

  std::vector<PredictionRecord> log_;
  MetricAccumulator acc_;
  std::uint64_t seq_ = 0;
  std::uint64_t learn_calls_ = 0;
  double model_seconds_ = 0.0;

  // Scenario D state.
  std::vector<labeling::JudgeTag> tags_;
  std::vector<std::uint64_t> slots_;
  std::vector<int> assignments_;
  labeling::Confusion cluster_confusion_;
  labeling::ClusterLabelMap map_;
  bool ticked_ = false;
  std::uint64_t next_tick_ = 0;
  std::uint64_t agree_ = 0;
  MetricAccumulator explainer_acc_;
  std::vector<CurvePoint> curve_;
};

struct RunOptions {
  EvalOptions eval;
  /// Judge tags for scenario D; simulated from ground truth when empty.
  std::vector<labeling::JudgeTag> tags;
  bool simulate_tags = true;
  std::size_t tags_per_class = 5;
  double tag_noise = 0.0;
};

struct RunResult {
  ScenarioSpec spec;
  PrequentialMetrics metrics;
  std::vector<PredictionRecord> log;
  std::uint64_t digest = 0;
  std::vector<labeling::JudgeTag> tags;
  std::optional<labeling::ClusterLabelMap> label_map;
  std::vector<CurvePoint> curve;
};

/// Decimates, shuffles for B and C, and runs the loop.
RunResult run_prequential(std::span<const Sample> samples, const ScenarioSpec& spec,
                          std::size_t n_classes, std::uint64_t seed, const RunOptions& options = {});

}  // namespace nwa::evaluation

#include "evaluation/shuffle_impl.hpp"
