// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "evaluation/prequential.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "common/digest.hpp"
#include "common/error.hpp"
#include "common/rng.hpp"

namespace nwa::evaluation {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::kA: return "A";
    case Scenario::kB: return "B";
    case Scenario::kC: return "C";
    case Scenario::kD: return "D";
  }
  return "?";
}

std::optional<Scenario> parse_scenario(std::string_view text) {
  if (text == "A" || text == "a") return Scenario::kA;
  if (text == "B" || text == "b") return Scenario::kB;
  if (text == "C" || text == "c") return Scenario::kC;
  if (text == "D" || text == "d") return Scenario::kD;
  return std::nullopt;
}

std::size_t default_stride(Scenario s, stream::DatasetKind dataset) {
  if (s == Scenario::kC) return 100;
  return dataset == stream::DatasetKind::kPamap2 ? 30 : 10;
}

ScenarioSpec make_scenario(Scenario s, DataKind kind, ModelId model, stream::DatasetKind dataset) {
  ScenarioSpec spec;
  spec.id = s;
  spec.kind = kind;
  spec.model = model;
  spec.stride = default_stride(s, dataset);
  spec.partitions = (s == Scenario::kB || s == Scenario::kC) ? 8 : 1;
  return spec;
}

void validate(const ScenarioSpec& spec) {
  if (spec.stride == 0) fail(ErrorKind::kConfig, "decimation stride must be positive");
  if (spec.partitions == 0) fail(ErrorKind::kConfig, "shuffle partitions must be positive");
  if (spec.id == Scenario::kD) {
    if (spec.kind != DataKind::kEngineered) fail(ErrorKind::kConfig, "scenario D runs on engineered data");
    if (spec.model != ModelId::kKMeans) fail(ErrorKind::kConfig, "scenario D uses the kmeans model");
  } else if (spec.model == ModelId::kKMeans) {
    fail(ErrorKind::kConfig, "kmeans is only valid in scenario D");
  }
}

SampleSet extract_samples(const stream::Stream& stream, const features::PipelineConfig& config,
                          std::span<const std::size_t> strides) {
  for (auto d : strides) {
    if (d == 0) fail(ErrorKind::kConfig, "decimation stride must be positive");
  }
  SampleSet out;
  features::FeaturePipeline pipeline(stream.descriptor, config);
  const auto start = Clock::now();
  for (const auto& slot : stream.slots) {
    auto fv = pipeline.push(slot);
    ++out.slots;
    if (!fv) continue;
    const std::uint64_t index = ++out.emitted;
    const bool keep = std::any_of(strides.begin(), strides.end(), [&](std::size_t d) { return index % d == 0; });
    if (keep) out.samples.push_back({index, std::move(*fv), slot.ground_truth});
  }
  out.pipeline_seconds = seconds_since(start);
  if (!pipeline.calibrated()) {
    fail(ErrorKind::kData, "stream ended before the calibration interval completed");
  }
  out.calibration = pipeline.calibration();
  out.threshold = pipeline.selection().threshold();
  out.defined_keys = pipeline.selection().defined_keys().size();
  out.selected_keys = pipeline.selection().selected_keys().size();
  return out;
}

std::vector<const Sample*> decimate(std::span<const Sample> samples, std::size_t stride) {
  if (stride == 0) fail(ErrorKind::kConfig, "decimation stride must be positive");
  std::vector<const Sample*> out;
  for (const auto& s : samples) {
    if (s.index % stride == 0) out.push_back(&s);
  }
  return out;
}

PrequentialMetrics summarize(const MetricAccumulator& acc) {
  PrequentialMetrics m;
  m.n_classes = acc.n_classes();
  m.samples = acc.count();
  m.accuracy = acc.accuracy();
  m.precision_macro = acc.precision_macro();
  m.recall_macro = acc.recall_macro();
  m.precision_micro = acc.precision_micro();
  m.recall_micro = acc.recall_micro();
  for (std::size_t c = 0; c < acc.n_classes(); ++c) {
    m.precision.push_back(acc.precision(static_cast<ClassLabel>(c)));
    m.recall.push_back(acc.recall(static_cast<ClassLabel>(c)));
  }
  m.crloss = acc.crloss();
  m.rmse = acc.rmse();
  m.mae = acc.mae();
  return m;
}

PrequentialMetrics aggregate(std::span<const PrequentialMetrics> sessions) {
  if (sessions.empty()) return {};
  if (sessions.size() == 1) return sessions.front();
  const double n = static_cast<double>(sessions.size());
  PrequentialMetrics out;
  out.n_classes = sessions.front().n_classes;
  out.sessions = sessions.size();
  out.precision.assign(out.n_classes, 0.0);
  out.recall.assign(out.n_classes, 0.0);
  bool online = true, agreement = true;
  double online_sum = 0.0, agreement_sum = 0.0;
  for (const auto& s : sessions) {
    if (s.n_classes != out.n_classes) fail(ErrorKind::kDimension, "sessions disagree on the class count");
    out.samples += s.samples;
    out.learn_calls += s.learn_calls;
    out.accuracy += s.accuracy / n;
    out.precision_macro += s.precision_macro / n;
    out.recall_macro += s.recall_macro / n;
    out.precision_micro += s.precision_micro / n;
    out.recall_micro += s.recall_micro / n;
    for (std::size_t c = 0; c < out.n_classes; ++c) {
      out.precision[c] += s.precision[c] / n;
      out.recall[c] += s.recall[c] / n;
    }
    out.crloss += s.crloss / n;
    out.rmse += s.rmse / n;
    out.mae += s.mae / n;
    out.preq_time_s += s.preq_time_s / n;
    online = online && s.online_accuracy.has_value();
    agreement = agreement && s.agreement.has_value();
    if (s.online_accuracy) online_sum += *s.online_accuracy;
    if (s.agreement) agreement_sum += *s.agreement;
  }
  double sq = 0.0;
  for (const auto& s : sessions) sq += (s.accuracy - out.accuracy) * (s.accuracy - out.accuracy);
  out.accuracy_std = std::sqrt(sq / (n - 1.0));
  out.per_sample_ms = out.samples ? 1000.0 * out.preq_time_s * n / static_cast<double>(out.samples) : 0.0;
  if (online) out.online_accuracy = online_sum / n;
  if (agreement) out.agreement = agreement_sum / n;
  return out;
}

PrequentialEvaluator::PrequentialEvaluator(const ScenarioSpec& spec, std::size_t n_classes,
                                           std::uint64_t seed, EvalOptions options)
    : spec_(spec),
      n_classes_(n_classes),
      options_(std::move(options)),
      acc_(n_classes),
      explainer_acc_(n_classes) {
  validate(spec_);
  if (n_classes_ < 2) fail(ErrorKind::kConfig, "at least two classes are required");
  if (spec_.id == Scenario::kD) {
    if (static_cast<std::size_t>(options_.kmeans.n_clusters) != n_classes_) {
      fail(ErrorKind::kConfig, "kmeans n_clusters must equal the class count");
    }
    if (options_.tick_slots == 0) fail(ErrorKind::kConfig, "evaluation tick must be positive");
    kmeans_ = std::make_unique<models::KMeans>(options_.kmeans, derive_seed(seed, 0));
    explainer_ = std::make_unique<models::AdaptiveRandomForest>(n_classes_, options_.models.arfc,
                                                                 derive_seed(seed, 1));
    cluster_confusion_.assign(n_classes_, std::vector<std::uint64_t>(n_classes_, 0));
    map_.labels.resize(n_classes_);
    std::iota(map_.labels.begin(), map_.labels.end(), ClassLabel{0});
    map_.sources.assign(n_classes_, labeling::Provenance::kBestMappingOracle);
    map_.anonymous.assign(n_classes_, false);
  } else {
    classifier_ = models::make_classifier(spec_.model, n_classes_, seed, options_.models);
  }
}

void PrequentialEvaluator::add_tag(labeling::JudgeTag tag) {
  if (tag.label >= n_classes_) fail(ErrorKind::kData, "tag label outside the class set");
  tags_.push_back(std::move(tag));
}

const PredictionRecord& PrequentialEvaluator::step(const FeatureVector& x, std::optional<ClassLabel> truth) {
  if (truth && *truth >= n_classes_) fail(ErrorKind::kData, "ground truth outside the class set");
  return spec_.id == Scenario::kD ? step_clustering(x, truth) : step_supervised(x, truth);
}

const PredictionRecord& PrequentialEvaluator::step_supervised(const FeatureVector& x,
                                                              std::optional<ClassLabel> truth) {
  PredictionRecord rec;
  rec.n = x.n;
  rec.truth = truth;
  const auto start = Clock::now();
  rec.proba = classifier_->predict_proba_one(x);
  rec.predict_seq = ++seq_;
  rec.pred = models::argmax(rec.proba);
  if (truth) acc_.add(*truth, rec.pred, &rec.proba);
  if (truth) {
    classifier_->learn_one(x, *truth);
    rec.learn_seq = ++seq_;
    ++learn_calls_;
  }
  model_seconds_ += seconds_since(start);
  log_.push_back(std::move(rec));
  return log_.back();
}

bool PrequentialEvaluator::any_truth() const {
  for (const auto& row : cluster_confusion_) {
    for (auto v : row) {
      if (v) return true;
    }
  }
  return false;
}

void PrequentialEvaluator::tick(std::uint64_t n) {
  std::vector<labeling::JudgeTag> visible;
  for (const auto& t : tags_) {
    if (t.slot <= n) visible.push_back(t);
  }
  std::optional<std::vector<ClassLabel>> fallback;
  if (any_truth()) fallback = labeling::best_mapping(cluster_confusion_).labels;
  try {
    auto e = labeling::expand_tags(slots_, assignments_, visible, n_classes_, n_classes_, options_.judge_mode,
                                   fallback ? &*fallback : nullptr);
    map_ = std::move(e.map);
    ticked_ = true;
  } catch (const Error& err) {
    if (options_.strict_coverage || err.kind() != ErrorKind::kCoverage) throw;
  }
}

const PredictionRecord& PrequentialEvaluator::step_clustering(const FeatureVector& x,
                                                              std::optional<ClassLabel> truth) {
  PredictionRecord rec;
  rec.n = x.n;
  rec.truth = truth;
  const auto start = Clock::now();
  const int k = kmeans_->learn_predict_one(x);
  rec.cluster = k;
  slots_.push_back(x.n);
  assignments_.push_back(k);

  if (log_.empty()) next_tick_ = (x.n / options_.tick_slots + 1) * options_.tick_slots;
  const bool tick_now = x.n >= next_tick_;
  if (tick_now) {
    tick(x.n);
    next_tick_ = (x.n / options_.tick_slots + 1) * options_.tick_slots;
  }
  if (!ticked_ && any_truth()) {
    map_.labels = labeling::best_mapping(cluster_confusion_).labels;
    map_.sources.assign(n_classes_, labeling::Provenance::kBestMappingOracle);
  }
  rec.bootstrap = !ticked_;
  rec.pred = map_.labels[static_cast<std::size_t>(k)];

  rec.proba = explainer_->predict_proba_one(x);
  rec.predict_seq = ++seq_;
  if (models::argmax(rec.proba) == rec.pred) ++agree_;
  explainer_->learn_one(x, rec.pred);
  rec.learn_seq = ++seq_;
  ++learn_calls_;
  model_seconds_ += seconds_since(start);

  if (truth) {
    ++cluster_confusion_[static_cast<std::size_t>(k)][*truth];
    acc_.add(*truth, rec.pred);
    explainer_acc_.add(*truth, models::argmax(rec.proba), &rec.proba);
  }
  log_.push_back(std::move(rec));
  if (tick_now) {
    curve_.push_back({log_.back().n, acc_.accuracy(), explainer_acc_.crloss()});
  }
  return log_.back();
}

labeling::Mapping PrequentialEvaluator::final_mapping() const {
  if (spec_.id != Scenario::kD) fail(ErrorKind::kConfig, "final mapping exists only for scenario D");
  return labeling::best_mapping(cluster_confusion_);
}

PrequentialMetrics PrequentialEvaluator::metrics() const {
  PrequentialMetrics m;
  if (spec_.id != Scenario::kD) {
    m = summarize(acc_);
  } else {
    const auto mapping = final_mapping();
    MetricAccumulator mapped(n_classes_);
    for (const auto& r : log_) {
      if (!r.truth) continue;
      mapped.add(*r.truth, mapping.labels[static_cast<std::size_t>(r.cluster)], &r.proba);
    }
    m = summarize(mapped);
    m.online_accuracy = acc_.accuracy();
    m.agreement = log_.empty() ? 0.0 : static_cast<double>(agree_) / static_cast<double>(log_.size());
  }
  m.learn_calls = learn_calls_;
  m.preq_time_s = model_seconds_;
  m.per_sample_ms = log_.empty() ? 0.0 : 1000.0 * model_seconds_ / static_cast<double>(log_.size());
  return m;
}

std::uint64_t PrequentialEvaluator::digest() const {
  Digest d;
  if (classifier_) d.add(classifier_->digest());
  if (kmeans_) d.add(kmeans_->digest());
  if (explainer_) d.add(explainer_->digest());
  return d.value();
}

RunResult run_prequential(std::span<const Sample> samples, const ScenarioSpec& spec, std::size_t n_classes,
                          std::uint64_t seed, const RunOptions& options) {
  validate(spec);
  auto chosen = decimate(samples, spec.stride);
  if (spec.id == Scenario::kB || spec.id == Scenario::kC) {
    shuffle_blocks(chosen, spec.partitions, derive_seed(seed, 7));
  }
  PrequentialEvaluator eval(spec, n_classes, seed, options.eval);
  RunResult out;
  out.spec = spec;
  if (spec.id == Scenario::kD) {
    std::vector<labeling::JudgeTag> tags = options.tags;
    if (tags.empty() && options.simulate_tags) {
      std::vector<std::uint64_t> slots;
      std::vector<ClassLabel> truth;
      for (const auto* s : chosen) {
        if (!s->truth) continue;
        slots.push_back(s->x.n);
        truth.push_back(*s->truth);
      }
      tags = labeling::simulate_tags(slots, truth, n_classes, options.tags_per_class, options.tag_noise,
                                     derive_seed(seed, 3), options.eval.judge_mode);
    }
    for (auto& t : tags) eval.add_tag(t);
  }
  for (const auto* s : chosen) eval.step(s->x, s->truth);
  out.metrics = eval.metrics();
  out.log = eval.log();
  out.digest = eval.digest();
  if (spec.id == Scenario::kD) {
    out.tags = eval.tags();
    out.label_map = eval.label_map();
    out.curve = eval.curve();
  }
  return out;
}

}  // namespace nwa::evaluation
