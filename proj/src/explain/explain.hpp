// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "features/feature_key.hpp"
#include "features/selection.hpp"
#include "models/arf.hpp"
#include "models/hoeffding_tree.hpp"

namespace nwa::explain {

using features::FeatureId;
using features::FeatureVector;
using models::Proba;
using stream::ClassLabel;

enum class Branch { kLeft, kRight };  // value <= threshold, value > threshold

struct PathStep {
  FeatureId feature = 0;
  double threshold = 0.0;
  double value = 0.0;
  Branch branch = Branch::kLeft;
};

struct DecisionPathRecord {
  std::size_t tree = 0;
  std::vector<PathStep> steps;
  ClassLabel terminal_class = 0;
  double terminal_probability = 0.0;
};

/// Counts of each key over the '>' branches of the qualifying paths.
struct FrequencyTable {
  std::map<FeatureId, std::uint64_t> counts;

  bool empty() const { return counts.empty(); }
  std::uint64_t total() const;
  /// Count descending, ties by key string ascending.
  std::vector<std::pair<FeatureId, std::uint64_t>> ranked() const;
};

struct Extraction {
  FrequencyTable table;
  std::vector<DecisionPathRecord> paths;  // one per qualifying tree
};

/// Root plus the member's own prediction for one sample.
struct TreeView {
  const models::TreeNode* root = nullptr;
  ClassLabel prediction = 0;
  double probability = 0.0;
};

/// Walks every tree whose prediction equals `prediction`; a node whose key
/// is undefined in `x` ends the walk.
Extraction extract_paths(std::span<const TreeView> trees, ClassLabel prediction, const FeatureVector& x);
Extraction extract_relevant_features(const models::AdaptiveRandomForest& forest, ClassLabel prediction,
                                     const FeatureVector& x);

struct DisplayKey {
  FeatureId key = 0;
  bool fallback = false;
};

/// Head of the ranked table, else the selected key with the largest online
/// variance (ties by key string), else none.
std::optional<DisplayKey> default_display_key(const FrequencyTable& table,
                                              const features::SelectionState* selection);

struct Interval {
  std::uint64_t start = 0;
  std::uint64_t end = 0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Most recent maximal run of at least `min_run` consecutive predictions of
/// the target class.
class RunTracker {
 public:
  explicit RunTracker(ClassLabel target = 1, std::size_t min_run = 25);
  void observe(std::uint64_t n, ClassLabel prediction);
  std::optional<Interval> interval() const;

 private:
  ClassLabel target_;
  std::size_t min_run_;
  std::optional<Interval> last_;
  std::optional<Interval> current_;
  std::size_t current_len_ = 0;
};

struct TemplateInputs {
  const DecisionPathRecord* path = nullptr;
  const features::SelectionState* selection = nullptr;
  ClassLabel prediction = 0;
  double confidence = 0.0;
  std::vector<std::string> class_words;
  std::optional<Interval> cheating;
  double master_rate_hz = 25.0;
};

std::array<std::string, 4> render_templates(const TemplateInputs& in);

/// `Q2 value`, `z accelerometer`, `wQ1 window` style fragments.
std::string component_word(FeatureId id);
std::string sensor_phrase(FeatureId id);
std::string window_word(FeatureId id);
/// Slot as elapsed session time `hh:mm:ss.ss`.
std::string format_time(std::uint64_t n, double master_rate_hz);
std::string format_confidence(double p);

struct ExplainConfig {
  std::size_t min_cheating_run = 25;
  std::optional<ClassLabel> cheating_class = 1;
  std::size_t gamma_top = 20;
};

struct ExplanationReport {
  std::uint64_t n = 0;
  ClassLabel prediction = 0;
  double confidence = 0.0;
  Proba proba;
  std::vector<std::pair<FeatureId, std::uint64_t>> gamma;  // top entries
  std::optional<DisplayKey> display;
  std::vector<DecisionPathRecord> paths;
  std::optional<std::size_t> shown_path;  // index into `paths`
  std::array<std::string, 4> texts;
  std::optional<Interval> cheating;
};

/// Explains the forest's prediction on one sample.
class Explainer {
 public:
  Explainer(std::vector<std::string> class_names, double master_rate_hz, ExplainConfig config = {});

  /// Feeds the prediction history used for the cheating interval.
  void observe(std::uint64_t n, ClassLabel prediction);

  ExplanationReport explain(const models::AdaptiveRandomForest& forest, const FeatureVector& x,
                            const features::SelectionState* selection) const;

  const ExplainConfig& config() const { return config_; }

 private:
  std::vector<std::string> class_words_;
  double rate_;
  ExplainConfig config_;
  std::optional<RunTracker> tracker_;
};

}  // namespace nwa::explain
