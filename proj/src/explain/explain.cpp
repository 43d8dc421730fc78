// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "explain/explain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "common/error.hpp"

namespace nwa::explain {

namespace {

using features::FeatureKey;
using features::Metric;
using stream::Axis;
using stream::Sensor;

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += i + 1 == items.size() ? " and " : ", ";
    out += items[i];
  }
  return out;
}

const char* plural(std::size_t count) { return count == 1 ? "" : "s"; }

std::string sensor_word(Sensor s) {
  switch (s) {
    case Sensor::kAccelerometer16g: return "accelerometer";
    case Sensor::kAccelerometer6g: return "6g accelerometer";
    case Sensor::kGyroscope: return "gyroscope";
    case Sensor::kMagnetometer: return "magnetometer";
    case Sensor::kHeartRate: return "heart rate sensor";
    case Sensor::kTemperature: return "temperature sensor";
  }
  return "sensor";
}

std::string metric_word(Metric m) { return std::string(features::to_string(m)); }

void push_unique(std::vector<std::string>& items, const std::string& item) {
  if (std::find(items.begin(), items.end(), item) == items.end()) items.push_back(item);
}

/// Groups in first-appearance order keyed by the (axis, sensor) phrase.
struct Group {
  std::string sensor;
  std::vector<std::string> components;
  std::vector<std::string> windows;
};

Group& group_for(std::vector<Group>& groups, const std::string& sensor) {
  for (auto& g : groups) {
    if (g.sensor == sensor) return g;
  }
  groups.push_back({sensor, {}, {}});
  return groups.back();
}

std::string class_word(const std::vector<std::string>& words, ClassLabel c) {
  return c < words.size() ? words[c] : "c" + std::to_string(c);
}

}  // namespace

std::uint64_t FrequencyTable::total() const {
  std::uint64_t sum = 0;
  for (const auto& [k, v] : counts) sum += v;
  return sum;
}

std::vector<std::pair<FeatureId, std::uint64_t>> FrequencyTable::ranked() const {
  struct Entry {
    FeatureId id;
    std::uint64_t count;
    std::string name;
  };
  std::vector<Entry> entries;
  entries.reserve(counts.size());
  for (const auto& [id, count] : counts) entries.push_back({id, count, features::key_string(id)});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.name < b.name;
  });
  std::vector<std::pair<FeatureId, std::uint64_t>> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.emplace_back(e.id, e.count);
  return out;
}

Extraction extract_paths(std::span<const TreeView> trees, ClassLabel prediction, const FeatureVector& x) {
  Extraction out;
  for (std::size_t t = 0; t < trees.size(); ++t) {
    const auto& view = trees[t];
    if (!view.root || view.prediction != prediction) continue;
    DecisionPathRecord rec;
    rec.tree = t;
    rec.terminal_class = view.prediction;
    rec.terminal_probability = view.probability;
    const models::TreeNode* node = view.root;
    while (node && !node->leaf) {
      const double* value = x.find(node->feature);
      if (!value) break;
      PathStep step{node->feature, node->threshold, *value, Branch::kLeft};
      if (*value <= node->threshold) {
        node = node->left.get();
      } else {
        step.branch = Branch::kRight;
        ++out.table.counts[node->feature];
        node = node->right.get();
      }
      rec.steps.push_back(step);
    }
    out.paths.push_back(std::move(rec));
  }
  return out;
}

Extraction extract_relevant_features(const models::AdaptiveRandomForest& forest, ClassLabel prediction,
                                     const FeatureVector& x) {
  std::vector<TreeView> views;
  views.reserve(forest.trees().size());
  for (const auto& tree : forest.trees()) {
    const auto p = tree.predict_proba_one(x);
    const auto c = models::argmax(p);
    views.push_back({&tree.root(), c, p[c]});
  }
  return extract_paths(views, prediction, x);
}

std::optional<DisplayKey> default_display_key(const FrequencyTable& table,
                                              const features::SelectionState* selection) {
  if (!table.empty()) return DisplayKey{table.ranked().front().first, false};
  if (!selection) return std::nullopt;
  std::optional<FeatureId> best;
  for (auto id : selection->selected_keys()) {
    if (!best || selection->variance(id) > selection->variance(*best) ||
        (selection->variance(id) == selection->variance(*best) &&
         features::key_string(id) < features::key_string(*best))) {
      best = id;
    }
  }
  if (!best) return std::nullopt;
  return DisplayKey{*best, true};
}

RunTracker::RunTracker(ClassLabel target, std::size_t min_run) : target_(target), min_run_(min_run) {
  if (min_run_ == 0) fail(ErrorKind::kConfig, "minimum run length must be positive");
}

void RunTracker::observe(std::uint64_t n, ClassLabel prediction) {
  if (prediction == target_) {
    if (!current_) {
      current_ = Interval{n, n};
      current_len_ = 0;
    }
    current_->end = n;
    ++current_len_;
    return;
  }
  if (current_ && current_len_ >= min_run_) last_ = current_;
  current_.reset();
  current_len_ = 0;
}

std::optional<Interval> RunTracker::interval() const {
  if (current_ && current_len_ >= min_run_) return current_;
  return last_;
}

std::string component_word(FeatureId id) { return metric_word(FeatureKey::from_id(id).metric) + " value"; }

std::string sensor_phrase(FeatureId id) {
  const auto key = FeatureKey::from_id(id);
  const auto word = sensor_word(key.address.sensor);
  if (key.address.axis == Axis::kScalar) return word;
  return std::string(stream::to_string(key.address.axis)) + " " + word;
}

std::string window_word(FeatureId id) {
  const auto key = FeatureKey::from_id(id);
  if (key.metric == Metric::kRaw) return "";
  return std::string(features::to_string(key.window));
}

std::string format_time(std::uint64_t n, double master_rate_hz) {
  const double t = master_rate_hz > 0.0 ? static_cast<double>(n) / master_rate_hz : 0.0;
  const auto whole = static_cast<std::uint64_t>(t);
  const double sec = t - static_cast<double>(whole - whole % 60);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%02llu:%02llu:%05.2f", static_cast<unsigned long long>(whole / 3600),
                static_cast<unsigned long long>((whole / 60) % 60), sec);
  return buf;
}

std::string format_confidence(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", 100.0 * p);
  std::string s = buf;
  if (s.size() > 2 && s.compare(s.size() - 2, 2, ".0") == 0) s.resize(s.size() - 2);
  return s + "%";
}

std::array<std::string, 4> render_templates(const TemplateInputs& in) {
  std::array<std::string, 4> out;
  const std::vector<PathStep> empty;
  const auto& steps = in.path ? in.path->steps : empty;

  std::vector<Group> all;
  for (const auto& s : steps) {
    auto& g = group_for(all, sensor_phrase(s.feature));
    push_unique(g.components, metric_word(FeatureKey::from_id(s.feature).metric));
    const auto w = window_word(s.feature);
    if (!w.empty()) push_unique(g.windows, w);
  }
  if (all.empty()) {
    out[0] = "No split node was traversed on the decision path.";
  } else {
    std::vector<std::string> clauses;
    for (const auto& g : all) {
      std::string c = join(g.components) + " value" + plural(g.components.size()) + " of the " + g.sensor;
      if (!g.windows.empty()) c += " within the " + join(g.windows) + " window" + plural(g.windows.size());
      clauses.push_back(clauses.empty() ? c : "the " + c);
    }
    out[0] = "The " + join(clauses) + " define the decision path.";
  }

  std::vector<Group> stable;
  if (in.selection) {
    for (const auto& s : steps) {
      if (s.branch != Branch::kLeft) continue;
      if (!in.selection->defined(s.feature)) continue;
      if (!(in.selection->variance(s.feature) < in.selection->threshold())) continue;
      auto& g = group_for(stable, sensor_phrase(s.feature));
      push_unique(g.components, metric_word(FeatureKey::from_id(s.feature).metric));
    }
  }
  for (const auto& g : stable) {
    if (!out[1].empty()) out[1] += " ";
    const auto n = g.components.size();
    out[1] += "The " + join(g.components) + " component" + plural(n) + " identified suggest that the value" +
              plural(n) + " remain stable in the " + g.sensor + " case.";
  }

  const auto word = class_word(in.class_words, in.prediction);
  std::vector<Group> changed;
  for (const auto& s : steps) {
    if (s.branch != Branch::kRight) continue;
    auto& g = group_for(changed, sensor_phrase(s.feature));
    std::string c = component_word(s.feature);
    const auto w = window_word(s.feature);
    if (!w.empty()) c += " within the " + w + " window";
    push_unique(g.components, c);
  }
  for (const auto& g : changed) {
    if (!out[2].empty()) out[2] += " ";
    std::vector<std::string> changes;
    for (const auto& c : g.components) changes.push_back("a change in the " + c + " in the last samples");
    std::string text = "In the case of the " + g.sensor + " ";
    for (std::size_t i = 0; i < changes.size(); ++i) text += (i ? " and " : "") + changes[i];
    text += g.components.size() == 1 ? " produces" : " produce";
    out[2] += text + " the prediction of " + word + " practice.";
  }

  std::string tail = "the last detected sample prediction corresponds to " + word + " practice with " +
                     format_confidence(in.confidence) + " confidence.";
  if (in.cheating) {
    out[3] = "Moreover, a cheating practice was detected between " + format_time(in.cheating->start, in.master_rate_hz) +
             " and " + format_time(in.cheating->end, in.master_rate_hz) + "; " + tail;
  } else {
    out[3] = "Moreover, " + tail;
  }
  return out;
}

Explainer::Explainer(std::vector<std::string> class_names, double master_rate_hz, ExplainConfig config)
    : rate_(master_rate_hz), config_(config) {
  for (auto name : class_names) {
    std::replace(name.begin(), name.end(), '_', ' ');
    class_words_.push_back(std::move(name));
  }
  if (config_.cheating_class && *config_.cheating_class < class_words_.size()) {
    tracker_.emplace(*config_.cheating_class, config_.min_cheating_run);
  }
}

void Explainer::observe(std::uint64_t n, ClassLabel prediction) {
  if (tracker_) tracker_->observe(n, prediction);
}

ExplanationReport Explainer::explain(const models::AdaptiveRandomForest& forest, const FeatureVector& x,
                                     const features::SelectionState* selection) const {
  ExplanationReport r;
  r.n = x.n;
  r.proba = forest.predict_proba_one(x);
  r.prediction = models::argmax(r.proba);
  r.confidence = r.proba[r.prediction];
  auto extraction = extract_relevant_features(forest, r.prediction, x);
  auto ranked = extraction.table.ranked();
  if (ranked.size() > config_.gamma_top) ranked.resize(config_.gamma_top);
  r.gamma = std::move(ranked);
  r.display = default_display_key(extraction.table, selection);
  r.paths = std::move(extraction.paths);
  for (std::size_t i = 0; i < r.paths.size(); ++i) {
    if (!r.shown_path || r.paths[i].terminal_probability > r.paths[*r.shown_path].terminal_probability) {
      r.shown_path = i;
    }
  }
  if (tracker_) r.cheating = tracker_->interval();
  TemplateInputs in;
  in.path = r.shown_path ? &r.paths[*r.shown_path] : nullptr;
  in.selection = selection;
  in.prediction = r.prediction;
  in.confidence = r.confidence;
  in.class_words = class_words_;
  in.cheating = r.cheating;
  in.master_rate_hz = rate_;
  r.texts = render_templates(in);
  return r;
}

}  // namespace nwa::explain
