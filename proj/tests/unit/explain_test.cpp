// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "explain/explain.hpp"

namespace nwa::explain {
namespace {

using features::FeatureKey;
using models::TreeNode;

FeatureId key(const char* text) {
  const auto k = FeatureKey::parse(text);
  EXPECT_TRUE(k) << text;
  return k ? k->id() : 0;
}

std::unique_ptr<TreeNode> leaf() { return std::make_unique<TreeNode>(); }

std::unique_ptr<TreeNode> split(FeatureId f, double t, std::unique_ptr<TreeNode> l, std::unique_ptr<TreeNode> r) {
  auto n = std::make_unique<TreeNode>();
  n->leaf = false;
  n->feature = f;
  n->threshold = t;
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

const FeatureId k1 = key("Q2:wQ1:right-wrist-accelerometer16g-z");
const FeatureId k2 = key("F:wQ3:left-ankle-gyroscope-x");

/// Root splits on k1 at 0.5; its right child splits on k2 at 1.0.
std::unique_ptr<TreeNode> three_node_tree() {
  return split(k1, 0.5, leaf(), split(k2, 1.0, leaf(), leaf()));
}

FeatureVector sample(double v1, double v2) {
  FeatureVector x;
  x.n = 100;
  x.values = {{k1, v1}, {k2, v2}};
  x.sort();
  return x;
}

TEST(RelevantFeatureWalkTest, RightBranchesAppend) {
  const auto root = three_node_tree();
  const TreeView views[] = {{root.get(), 0, 1.0}};
  const auto e = extract_paths(views, 0, sample(0.9, 2.0));
  EXPECT_EQ(e.table.counts, (std::map<FeatureId, std::uint64_t>{{k1, 1}, {k2, 1}}));
  ASSERT_EQ(e.paths.size(), 1u);
  ASSERT_EQ(e.paths[0].steps.size(), 2u);
  EXPECT_EQ(e.paths[0].steps[0].branch, Branch::kRight);
  EXPECT_EQ(e.paths[0].steps[1].branch, Branch::kRight);
}

TEST(RelevantFeatureWalkTest, LeftBranchesNeverAppend) {
  const auto root = three_node_tree();
  const TreeView views[] = {{root.get(), 0, 1.0}};
  const auto e = extract_paths(views, 0, sample(0.5, 2.0));
  EXPECT_TRUE(e.table.empty());
  ASSERT_EQ(e.paths.size(), 1u);
  ASSERT_EQ(e.paths[0].steps.size(), 1u);
  EXPECT_EQ(e.paths[0].steps[0].branch, Branch::kLeft);
}

TEST(RelevantFeatureWalkTest, UndefinedKeyEndsWalk) {
  const auto root = three_node_tree();
  const TreeView views[] = {{root.get(), 0, 1.0}};
  FeatureVector x;
  x.values = {{k2, 5.0}};
  const auto e = extract_paths(views, 0, x);
  EXPECT_TRUE(e.table.empty());
  EXPECT_TRUE(e.paths[0].steps.empty());
}

TEST(RelevantFeatureWalkTest, OnlyAgreeingTreesCount) {
  const auto a = three_node_tree();
  const auto b = three_node_tree();
  const TreeView views[] = {{a.get(), 0, 1.0}, {b.get(), 1, 1.0}, {a.get(), 0, 0.7}};
  const auto e = extract_paths(views, 0, sample(0.9, 0.0));
  EXPECT_EQ(e.table.counts, (std::map<FeatureId, std::uint64_t>{{k1, 2}}));
  ASSERT_EQ(e.paths.size(), 2u);
  EXPECT_EQ(e.paths[0].tree, 0u);
  EXPECT_EQ(e.paths[1].tree, 2u);
  EXPECT_TRUE(extract_paths(views, 2, sample(0.9, 0.0)).table.empty());
}

/// Independent re-walk: recursion instead of iteration, counts in a vector.
void oracle_walk(const TreeNode& node, const FeatureVector& x, std::map<FeatureId, std::uint64_t>& counts) {
  if (node.leaf) return;
  const double* v = x.find(node.feature);
  if (v == nullptr) return;
  if (!(*v <= node.threshold)) {
    counts[node.feature] += 1;
    oracle_walk(*node.right, x, counts);
  } else {
    oracle_walk(*node.left, x, counts);
  }
}

TEST(RelevantFeatureWalkTest, ForestMatchesDuplicateWalk) {
  std::mt19937_64 gen(41);
  std::normal_distribution<double> noise(0.0, 1.0);
  models::ForestConfig cfg;
  cfg.models = 10;
  cfg.features = 3;
  cfg.tree.grace_period = 50;
  models::AdaptiveRandomForest forest(3, cfg, 8);
  for (int i = 0; i < 3000; ++i) {
    FeatureVector x;
    const auto y = static_cast<ClassLabel>(gen() % 3);
    for (FeatureId f = 0; f < 8; ++f) x.values.emplace_back(f * 7 + 1, noise(gen) + (f % 3 == y ? 2.0 : 0.0));
    forest.learn_one(x, y);
  }
  std::size_t nonempty = 0;
  for (int trial = 0; trial < 100; ++trial) {
    FeatureVector x;
    for (FeatureId f = 0; f < 8; ++f) {
      if (gen() % 10) x.values.emplace_back(f * 7 + 1, noise(gen) + 1.0);
    }
    const auto pred = forest.predict_one(x);
    const auto e = extract_relevant_features(forest, pred, x);
    std::map<FeatureId, std::uint64_t> want;
    std::uint64_t right_steps = 0;
    for (const auto& tree : forest.trees()) {
      if (tree.predict_one(x) != pred) continue;
      oracle_walk(tree.root(), x, want);
    }
    for (const auto& p : e.paths) {
      for (const auto& s : p.steps) {
        right_steps += s.branch == Branch::kRight;
        // Path faithfulness.
        EXPECT_EQ(s.branch == Branch::kRight, *x.find(s.feature) > s.threshold);
        EXPECT_EQ(s.value, *x.find(s.feature));
      }
    }
    EXPECT_EQ(e.table.counts, want);
    EXPECT_EQ(e.table.total(), right_steps);
    nonempty += !want.empty();
  }
  EXPECT_GT(nonempty, 10u);
}

TEST(RankingTest, CountDescendingTiesByKeyString) {
  FrequencyTable t;
  const auto a = key("F:wQ1:right-wrist-gyroscope-x");
  const auto b = key("Q1:wQ1:right-wrist-gyroscope-x");
  const auto c = key("avg:wQ2:left-pole-accelerometer16g-y");
  t.counts = {{a, 2}, {b, 2}, {c, 3}};
  const auto r = t.ranked();
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].first, c);
  EXPECT_EQ(r[1].first, a);  // "F:" sorts before "Q1:"
  EXPECT_EQ(r[2].first, b);
}

TEST(DisplayKeyTest, HeadTieAndFallback) {
  FrequencyTable t;
  t.counts = {{k1, 3}, {k2, 1}};
  EXPECT_EQ(default_display_key(t, nullptr)->key, k1);
  t.counts = {{k1, 2}, {k2, 2}};
  const auto tie = default_display_key(t, nullptr);
  EXPECT_EQ(tie->key, features::key_string(k1) < features::key_string(k2) ? k1 : k2);
  EXPECT_FALSE(tie->fallback);

  features::SelectionState sel;
  for (int i = 0; i < 10; ++i) {
    sel.observe(k1, i);
    sel.observe(k2, 3.0 * i);
  }
  const auto fb = default_display_key(FrequencyTable{}, &sel);
  ASSERT_TRUE(fb);
  EXPECT_EQ(fb->key, k2);
  EXPECT_TRUE(fb->fallback);
  EXPECT_FALSE(default_display_key(FrequencyTable{}, nullptr));
}

TEST(RunTrackerTest, MostRecentQualifyingRun) {
  RunTracker r(1, 3);
  std::uint64_t n = 0;
  auto feed = [&](ClassLabel c, int times) {
    for (int i = 0; i < times; ++i) r.observe(n++, c);
  };
  feed(1, 2);
  feed(0, 1);
  EXPECT_FALSE(r.interval());
  feed(1, 4);  // slots 3..6
  feed(0, 2);
  EXPECT_EQ(r.interval(), (Interval{3, 6}));
  feed(1, 2);
  feed(2, 1);
  EXPECT_EQ(r.interval(), (Interval{3, 6}));
  feed(1, 3);  // slots 12..14, still running
  EXPECT_EQ(r.interval(), (Interval{12, 14}));
}

TemplateInputs inputs(const DecisionPathRecord& path) {
  TemplateInputs in;
  in.path = &path;
  in.prediction = 0;
  in.confidence = 1.0;
  in.class_words = {"correct", "cheating", "incorrect"};
  return in;
}

TEST(TemplateTest, SingleRightStep) {
  DecisionPathRecord path;
  path.steps = {{k1, 0.5, 0.9, Branch::kRight}};
  const auto t = render_templates(inputs(path));
  EXPECT_EQ(t[0], "The Q2 value of the z accelerometer within the wQ1 window define the decision path.");
  EXPECT_TRUE(t[1].empty());
  EXPECT_EQ(t[2],
            "In the case of the z accelerometer a change in the Q2 value within the wQ1 window in the last "
            "samples produces the prediction of correct practice.");
  EXPECT_EQ(t[3], "Moreover, the last detected sample prediction corresponds to correct practice with 100% confidence.");
}

TEST(TemplateTest, GroupsBySensorTupleWithPlurals) {
  DecisionPathRecord path;
  path.steps = {{k1, 0.5, 0.9, Branch::kRight},
                {key("F:wQ3:right-wrist-accelerometer16g-z"), 1.0, 2.0, Branch::kRight},
                {key("Q2:wQ1:left-ankle-accelerometer16g-z"), 1.0, 0.0, Branch::kLeft},
                {key("raw:-:left-pole-gyroscope-y"), 0.0, 1.0, Branch::kRight}};
  auto in = inputs(path);
  in.prediction = 1;
  in.confidence = 0.8125;
  in.cheating = Interval{250, 1000};
  const auto t = render_templates(in);
  EXPECT_EQ(t[0],
            "The Q2 and F values of the z accelerometer within the wQ1 and wQ3 windows and the raw value of the y "
            "gyroscope define the decision path.");
  EXPECT_EQ(t[2],
            "In the case of the z accelerometer a change in the Q2 value within the wQ1 window in the last samples "
            "and a change in the F value within the wQ3 window in the last samples produce the prediction of "
            "cheating practice. In the case of the y gyroscope a change in the raw value in the last samples "
            "produces the prediction of cheating practice.");
  EXPECT_EQ(t[3],
            "Moreover, a cheating practice was detected between 00:00:10.00 and 00:00:40.00; the last detected "
            "sample prediction corresponds to cheating practice with 81.2% confidence.");
}

TEST(TemplateTest, StableComponentsBelowThreshold) {
  features::SelectionState sel;
  const auto quiet = key("avg:wAvg:right-pole-accelerometer16g-x");
  for (int i = 0; i < 20; ++i) {
    sel.observe(quiet, 1.0 + 1e-3 * (i % 2));
    sel.observe(k1, i);
  }
  sel.set_threshold(0.01);
  DecisionPathRecord path;
  path.steps = {{quiet, 5.0, 1.0, Branch::kLeft}, {k1, 50.0, 3.0, Branch::kLeft}};
  auto in = inputs(path);
  in.selection = &sel;
  const auto t = render_templates(in);
  EXPECT_EQ(t[1], "The avg component identified suggest that the value remain stable in the x accelerometer case.");
  EXPECT_TRUE(t[2].empty());
}

TEST(TemplateTest, EmptyPath) {
  DecisionPathRecord path;
  const auto t = render_templates(inputs(path));
  EXPECT_EQ(t[0], "No split node was traversed on the decision path.");
  EXPECT_TRUE(t[1].empty());
  EXPECT_TRUE(t[2].empty());
}

TEST(TemplateTest, Formatting) {
  EXPECT_EQ(format_time(25 * 3725 + 5, 25.0), "01:02:05.20");
  EXPECT_EQ(format_confidence(1.0), "100%");
  EXPECT_EQ(format_confidence(0.5), "50%");
  EXPECT_EQ(format_confidence(0.97349), "97.3%");
}

TEST(ExplainerTest, ConfidenceMatchesForestAndIsDeterministic) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> noise(0.0, 0.5);
  models::ForestConfig cfg;
  cfg.models = 8;
  cfg.tree.grace_period = 30;
  models::AdaptiveRandomForest forest(3, cfg, 2);
  Explainer explainer({"correct", "cheating", "incorrect"}, 25.0, {3, 1, 20});
  for (int i = 0; i < 1500; ++i) {
    const auto y = static_cast<ClassLabel>((i / 100) % 3);
    FeatureVector x;
    x.n = static_cast<std::uint64_t>(i);
    x.values = {{k1, noise(gen) + y}, {k2, noise(gen) - y}};
    x.sort();
    forest.learn_one(x, y);
    explainer.observe(x.n, forest.predict_one(x));
  }
  FeatureVector x;
  x.n = 1500;
  x.values = {{k1, 2.0}, {k2, -2.0}};
  x.sort();
  features::SelectionState sel;
  for (int i = 0; i < 10; ++i) {
    sel.observe(k1, i);
    sel.observe(k2, -i);
  }
  const auto a = explainer.explain(forest, x, &sel);
  const auto b = explainer.explain(forest, x, &sel);
  EXPECT_NEAR(a.confidence, forest.predict_proba_one(x)[a.prediction], 1e-9);
  EXPECT_EQ(a.prediction, forest.predict_one(x));
  EXPECT_EQ(a.texts, b.texts);
  EXPECT_EQ(a.gamma, b.gamma);
  ASSERT_TRUE(a.shown_path);
  EXPECT_LE(a.gamma.size(), 20u);
  ASSERT_TRUE(a.display);
  EXPECT_EQ(a.display->fallback, a.gamma.empty());
  if (!a.gamma.empty()) EXPECT_EQ(a.display->key, a.gamma.front().first);
  ASSERT_TRUE(a.cheating);
  EXPECT_NE(a.texts[3].find("cheating practice was detected"), std::string::npos);
}

}  // namespace
}  // namespace nwa::explain
