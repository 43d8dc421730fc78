// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "common/error.hpp"
#include "models/factory.hpp"
#include "support/oracles.hpp"

namespace nwa::models {
namespace {

FeatureVector fv(std::initializer_list<std::pair<FeatureId, double>> values, std::uint64_t n = 0) {
  FeatureVector x;
  x.n = n;
  x.values.assign(values.begin(), values.end());
  x.sort();
  return x;
}

void expect_distribution(const Proba& p, std::size_t m) {
  ASSERT_EQ(p.size(), m);
  double total = 0.0;
  for (double v : p) {
    EXPECT_GE(v, 0.0);
    total += v;
  }
  EXPECT_NEAR(total, 1.0, 1e-9);
}

// label = (key 3 > 5) with two distractor keys; some slots omit a distractor.
struct ThresholdStream {
  std::mt19937_64 gen;
  bool flipped = false;
  explicit ThresholdStream(std::uint64_t seed) : gen(seed) {}
  std::pair<FeatureVector, ClassLabel> next(std::uint64_t n) {
    std::uniform_real_distribution<double> u(0.0, 10.0);
    const double k = u(gen);
    FeatureVector x = fv({{3, k}, {7, u(gen)}});
    if (n % 3) x.values.emplace_back(11, u(gen));
    x.n = n;
    const bool label = k > 5.0;
    return {x, static_cast<ClassLabel>(label != flipped)};
  }
};

TEST(ArgmaxTest, LowestIndexWinsTies) {
  EXPECT_EQ(argmax({0.4, 0.4, 0.2}), 0);
  EXPECT_EQ(argmax({0.2, 0.4, 0.4}), 1);
}

TEST(GaussianNBTest, ColdStartUniform) {
  GaussianNB nb(3);
  const auto p = nb.predict_proba_one(fv({{1, 2.0}}));
  for (double v : p) EXPECT_NEAR(v, 1.0 / 3.0, 1e-12);
}

TEST(GaussianNBTest, SingleClassDominates) {
  GaussianNB nb(3);
  for (int i = 0; i < 10; ++i) nb.learn_one(fv({{1, i * 0.1}}), 0);
  const auto p = nb.predict_proba_one(fv({{1, 0.3}}));
  EXPECT_NEAR(p[0], 1.0, 1e-12);
  EXPECT_EQ(nb.predict_one(fv({{1, 100.0}})), 0);
}

TEST(GaussianNBTest, SymmetricMidpoint) {
  GaussianNB nb(2);
  for (double d : {-1.0, 1.0}) {
    nb.learn_one(fv({{5, -2.0 + d}}), 0);
    nb.learn_one(fv({{5, 2.0 + d}}), 1);
  }
  const auto p = nb.predict_proba_one(fv({{5, 0.0}}));
  EXPECT_NEAR(p[0], 0.5, 1e-6);
  EXPECT_NEAR(p[1], 0.5, 1e-6);
}

TEST(GaussianNBTest, MatchesClosedFormPosterior) {
  std::mt19937_64 gen(21);
  std::normal_distribution<double> a(0.0, 1.0), b(10.0, 1.0);
  GaussianNB nb(2);
  std::vector<double> xa, xb;
  for (int i = 0; i < 100; ++i) {
    xa.push_back(a(gen));
    xb.push_back(b(gen));
    nb.learn_one(fv({{0, xa.back()}}), 0);
    nb.learn_one(fv({{0, xb.back()}}), 1);
  }
  auto density = [](const std::vector<double>& s, double x) {
    const double mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
    const double var = oracle::sample_variance(s);
    return std::exp(-(x - mean) * (x - mean) / (2 * var)) / std::sqrt(2 * M_PI * var);
  };
  const double la = 0.5 * density(xa, 2.0), lb = 0.5 * density(xb, 2.0);
  const auto p = nb.predict_proba_one(fv({{0, 2.0}}));
  EXPECT_NEAR(p[0], la / (la + lb), 1e-6);
  EXPECT_NEAR(p[1], lb / (la + lb), 1e-6);
}

TEST(GaussianNBTest, UnseenKeysAreNeutral) {
  GaussianNB nb(2);
  nb.learn_one(fv({{1, 0.0}}), 0);
  nb.learn_one(fv({{1, 1.0}}), 0);
  nb.learn_one(fv({{2, 0.0}}), 1);
  nb.learn_one(fv({{2, 1.0}}), 1);
  // Key 9 was never seen: the posterior equals the prior.
  const auto p = nb.predict_proba_one(fv({{9, 123.0}}));
  EXPECT_NEAR(p[0], 0.5, 1e-12);
  expect_distribution(p, 2);
}

TEST(GaussianNBTest, RejectsUndeclaredLabel) {
  GaussianNB nb(2);
  EXPECT_THROW(nb.learn_one(fv({{1, 0.0}}), 2), Error);
}

double threshold_accuracy(Classifier& model, std::uint64_t seed, int train, int test) {
  ThresholdStream s(seed);
  std::uint64_t n = 0;
  for (int i = 0; i < train; ++i, ++n) {
    auto [x, y] = s.next(n);
    model.learn_one(x, y);
  }
  int correct = 0;
  for (int i = 0; i < test; ++i, ++n) {
    auto [x, y] = s.next(n);
    correct += model.predict_one(x) == y;
    expect_distribution(model.predict_proba_one(x), model.n_classes());
  }
  return static_cast<double>(correct) / test;
}

TEST(HoeffdingTreeTest, LearnsThresholdConcept) {
  HoeffdingTree tree(2);
  EXPECT_GE(threshold_accuracy(tree, 1, 5000, 1000), 0.95);
  EXPECT_FALSE(tree.root().leaf);
  EXPECT_EQ(tree.root().feature, 3u);
}

TEST(HoeffdingTreeTest, IdenticalLabelsStayOneLeaf) {
  HoeffdingTree tree(3);
  std::mt19937_64 gen(2);
  std::normal_distribution<double> d;
  for (int i = 0; i < 3000; ++i) tree.learn_one(fv({{1, d(gen)}, {2, d(gen)}}), 2);
  EXPECT_TRUE(tree.root().leaf);
  EXPECT_EQ(tree.node_count(), 1u);
  EXPECT_EQ(tree.predict_one(fv({{1, 0.0}})), 2);
}

TEST(HoeffdingTreeTest, RecoversFromAbruptDrift) {
  HoeffdingTree tree(2);
  ThresholdStream s(4);
  std::uint64_t n = 0;
  for (; n < 10000; ++n) {
    auto [x, y] = s.next(n);
    tree.learn_one(x, y);
  }
  s.flipped = true;
  int correct = 0;
  for (int i = 0; i < 5000; ++i, ++n) {
    auto [x, y] = s.next(n);
    if (i >= 4000) correct += tree.predict_one(x) == y;
    tree.learn_one(x, y);
  }
  EXPECT_GE(correct / 1000.0, 0.9);
}

TEST(HoeffdingTreeTest, DepthAndSizeCaps) {
  TreeConfig cfg;
  cfg.max_depth = 1;
  cfg.grace_period = 50;
  HoeffdingTree tree(2, cfg);
  threshold_accuracy(tree, 3, 4000, 10);
  EXPECT_LE(tree.depth(), 1u);

  cfg.max_depth = 50;
  cfg.max_size = 1;
  HoeffdingTree small(2, cfg);
  threshold_accuracy(small, 3, 20000, 10);
  EXPECT_LE(small.node_count(), 1000u);
}

TEST(HoeffdingTreeTest, SplitsRouteValuesAtThreshold) {
  HoeffdingTree tree(2);
  threshold_accuracy(tree, 5, 3000, 10);
  ASSERT_FALSE(tree.root().leaf);
  const auto& root = tree.root();
  auto at = fv({{root.feature, root.threshold}});
  EXPECT_EQ(root.child(at), root.left.get());
  auto above = fv({{root.feature, std::nextafter(root.threshold, 1e9)}});
  EXPECT_EQ(root.child(above), root.right.get());
  EXPECT_EQ(root.child(fv({{999, 0.0}})), nullptr);
}

TEST(HoeffdingTreeTest, CloneIsIndependentAndEqual) {
  HoeffdingTree tree(2);
  threshold_accuracy(tree, 6, 2000, 10);
  auto copy = tree.clone();
  EXPECT_EQ(copy->digest(), tree.digest());
  copy->learn_one(fv({{3, 1.0}}), 1);
  EXPECT_NE(copy->digest(), tree.digest());
}

TEST(ErrorMonitorTest, FlagsRisingErrorRate) {
  ErrorMonitor m(1000);
  std::mt19937_64 gen(1);
  std::bernoulli_distribution low(0.05), high(0.5);
  bool drift = false;
  for (int i = 0; i < 1000; ++i) EXPECT_FALSE(m.add(low(gen)));
  for (int i = 0; i < 500 && !drift; ++i) drift = m.add(high(gen));
  EXPECT_TRUE(drift);
  EXPECT_EQ(m.size(), 0u);
}

TEST(ErrorMonitorTest, StableRateRarelyFlags) {
  ErrorMonitor m(1000);
  std::mt19937_64 gen(9);
  std::bernoulli_distribution rate(0.2);
  int flags = 0;
  for (int i = 0; i < 20000; ++i) flags += m.add(rate(gen));
  EXPECT_LE(flags, 3);
}

TEST(ForestTest, SingleUnrestrictedTreeEqualsHoeffdingTree) {
  ForestConfig cfg;
  cfg.models = 1;
  cfg.features = 0;
  cfg.lambda = 0.0;
  AdaptiveRandomForest forest(2, cfg, 77);
  HoeffdingTree tree(2, cfg.tree, 77);
  ThresholdStream s(8);
  for (std::uint64_t n = 0; n < 4000; ++n) {
    auto [x, y] = s.next(n);
    ASSERT_EQ(forest.predict_one(x), tree.predict_one(x)) << n;
    const auto pf = forest.predict_proba_one(x);
    const auto pt = tree.predict_proba_one(x);
    if (n > 0) {
      for (std::size_t c = 0; c < 2; ++c) ASSERT_NEAR(pf[c], pt[c], 1e-12);
    }
    forest.learn_one(x, y);
    tree.learn_one(x, y);
  }
}

TEST(ForestTest, AccuracyComparableToTree) {
  HoeffdingTree tree(2);
  ForestConfig cfg;
  cfg.models = 10;
  cfg.features = 2;
  AdaptiveRandomForest forest(2, cfg, 3);
  const double t = threshold_accuracy(tree, 12, 5000, 1000);
  const double f = threshold_accuracy(forest, 12, 5000, 1000);
  EXPECT_GE(f, t - 0.02);
}

TEST(ForestTest, DeterministicUnderSeed) {
  ForestConfig cfg;
  cfg.models = 5;
  cfg.features = 2;
  AdaptiveRandomForest a(2, cfg, 5), b(2, cfg, 5), c(2, cfg, 6);
  ThresholdStream s(3);
  for (std::uint64_t n = 0; n < 3000; ++n) {
    auto [x, y] = s.next(n);
    ASSERT_EQ(a.predict_one(x), b.predict_one(x));
    a.learn_one(x, y);
    b.learn_one(x, y);
    c.learn_one(x, y);
  }
  EXPECT_EQ(a.digest(), b.digest());
  EXPECT_NE(a.digest(), c.digest());
}

TEST(ForestTest, LeafSubsetsRespectSize) {
  ForestConfig cfg;
  cfg.models = 4;
  cfg.features = 1;
  AdaptiveRandomForest forest(2, cfg, 1);
  threshold_accuracy(forest, 2, 50, 1);
  for (const auto& tree : forest.trees()) {
    const auto& root = tree.root();
    if (root.leaf) {
      EXPECT_EQ(root.allowed.size(), 1u);
      EXPECT_LE(root.observers.size(), 1u);
    }
  }
}

TEST(ClassifierTest, MissingKeyRobustnessAndProbabilities) {
  std::mt19937_64 gen(44);
  std::uniform_int_distribution<int> keys(0, 40);
  std::normal_distribution<double> d;
  for (auto id : {ModelId::kGnb, ModelId::kHatc, ModelId::kArfc}) {
    ModelConfig mc;
    mc.arfc.models = 5;
    auto model = make_classifier(id, 3, 1, mc);
    for (int i = 0; i < 1500; ++i) {
      FeatureVector x;
      const int count = keys(gen) % 8;
      for (int k = 0; k < count; ++k) x.values.emplace_back(static_cast<FeatureId>(keys(gen)), d(gen));
      x.sort();
      x.values.erase(std::unique(x.values.begin(), x.values.end(),
                                 [](const auto& a, const auto& b) { return a.first == b.first; }),
                     x.values.end());
      const auto p = model->predict_proba_one(x);
      expect_distribution(p, 3);
      EXPECT_EQ(model->predict_one(x), argmax(p));
      model->learn_one(x, static_cast<ClassLabel>(i % 3));
    }
  }
}

TEST(KMeansTest, SampleAtCentroidLeavesItUnchanged) {
  KMeans km({2, 0.5, 0.0, 1.0, 1.0}, 3);
  const auto x = fv({{1, 0.0}, {2, 0.0}});
  km.predict_one(x);
  const auto c0 = km.center(0);
  const auto at = fv({{1, c0.at(1)}, {2, c0.at(2)}});
  EXPECT_EQ(km.learn_predict_one(at), 0);
  EXPECT_EQ(km.center(0), c0);
}

TEST(KMeansTest, OneStepUpdate) {
  KMeans km({2, 0.075, 0.0, 0.0, 1.0}, 1);
  EXPECT_EQ(km.learn_predict_one(fv({{4, 10.0}})), 0);
  EXPECT_DOUBLE_EQ(km.center(0).at(4), 0.75);
  EXPECT_DOUBLE_EQ(km.center(1).at(4), 0.0);
}

TEST(KMeansTest, TooFewClustersIsConfigError) {
  try {
    KMeans km({1, 0.1, 0.0, 1.0, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
  }
}

TEST(KMeansTest, SeparatedBlobsArePure) {
  KMeans km({2, 0.075, 0.0, 0.5, 1.0}, 7);
  std::mt19937_64 gen(10);
  std::normal_distribution<double> noise(0.0, 0.5);
  std::bernoulli_distribution coin(0.5);
  // Cluster id -> blob votes, after the first 200 slots.
  std::array<std::array<int, 2>, 2> votes{};
  for (int i = 0; i < 2000; ++i) {
    const int blob = coin(gen);
    const double mean = blob ? 10.0 : -10.0;
    const auto x = fv({{1, mean + noise(gen)}, {2, mean + noise(gen)}});
    const int k = km.learn_predict_one(x);
    // Oracle: nearest true mean under L1.
    const double da = std::fabs(x.values[0].second + 10) + std::fabs(x.values[1].second + 10);
    const double db = std::fabs(x.values[0].second - 10) + std::fabs(x.values[1].second - 10);
    const int truth = db < da;
    if (i >= 200) ++votes[k][truth];
  }
  const int pure = std::max(votes[0][0], votes[0][1]) + std::max(votes[1][0], votes[1][1]);
  EXPECT_GE(pure / 1800.0, 0.99);
}

TEST(KMeansTest, RepeatedInputContractsMonotonically) {
  KMeans km({3, 0.2, 0.0, 1.0, 2.0}, 11);
  const auto x = fv({{1, 3.0}, {2, -4.0}, {3, 0.5}});
  const int k = km.learn_predict_one(x);
  auto prev = km.center(k);
  for (int i = 0; i < 30; ++i) {
    ASSERT_EQ(km.learn_predict_one(x), k);
    const auto& cur = km.center(k);
    for (const auto& [id, v] : x.values) {
      EXPECT_LE(std::fabs(cur.at(id) - v), std::fabs(prev.at(id) - v));
    }
    prev = cur;
  }
}

TEST(KMeansTest, DigestDeterministic) {
  KMeans a({3, 0.075, 0.01, 0.001, 1.0}, 2), b({3, 0.075, 0.01, 0.001, 1.0}, 2);
  for (int i = 0; i < 100; ++i) {
    const auto x = fv({{static_cast<FeatureId>(i % 7), i * 0.1}, {20, -i * 0.2}});
    EXPECT_EQ(a.learn_predict_one(x), b.learn_predict_one(x));
  }
  EXPECT_EQ(a.digest(), b.digest());
}

}  // namespace
}  // namespace nwa::models
