// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include "common/error.hpp"
#include "labeling/labeling.hpp"
#include "support/oracles.hpp"

namespace nwa::labeling {
namespace {

using Labels = std::vector<ClassLabel>;

std::uint64_t matched(const Confusion& c, const Labels& map) {
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < c.size(); ++k) total += c[k][map[k]];
  return total;
}

TEST(BestMappingTest, IdentityDominant) {
  const auto m = best_mapping({{10, 0}, {0, 10}});
  EXPECT_EQ(m.labels, (Labels{0, 1}));
  EXPECT_DOUBLE_EQ(m.accuracy(), 1.0);
}

TEST(BestMappingTest, AntiDiagonalSwaps) {
  const auto m = best_mapping({{0, 10}, {10, 0}});
  EXPECT_EQ(m.labels, (Labels{1, 0}));
  EXPECT_DOUBLE_EQ(m.accuracy(), 1.0);
}

TEST(BestMappingTest, MixedTwoByTwo) {
  const auto m = best_mapping({{5, 3}, {2, 6}});
  EXPECT_EQ(m.labels, (Labels{0, 1}));
  EXPECT_EQ(m.correct, 11u);
  EXPECT_EQ(m.total, 16u);
  EXPECT_DOUBLE_EQ(m.accuracy(), 11.0 / 16.0);
}

TEST(BestMappingTest, TiesTakeLexicographicallySmallest) {
  const auto m = best_mapping({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
  EXPECT_EQ(m.labels, (Labels{0, 1, 2}));
}

TEST(BestMappingTest, EmptyConfusionHasZeroAccuracy) {
  const auto m = best_mapping({{0, 0}, {0, 0}});
  EXPECT_EQ(m.total, 0u);
  EXPECT_DOUBLE_EQ(m.accuracy(), 0.0);
}

TEST(BestMappingTest, NonSquareIsDimensionError) {
  try {
    best_mapping({{1, 2, 3}, {4, 5, 6}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDimension);
  }
}

TEST(BestMappingTest, MatchesOracleAndBeatsRandomMappings) {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<int> cell(0, 40);
  for (std::size_t m = 2; m <= 5; ++m) {
    for (int trial = 0; trial < 200; ++trial) {
      Confusion c(m, std::vector<std::uint64_t>(m));
      for (auto& row : c) {
        for (auto& v : row) v = static_cast<std::uint64_t>(cell(gen));
      }
      const auto got = best_mapping(c);
      const auto want = oracle::brute_mapping(c);
      ASSERT_EQ(got.correct, want.matched);
      ASSERT_EQ(std::vector<int>(got.labels.begin(), got.labels.end()), want.labels);
      Labels perm(m);
      std::iota(perm.begin(), perm.end(), ClassLabel{0});
      for (int r = 0; r < 10; ++r) {
        std::shuffle(perm.begin(), perm.end(), gen);
        EXPECT_GE(got.correct, matched(c, perm));
      }
    }
  }
}

TEST(BestMappingTest, RelabelingInvariance) {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> cell(0, 30);
  for (int trial = 0; trial < 200; ++trial) {
    Confusion c(3, std::vector<std::uint64_t>(3));
    for (auto& row : c) {
      for (auto& v : row) v = static_cast<std::uint64_t>(cell(gen));
    }
    std::vector<std::size_t> perm = {0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), gen);
    Confusion permuted(3);
    for (std::size_t k = 0; k < 3; ++k) permuted[k] = c[perm[k]];
    EXPECT_EQ(best_mapping(c).correct, best_mapping(permuted).correct);
  }
}

std::vector<JudgeTag> tags_of(std::initializer_list<std::pair<std::uint64_t, ClassLabel>> items) {
  std::vector<JudgeTag> out;
  for (auto [slot, label] : items) out.push_back({slot, label, "j"});
  return out;
}

TEST(ExpandTagsTest, OneTagPerCluster) {
  const std::vector<std::uint64_t> slots = {0, 1, 2, 3, 4, 5};
  const std::vector<int> assign = {2, 2, 0, 0, 1, 1};
  const auto tags = tags_of({{0, 1}, {2, 2}, {4, 0}});
  const auto e = expand_tags(slots, assign, tags, 3, 3);
  EXPECT_EQ(e.map.labels, (Labels{2, 0, 1}));
  EXPECT_EQ(e.slot_labels, (Labels{1, 1, 2, 2, 0, 0}));
  EXPECT_EQ(e.map.provenance(), Provenance::kJudgeTags);
}

TEST(ExpandTagsTest, MajorityVote) {
  const std::vector<std::uint64_t> slots = {0, 1, 2, 3};
  const std::vector<int> assign = {0, 0, 0, 1};
  const auto tags = tags_of({{0, 0}, {1, 0}, {2, 1}, {3, 1}});
  const auto e = expand_tags(slots, assign, tags, 2, 2);
  EXPECT_EQ(e.map.labels[0], 0);
}

TEST(ExpandTagsTest, TiesGoToEarliestTag) {
  const std::vector<std::uint64_t> slots = {0, 1, 2, 3};
  const std::vector<int> assign = {0, 0, 0, 1};
  const auto tags = tags_of({{2, 0}, {1, 1}, {3, 0}});
  const auto e = expand_tags(slots, assign, tags, 2, 2);
  EXPECT_EQ(e.map.labels[0], 1);
}

TEST(ExpandTagsTest, FallbackFillsUntaggedClusters) {
  const std::vector<std::uint64_t> slots = {0, 1, 2};
  const std::vector<int> assign = {0, 1, 2};
  const auto tags = tags_of({{0, 0}});
  const std::vector<ClassLabel> fallback = {0, 2, 1};
  const auto ex = expand_tags(slots, assign, tags, 3, 3, JudgeMode::kFull, &fallback);
  EXPECT_EQ(ex.map.labels, fallback);
  EXPECT_EQ(ex.map.sources[0], Provenance::kJudgeTags);
  EXPECT_EQ(ex.map.sources[1], Provenance::kBestMappingOracle);
  EXPECT_EQ(ex.map.provenance(), Provenance::kJudgeTags);
  const auto none = expand_tags(slots, assign, {}, 3, 3, JudgeMode::kFull, &fallback);
  EXPECT_EQ(none.map.provenance(), Provenance::kBestMappingOracle);
}

TEST(ExpandTagsTest, UntaggedClusterIsCoverageError) {
  const std::vector<std::uint64_t> slots = {0, 1, 2};
  const std::vector<int> assign = {0, 1, 2};
  const auto tags = tags_of({{0, 0}});
  try {
    expand_tags(slots, assign, tags, 3, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCoverage);
    EXPECT_NE(std::string(e.what()).find("1, 2"), std::string::npos);
  }
}

TEST(ExpandTagsTest, EmptyClusterTakesUnusedLabel) {
  const std::vector<std::uint64_t> slots = {0, 1};
  const std::vector<int> assign = {0, 2};
  const auto tags = tags_of({{0, 0}, {1, 1}});
  const auto e = expand_tags(slots, assign, tags, 3, 3);
  EXPECT_EQ(e.map.labels, (Labels{0, 2, 1}));
}

TEST(ExpandTagsTest, TagBetweenEvaluatedSlotsUsesPrecedingOne) {
  const std::vector<std::uint64_t> slots = {10, 20, 30};
  const std::vector<int> assign = {0, 1, 0};
  EXPECT_EQ(cluster_at(slots, assign, 25), 1);
  EXPECT_EQ(cluster_at(slots, assign, 30), 0);
  EXPECT_EQ(cluster_at(slots, assign, 3), 0);
}

TEST(ExpandTagsTest, CorrectOnlyLeavesViolationsAnonymous) {
  const std::vector<std::uint64_t> slots = {0, 1, 2};
  const std::vector<int> assign = {1, 0, 2};
  const auto tags = tags_of({{0, 0}, {1, 2}});
  const auto e = expand_tags(slots, assign, tags, 3, 3, JudgeMode::kCorrectOnly);
  EXPECT_EQ(e.map.labels[1], 0);
  EXPECT_FALSE(e.map.anonymous[1]);
  EXPECT_TRUE(e.map.anonymous[0]);
  EXPECT_TRUE(e.map.anonymous[2]);
  EXPECT_NE(e.map.labels[0], 0);
  EXPECT_NE(e.map.labels[2], 0);
  EXPECT_NE(e.map.labels[0], e.map.labels[2]);
}

TEST(ExpandTagsTest, EqualsBestMappingWithMajorityTags) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 300;
    std::vector<std::uint64_t> slots(n);
    std::iota(slots.begin(), slots.end(), std::uint64_t{0});
    std::vector<int> assign(n);
    Labels truth(n);
    std::uniform_int_distribution<int> cls(0, 2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<int> perm = {0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), gen);
    for (std::size_t i = 0; i < n; ++i) {
      truth[i] = static_cast<ClassLabel>(cls(gen));
      assign[i] = u(gen) < 0.8 ? perm[truth[i]] : cls(gen);
    }
    Confusion c(3, std::vector<std::uint64_t>(3, 0));
    for (std::size_t i = 0; i < n; ++i) ++c[assign[i]][truth[i]];
    const auto best = best_mapping(c);
    std::vector<JudgeTag> tags;
    for (int k = 0; k < 3; ++k) {
      const auto it = std::find(assign.begin(), assign.end(), k);
      ASSERT_NE(it, assign.end());
      const auto slot = static_cast<std::uint64_t>(it - assign.begin());
      tags.push_back({slot, best.labels[k], "oracle"});
    }
    const auto e = expand_tags(slots, assign, tags, 3, 3);
    EXPECT_EQ(e.map.labels, best.labels);
  }
}

TEST(ExpandTagsTest, SimulatedTagsTrackMappedAccuracy) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 gen(seed);
    const std::size_t n = 1000;
    std::vector<std::uint64_t> slots(n);
    std::vector<int> assign(n);
    Labels truth(n);
    std::vector<int> perm = {0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), gen);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> cls(0, 2);
    for (std::size_t i = 0; i < n; ++i) {
      slots[i] = 3750 + 10 * i;
      truth[i] = static_cast<ClassLabel>(i * 3 / n);
      assign[i] = u(gen) < 0.95 ? perm[truth[i]] : cls(gen);
    }
    Confusion c(3, std::vector<std::uint64_t>(3, 0));
    for (std::size_t i = 0; i < n; ++i) ++c[assign[i]][truth[i]];
    const double mapped = best_mapping(c).accuracy();
    const auto tags = simulate_tags(slots, truth, 3, 5, 0.0, seed);
    ASSERT_EQ(tags.size(), 15u);
    const auto e = expand_tags(slots, assign, tags, 3, 3);
    std::size_t agree = 0;
    for (std::size_t i = 0; i < n; ++i) agree += e.slot_labels[i] == truth[i];
    EXPECT_GE(static_cast<double>(agree) / n, mapped - 0.01) << "seed " << seed;
  }
}

TEST(TagsTest, SimulationIsDeterministicSortedAndTruthful) {
  std::vector<std::uint64_t> slots(600);
  Labels truth(600);
  for (std::size_t i = 0; i < 600; ++i) {
    slots[i] = i;
    truth[i] = static_cast<ClassLabel>(i / 200);
  }
  const auto a = simulate_tags(slots, truth, 3, 5, 0.0, 9);
  EXPECT_EQ(a, simulate_tags(slots, truth, 3, 5, 0.0, 9));
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end(),
                             [](const JudgeTag& x, const JudgeTag& y) { return x.slot < y.slot; }));
  for (const auto& t : a) EXPECT_EQ(t.label, truth[t.slot]);
  const auto noisy = simulate_tags(slots, truth, 3, 200, 1.0, 9);
  for (const auto& t : noisy) EXPECT_NE(t.label, truth[t.slot]);
  const auto correct = simulate_tags(slots, truth, 3, 5, 0.0, 9, JudgeMode::kCorrectOnly);
  ASSERT_EQ(correct.size(), 5u);
  for (const auto& t : correct) EXPECT_EQ(t.label, 0);
}

TEST(TagsTest, FileRoundTrip) {
  const auto tags = tags_of({{12, 0}, {400, 2}, {999, 1}});
  const auto text = format_tags(tags);
  EXPECT_EQ(text, "12,c0,j\n400,c2,j\n999,c1,j\n");
  EXPECT_EQ(parse_tags("# header\n" + text + "\n"), tags);
  const auto path = std::filesystem::temp_directory_path() / "nwa_tags_test.csv";
  std::ofstream(path) << text;
  EXPECT_EQ(load_tags(path), tags);
  std::filesystem::remove(path);
}

TEST(TagsTest, MalformedLinesAreDataErrors) {
  for (const char* bad : {"12,c0", "x,c0,j", "12,q9,j", "12,c0"}) {
    try {
      parse_tags(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kData);
      EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
    }
  }
}

}  // namespace
}  // namespace nwa::labeling
