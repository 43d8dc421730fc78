// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stream/types.hpp"

namespace nwa::labeling {

using stream::ClassLabel;

struct JudgeTag {
  std::uint64_t slot = 0;
  ClassLabel label = 0;
  std::string source;

  friend bool operator==(const JudgeTag&, const JudgeTag&) = default;
};

enum class Provenance { kJudgeTags, kBestMappingOracle };
std::string_view to_string(Provenance p);

enum class JudgeMode { kFull, kCorrectOnly };
std::string_view to_string(JudgeMode m);
std::optional<JudgeMode> parse_judge_mode(std::string_view text);

/// Cluster id -> class label, with where each label came from.
struct ClusterLabelMap {
  std::vector<ClassLabel> labels;
  std::vector<Provenance> sources;
  /// Clusters left as unnamed violations in correct-only mode.
  std::vector<bool> anonymous;

  std::size_t size() const { return labels.size(); }
  /// judge_tags when any cluster label comes from tags.
  Provenance provenance() const;
};

/// Rows are clusters, columns classes.
using Confusion = std::vector<std::vector<std::uint64_t>>;

struct Mapping {
  std::vector<ClassLabel> labels;  // cluster -> class
  std::uint64_t correct = 0;
  std::uint64_t total = 0;
  double accuracy() const { return total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0; }
};

/// Exhaustive search over cluster->class permutations maximizing the matched
/// count; ties go to the lexicographically smallest permutation. Needs a
/// square matrix of size at most 8 (kDimension otherwise).
Mapping best_mapping(const Confusion& confusion);

/// Labels each cluster by majority vote of the tags landing in it (ties to
/// the earliest tag). `tag_clusters[i]` is the cluster of `tags[i]`.
/// Non-empty clusters without a tag raise kCoverage naming them; clusters
/// that never received a sample take the smallest unused labels. With a
/// `fallback` map, untagged clusters take its label (oracle provenance)
/// instead of raising.
ClusterLabelMap label_clusters(std::size_t n_clusters, std::span<const JudgeTag> tags,
                               std::span<const int> tag_clusters,
                               const std::vector<bool>& cluster_used,
                               std::size_t n_classes,
                               JudgeMode mode = JudgeMode::kFull,
                               const std::vector<ClassLabel>* fallback = nullptr);

/// Cluster assigned at the latest evaluated slot at or before `slot` (the
/// first evaluated slot when `slot` precedes all of them). `slots` is
/// ascending and aligned with `assignments`.
int cluster_at(std::span<const std::uint64_t> slots, std::span<const int> assignments, std::uint64_t slot);

struct Expansion {
  ClusterLabelMap map;
  std::vector<ClassLabel> slot_labels;  // aligned with the assignments
};

/// Propagates tags to every evaluated slot through cluster membership.
Expansion expand_tags(std::span<const std::uint64_t> slots, std::span<const int> assignments,
                      std::span<const JudgeTag> tags, std::size_t n_clusters, std::size_t n_classes,
                      JudgeMode mode = JudgeMode::kFull,
                      const std::vector<ClassLabel>* fallback = nullptr);

/// `slot,label,source` per line; blank lines and `#` comments are skipped.
std::vector<JudgeTag> parse_tags(std::string_view text);
std::vector<JudgeTag> load_tags(const std::filesystem::path& path);
std::string format_tags(std::span<const JudgeTag> tags);

/// Simulated judge: `per_class` tags per class at uniformly drawn slots whose
/// truth is that class; each label is replaced by a different class with
/// probability `noise`. Tags come back sorted by slot.
std::vector<JudgeTag> simulate_tags(std::span<const std::uint64_t> slots,
                                    std::span<const ClassLabel> truth, std::size_t n_classes,
                                    std::size_t per_class, double noise, std::uint64_t seed,
                                    JudgeMode mode = JudgeMode::kFull);

}  // namespace nwa::labeling
