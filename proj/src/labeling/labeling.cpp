// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "labeling/labeling.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "common/error.hpp"
#include "common/rng.hpp"

namespace nwa::labeling {

std::string_view to_string(Provenance p) {
  return p == Provenance::kJudgeTags ? "judge_tags" : "best_mapping_oracle";
}

std::string_view to_string(JudgeMode m) { return m == JudgeMode::kFull ? "full" : "correct-only"; }

std::optional<JudgeMode> parse_judge_mode(std::string_view text) {
  if (text == "full") return JudgeMode::kFull;
  if (text == "correct-only") return JudgeMode::kCorrectOnly;
  return std::nullopt;
}

Provenance ClusterLabelMap::provenance() const {
  for (auto s : sources) {
    if (s == Provenance::kJudgeTags) return Provenance::kJudgeTags;
  }
  return Provenance::kBestMappingOracle;
}

Mapping best_mapping(const Confusion& confusion) {
  const std::size_t m = confusion.size();
  for (const auto& row : confusion) {
    if (row.size() != m) {
      fail(ErrorKind::kDimension, "confusion matrix must be square, got " + std::to_string(m) + "x" +
                                      std::to_string(row.size()));
    }
  }
  if (m == 0 || m > 8) fail(ErrorKind::kDimension, "cluster count must be in 1..8");
  std::vector<ClassLabel> perm(m);
  std::iota(perm.begin(), perm.end(), ClassLabel{0});
  Mapping best;
  bool first = true;
  for (const auto& row : confusion) {
    for (auto v : row) best.total += v;
  }
  do {
    std::uint64_t matched = 0;
    for (std::size_t k = 0; k < m; ++k) matched += confusion[k][perm[k]];
    if (first || matched > best.correct) {
      best.correct = matched;
      best.labels = perm;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

ClusterLabelMap label_clusters(std::size_t n_clusters, std::span<const JudgeTag> tags,
                               std::span<const int> tag_clusters, const std::vector<bool>& cluster_used,
                               std::size_t n_classes, JudgeMode mode,
                               const std::vector<ClassLabel>* fallback) {
  if (tags.size() != tag_clusters.size()) fail(ErrorKind::kDimension, "tag / cluster count mismatch");
  // Votes per cluster: count and earliest tag index per label.
  std::vector<std::vector<std::size_t>> votes(n_clusters, std::vector<std::size_t>(n_classes, 0));
  std::vector<std::vector<std::size_t>> first(n_clusters,
                                              std::vector<std::size_t>(n_classes, tags.size()));
  // Earliest is by slot, then by position in the input.
  std::vector<std::size_t> order(tags.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return tags[a].slot < tags[b].slot; });
  std::vector<std::size_t> rank(tags.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const auto k = static_cast<std::size_t>(tag_clusters[i]);
    const auto y = tags[i].label;
    if (k >= n_clusters || y >= n_classes) fail(ErrorKind::kData, "tag outside cluster/class range");
    if (mode == JudgeMode::kCorrectOnly && y != 0) continue;
    ++votes[k][y];
    first[k][y] = std::min(first[k][y], rank[i]);
  }

  ClusterLabelMap map;
  map.labels.assign(n_clusters, 0);
  map.sources.assign(n_clusters, Provenance::kJudgeTags);
  map.anonymous.assign(n_clusters, false);
  std::vector<bool> tagged(n_clusters, false);
  std::vector<bool> label_taken(n_classes, false);
  std::string missing;
  for (std::size_t k = 0; k < n_clusters; ++k) {
    std::size_t best = n_classes;
    for (std::size_t y = 0; y < n_classes; ++y) {
      if (votes[k][y] == 0) continue;
      if (best == n_classes || votes[k][y] > votes[k][best] ||
          (votes[k][y] == votes[k][best] && first[k][y] < first[k][best])) {
        best = y;
      }
    }
    if (best != n_classes) {
      map.labels[k] = static_cast<ClassLabel>(best);
      tagged[k] = true;
      label_taken[best] = true;
      continue;
    }
    const bool used = k < cluster_used.size() ? cluster_used[k] : true;
    if (used && fallback && mode == JudgeMode::kFull) {
      map.labels[k] = (*fallback)[k];
      map.sources[k] = Provenance::kBestMappingOracle;
      tagged[k] = true;
      label_taken[map.labels[k]] = true;
      continue;
    }
    if (used && mode == JudgeMode::kFull) {
      if (!missing.empty()) missing += ", ";
      missing += std::to_string(k);
    }
  }
  if (!missing.empty()) fail(ErrorKind::kCoverage, "clusters without judge tags: " + missing);
  if (mode == JudgeMode::kCorrectOnly && !fallback &&
      std::none_of(tagged.begin(), tagged.end(), [](bool t) { return t; })) {
    fail(ErrorKind::kCoverage, "no cluster received a correct-practice tag");
  }
  // Untagged clusters take the smallest labels not used by tagged clusters.
  for (std::size_t k = 0; k < n_clusters; ++k) {
    if (tagged[k]) continue;
    map.anonymous[k] = mode == JudgeMode::kCorrectOnly;
    if (fallback && !label_taken[(*fallback)[k]]) {
      map.labels[k] = (*fallback)[k];
      map.sources[k] = Provenance::kBestMappingOracle;
      label_taken[map.labels[k]] = true;
      continue;
    }
    std::size_t y = 0;
    while (y < n_classes && label_taken[y]) ++y;
    if (y == n_classes) y = 0;
    else label_taken[y] = true;
    map.labels[k] = static_cast<ClassLabel>(y);
  }
  return map;
}

int cluster_at(std::span<const std::uint64_t> slots, std::span<const int> assignments, std::uint64_t slot) {
  if (slots.empty()) fail(ErrorKind::kData, "no evaluated slots to place a tag");
  auto it = std::upper_bound(slots.begin(), slots.end(), slot);
  const std::size_t idx = it == slots.begin() ? 0 : static_cast<std::size_t>(it - slots.begin()) - 1;
  return assignments[idx];
}

Expansion expand_tags(std::span<const std::uint64_t> slots, std::span<const int> assignments,
                      std::span<const JudgeTag> tags, std::size_t n_clusters, std::size_t n_classes,
                      JudgeMode mode, const std::vector<ClassLabel>* fallback) {
  if (slots.size() != assignments.size()) fail(ErrorKind::kDimension, "slot / assignment count mismatch");
  std::vector<int> tag_clusters;
  tag_clusters.reserve(tags.size());
  for (const auto& t : tags) tag_clusters.push_back(cluster_at(slots, assignments, t.slot));
  std::vector<bool> used(n_clusters, false);
  for (int a : assignments) {
    if (a < 0 || static_cast<std::size_t>(a) >= n_clusters) fail(ErrorKind::kData, "cluster id out of range");
    used[static_cast<std::size_t>(a)] = true;
  }
  Expansion out;
  out.map = label_clusters(n_clusters, tags, tag_clusters, used, n_classes, mode, fallback);
  out.slot_labels.reserve(assignments.size());
  for (int a : assignments) out.slot_labels.push_back(out.map.labels[static_cast<std::size_t>(a)]);
  return out;
}

std::vector<JudgeTag> parse_tags(std::string_view text) {
  std::vector<JudgeTag> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    auto bad = [&] { fail(ErrorKind::kData, "tag line " + std::to_string(line_no) + ": expected slot,label,source"); };
    if (c2 == std::string_view::npos) bad();
    JudgeTag tag;
    const auto slot_text = line.substr(0, c1);
    auto [ptr, ec] = std::from_chars(slot_text.data(), slot_text.data() + slot_text.size(), tag.slot);
    if (ec != std::errc{} || ptr != slot_text.data() + slot_text.size()) bad();
    const auto label = stream::parse_label_symbol(line.substr(c1 + 1, c2 - c1 - 1));
    if (!label) bad();
    tag.label = *label;
    tag.source = std::string(line.substr(c2 + 1));
    out.push_back(std::move(tag));
  }
  return out;
}

std::vector<JudgeTag> load_tags(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kData, "cannot read tag file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tags(buf.str());
}

std::string format_tags(std::span<const JudgeTag> tags) {
  std::string out;
  for (const auto& t : tags) {
    out += std::to_string(t.slot) + ',' + stream::label_symbol(t.label) + ',' + t.source + '\n';
  }
  return out;
}

std::vector<JudgeTag> simulate_tags(std::span<const std::uint64_t> slots, std::span<const ClassLabel> truth,
                                    std::size_t n_classes, std::size_t per_class, double noise,
                                    std::uint64_t seed, JudgeMode mode) {
  if (slots.size() != truth.size()) fail(ErrorKind::kDimension, "slot / truth count mismatch");
  if (noise < 0.0 || noise > 1.0) fail(ErrorKind::kConfig, "tag noise must lie in [0, 1]");
  Rng rng(seed);
  std::vector<JudgeTag> out;
  for (std::size_t c = 0; c < n_classes; ++c) {
    if (mode == JudgeMode::kCorrectOnly && c != 0) continue;
    std::vector<std::uint64_t> pool;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (truth[i] == c) pool.push_back(slots[i]);
    }
    for (std::size_t j = 0; j < per_class && !pool.empty(); ++j) {
      JudgeTag tag;
      tag.slot = pool[rng.below(pool.size())];
      tag.label = static_cast<ClassLabel>(c);
      if (noise > 0.0 && n_classes > 1 && rng.uniform() < noise) {
        const auto shift = 1 + rng.below(n_classes - 1);
        tag.label = static_cast<ClassLabel>((c + shift) % n_classes);
      }
      tag.source = "judge-sim-" + std::to_string(c);
      out.push_back(std::move(tag));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const JudgeTag& a, const JudgeTag& b) { return a.slot < b.slot; });
  return out;
}

}  // namespace nwa::labeling
