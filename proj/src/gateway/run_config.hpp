// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evaluation/prequential.hpp"
#include "labeling/labeling.hpp"
#include "stream/types.hpp"

namespace nwa::gateway {

enum class Command { kCalibrate, kRun, kServe, kReport };

std::string_view to_string(stream::DatasetKind d);
std::optional<stream::DatasetKind> parse_dataset(std::string_view text);

struct RunConfig {
  stream::DatasetKind dataset = stream::DatasetKind::kSynthetic;
  /// PAMAP2 directory, or an optional synthetic stream dump.
  std::filesystem::path path;
  /// Unset fields expand to the full grid.
  std::optional<evaluation::Scenario> scenario;
  std::optional<models::ModelId> model;
  std::optional<features::DataKind> data;
  std::uint64_t seed = 1;
  std::optional<std::size_t> stride;
  std::filesystem::path tags;
  labeling::JudgeMode judge_mode = labeling::JudgeMode::kFull;
  std::filesystem::path out = "out";
  int port = 8080;
  std::string host = "127.0.0.1";

  /// Synthetic sessions, each with its own derived seed.
  std::size_t sessions = 1;
  /// Synthetic schedule `c0:120,c1:60,...`; empty takes the default.
  std::string schedule;
  std::size_t tags_per_class = 5;
  double tag_noise = 0.0;
  bool timing_in_report = false;

  /// Live session: replay speed multiplier (0 = as fast as possible),
  /// explanation cadence in slots, metrics cadence in seconds.
  double speed = 1.0;
  std::uint64_t explain_every = 250;
  double metrics_every_s = 5.0;
  std::size_t min_cheating_run = 25;
  /// Event recording for the live session.
  std::filesystem::path record;
  bool exit_on_end = false;
};

/// Every problem with the configuration, in a stable order.
std::vector<std::string> check(const RunConfig& config, Command command);
/// Throws kConfig with all problems joined by "; ".
void validate(const RunConfig& config, Command command);

/// Scenario rows in table order: raw A/B/C x gnb/hatc/arfc, then engineered
/// A/B/C x gnb/hatc/arfc and D, filtered by the configured fields.
std::vector<evaluation::ScenarioSpec> expand_grid(const RunConfig& config);

}  // namespace nwa::gateway
