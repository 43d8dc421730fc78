// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "evaluation/prequential.hpp"
#include "evaluation/report.hpp"
#include "gateway/run_config.hpp"
#include "stream/types.hpp"

namespace nwa::gateway {

struct Session {
  std::string name;
  stream::Stream stream;
};

/// Synthetic: one generated stream per session (seed + i), or the dump at
/// `path`. PAMAP2: one session per qualifying subject file.
std::vector<Session> load_sessions(const RunConfig& config);

std::vector<labeling::JudgeTag> load_config_tags(const RunConfig& config);

evaluation::RunOptions run_options(const RunConfig& config, std::size_t n_classes);

struct SessionFeatures {
  std::string name;
  features::DataKind kind = features::DataKind::kEngineered;
  std::uint64_t slots = 0;
  std::uint64_t emitted = 0;
  calibration::CalibrationResult calibration;
  double threshold = 0.0;
  std::size_t defined_keys = 0;
  std::size_t selected_keys = 0;
  double pipeline_seconds = 0.0;
};

struct SessionRun {
  std::string session;
  evaluation::RunResult result;
};

struct RowOutcome {
  evaluation::ScenarioSpec spec;
  evaluation::PrequentialMetrics metrics;
  std::vector<SessionRun> runs;
};

struct GridOutcome {
  std::size_t n_classes = 0;
  std::vector<SessionFeatures> features;
  std::vector<RowOutcome> rows;
};

/// Validates, loads, and runs every grid row over every session.
GridOutcome run_grid(const RunConfig& config);

std::vector<evaluation::ReportRow> report_rows(const GridOutcome& outcome);

/// Deterministic JSON summary: calibration, thresholds, digests, label maps.
std::string summary_json(const RunConfig& config, const GridOutcome& outcome);

/// Writes report.csv, report.txt, summary.json, timing.csv, predictions/ and
/// curves/ under `config.out`; returns the written paths in order.
std::vector<std::filesystem::path> write_artifacts(const RunConfig& config, const GridOutcome& outcome);

/// Calibrates every session; writes `calibration.json` and returns its text.
std::string calibrate_sessions(const RunConfig& config);

/// Re-renders `report.csv` under `config.out` as the text table.
std::string render_report(const RunConfig& config);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace nwa::gateway
