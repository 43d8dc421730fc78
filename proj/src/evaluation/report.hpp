// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "evaluation/prequential.hpp"

namespace nwa::evaluation {

struct ReportRow {
  ScenarioSpec spec;
  PrequentialMetrics metrics;
};

struct ReportOptions {
  /// Wall-clock time breaks byte-identical reruns, so it is opt-in.
  bool include_timing = false;
  /// Per-class columns; 0 takes the largest class count among the rows.
  std::size_t n_classes = 0;
};

/// Columns: data, scenario, model, accuracy, precision_macro, precision_c*,
/// recall_macro, recall_c*, crloss, rmse, mae, preq_time_s.
std::vector<std::string> report_columns(std::size_t n_classes);

std::string report_csv(const std::vector<ReportRow>& rows, const ReportOptions& options = {});
/// Aligned text table in percent, accuracy with its session std.
std::string report_text(const std::vector<ReportRow>& rows, const ReportOptions& options = {});

/// Rows parsed back from report_csv output (metrics restricted to the
/// report columns).
std::vector<ReportRow> parse_report_csv(const std::string& text);

/// `n,truth,pred,p(c0),...`; scenario D appends `cluster,bootstrap`.
std::string prediction_log_csv(const std::vector<PredictionRecord>& log, std::size_t n_classes, bool clustering);

}  // namespace nwa::evaluation
