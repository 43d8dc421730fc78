// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "evaluation/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "common/error.hpp"

namespace nwa::evaluation {

namespace {

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::size_t class_count(const std::vector<ReportRow>& rows, const ReportOptions& options) {
  if (options.n_classes) return options.n_classes;
  std::size_t n = 0;
  for (const auto& r : rows) n = std::max(n, r.metrics.n_classes);
  return n ? n : 3;
}

std::string model_label(const ScenarioSpec& spec) {
  return spec.id == Scenario::kD ? "Clustering" : std::string(models::to_string(spec.model));
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::vector<std::string> report_columns(std::size_t n_classes) {
  std::vector<std::string> cols = {"data", "scenario", "model", "accuracy", "precision_macro"};
  for (std::size_t c = 0; c < n_classes; ++c) cols.push_back("precision_c" + std::to_string(c));
  cols.push_back("recall_macro");
  for (std::size_t c = 0; c < n_classes; ++c) cols.push_back("recall_c" + std::to_string(c));
  for (const char* c : {"crloss", "rmse", "mae", "preq_time_s"}) cols.push_back(c);
  return cols;
}

std::string report_csv(const std::vector<ReportRow>& rows, const ReportOptions& options) {
  const std::size_t n = class_count(rows, options);
  std::string out;
  const auto cols = report_columns(n);
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += '\n';
  for (const auto& r : rows) {
    const auto& m = r.metrics;
    std::vector<std::string> cells = {std::string(features::to_string(r.spec.kind)),
                                      std::string(to_string(r.spec.id)),
                                      std::string(models::to_string(r.spec.model)), fixed(m.accuracy),
                                      fixed(m.precision_macro)};
    for (std::size_t c = 0; c < n; ++c) cells.push_back(c < m.precision.size() ? fixed(m.precision[c]) : "");
    cells.push_back(fixed(m.recall_macro));
    for (std::size_t c = 0; c < n; ++c) cells.push_back(c < m.recall.size() ? fixed(m.recall[c]) : "");
    cells.push_back(fixed(m.crloss));
    cells.push_back(fixed(m.rmse));
    cells.push_back(fixed(m.mae));
    cells.push_back(options.include_timing ? fixed(m.preq_time_s, 3) : "");
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
    out += '\n';
  }
  return out;
}

std::string report_text(const std::vector<ReportRow>& rows, const ReportOptions& options) {
  const std::size_t n = class_count(rows, options);
  std::vector<std::string> header = {"Data", "Scenario", "Model", "Accuracy", "Precision"};
  for (std::size_t c = 0; c < n; ++c) header.push_back("#" + std::to_string(c + 1));
  header.push_back("Recall");
  for (std::size_t c = 0; c < n; ++c) header.push_back("#" + std::to_string(c + 1));
  for (const char* h : {"crloss", "RMSE", "MAE", "Preq. time (s)"}) header.push_back(h);

  std::vector<std::vector<std::string>> table = {header};
  for (const auto& r : rows) {
    const auto& m = r.metrics;
    std::string acc = fixed(100.0 * m.accuracy, 2);
    if (m.sessions > 1) acc += " ± " + fixed(100.0 * m.accuracy_std, 2);
    std::vector<std::string> line = {r.spec.kind == DataKind::kRaw ? "Raw" : "Engineered",
                                     std::string(to_string(r.spec.id)), model_label(r.spec), acc,
                                     fixed(100.0 * m.precision_macro, 2)};
    for (std::size_t c = 0; c < n; ++c) line.push_back(c < m.precision.size() ? fixed(100.0 * m.precision[c], 2) : "");
    line.push_back(fixed(100.0 * m.recall_macro, 2));
    for (std::size_t c = 0; c < n; ++c) line.push_back(c < m.recall.size() ? fixed(100.0 * m.recall[c], 2) : "");
    line.push_back(fixed(m.crloss, 4));
    line.push_back(fixed(m.rmse, 4));
    line.push_back(fixed(m.mae, 4));
    line.push_back(options.include_timing ? fixed(m.preq_time_s, 2) : "-");
    table.push_back(std::move(line));
  }
  // Display width counts code points so the ± sign aligns.
  auto width = [](const std::string& s) {
    std::size_t w = 0;
    for (unsigned char c : s) w += (c & 0xC0) != 0x80;
    return w;
  };
  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) widths[i] = std::max(widths[i], width(line[i]));
  }
  std::string out;
  for (std::size_t r = 0; r < table.size(); ++r) {
    for (std::size_t i = 0; i < table[r].size(); ++i) {
      if (i) out += "  ";
      const auto pad = widths[i] - width(table[r][i]);
      if (i < 3) out += table[r][i] + std::string(pad, ' ');
      else out += std::string(pad, ' ') + table[r][i];
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (auto w : widths) total += w;
      out += std::string(total + 2 * (widths.size() - 1), '-') + '\n';
    }
  }
  return out;
}

std::vector<ReportRow> parse_report_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::kData, "empty report");
  const auto header = split(line, ',');
  std::size_t n = 0;
  for (const auto& h : header) n += h.starts_with("precision_c");
  if (header != report_columns(n)) fail(ErrorKind::kData, "report header does not match the report columns");
  std::vector<ReportRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) {
      fail(ErrorKind::kData, "report line " + std::to_string(line_no) + ": wrong cell count");
    }
    ReportRow r;
    const auto kind = features::parse_data_kind(cells[0]);
    const auto sc = parse_scenario(cells[1]);
    const auto model = models::parse_model_id(cells[2]);
    if (!kind || !sc || !model) fail(ErrorKind::kData, "report line " + std::to_string(line_no) + ": bad key");
    r.spec.kind = *kind;
    r.spec.id = *sc;
    r.spec.model = *model;
    auto num = [&](std::size_t i) { return cells[i].empty() ? 0.0 : std::stod(cells[i]); };
    auto& m = r.metrics;
    m.n_classes = n;
    std::size_t i = 3;
    m.accuracy = num(i++);
    m.precision_macro = num(i++);
    for (std::size_t c = 0; c < n; ++c) m.precision.push_back(num(i++));
    m.recall_macro = num(i++);
    for (std::size_t c = 0; c < n; ++c) m.recall.push_back(num(i++));
    m.crloss = num(i++);
    m.rmse = num(i++);
    m.mae = num(i++);
    m.preq_time_s = num(i++);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string prediction_log_csv(const std::vector<PredictionRecord>& log, std::size_t n_classes, bool clustering) {
  std::string out = "n,truth,pred";
  for (std::size_t c = 0; c < n_classes; ++c) out += ",p(c" + std::to_string(c) + ")";
  if (clustering) out += ",cluster,bootstrap";
  out += '\n';
  for (const auto& r : log) {
    out += std::to_string(r.n) + ',';
    if (r.truth) out += stream::label_symbol(*r.truth);
    out += ',' + stream::label_symbol(r.pred);
    for (std::size_t c = 0; c < n_classes; ++c) out += ',' + fixed(c < r.proba.size() ? r.proba[c] : 0.0);
    if (clustering) out += ',' + std::to_string(r.cluster) + ',' + (r.bootstrap ? "1" : "0");
    out += '\n';
  }
  return out;
}

}  // namespace nwa::evaluation
