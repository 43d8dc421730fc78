// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "gateway/runner.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "common/digest.hpp"
#include "common/error.hpp"
#include "stream/pamap2.hpp"
#include "stream/stream_io.hpp"
#include "stream/synthetic.hpp"

namespace nwa::gateway {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using evaluation::Scenario;
using features::DataKind;

namespace {

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string row_name(const evaluation::ScenarioSpec& spec) {
  return std::string(features::to_string(spec.kind)) + "-" + std::string(evaluation::to_string(spec.id)) + "-" +
         std::string(models::to_string(spec.model));
}

json windows_json(const calibration::WindowSet& w) {
  return json{{"w_Q1", w.q1}, {"w_Q2", w.q2}, {"w_Q3", w.q3}, {"w_avg", w.avg}};
}

json calibration_json(const calibration::CalibrationResult& c) {
  json spacings = json::array();
  for (const auto& s : c.spacings) spacings.push_back({{"address", s.address.str()}, {"v", s.v}});
  json excluded = json::array();
  for (const auto& a : c.excluded) excluded.push_back(a.str());
  return json{{"k", c.k}, {"windows", windows_json(c.windows)}, {"spacings", spacings}, {"excluded", excluded}};
}

json label_map_json(const labeling::ClusterLabelMap& m) {
  json clusters = json::array();
  for (std::size_t k = 0; k < m.size(); ++k) {
    clusters.push_back({{"cluster", k},
                        {"label", stream::label_symbol(m.labels[k])},
                        {"source", labeling::to_string(m.sources[k])},
                        {"anonymous", static_cast<bool>(m.anonymous[k])}});
  }
  return json{{"provenance", labeling::to_string(m.provenance())}, {"clusters", clusters}};
}

std::string curve_csv(const std::vector<evaluation::CurvePoint>& curve) {
  std::string out = "n,accuracy,crloss\n";
  char buf[96];
  for (const auto& p : curve) {
    std::snprintf(buf, sizeof buf, "%llu,%.6f,%.6f\n", static_cast<unsigned long long>(p.n), p.accuracy, p.crloss);
    out += buf;
  }
  return out;
}

}  // namespace

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kData, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kData, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorKind::kData, "cannot write " + path.string());
}

std::vector<Session> load_sessions(const RunConfig& config) {
  std::vector<Session> out;
  if (config.dataset == stream::DatasetKind::kPamap2) {
    for (auto& s : stream::load_pamap2_subjects(config.path)) out.push_back({s.name, std::move(s.stream)});
    return out;
  }
  if (!config.path.empty()) {
    if (!fs::exists(config.path)) fail(ErrorKind::kData, "stream dump not found: " + config.path.string());
    std::ifstream in(config.path);
    if (!in) fail(ErrorKind::kData, "cannot read " + config.path.string());
    out.push_back({config.path.stem().string(), stream::load_stream(in)});
    return out;
  }
  const auto schedule = config.schedule.empty() ? stream::default_schedule() : stream::parse_schedule(config.schedule);
  for (std::size_t i = 0; i < config.sessions; ++i) {
    const std::uint64_t seed = config.seed + i;
    out.push_back({"synthetic-" + std::to_string(seed), stream::generate_synthetic(seed, schedule)});
  }
  return out;
}

std::vector<labeling::JudgeTag> load_config_tags(const RunConfig& config) {
  if (config.tags.empty()) return {};
  if (!fs::exists(config.tags)) fail(ErrorKind::kData, "tag file not found: " + config.tags.string());
  return labeling::load_tags(config.tags);
}

evaluation::RunOptions run_options(const RunConfig& config, std::size_t n_classes) {
  evaluation::RunOptions o;
  o.eval.judge_mode = config.judge_mode;
  o.eval.kmeans = config.dataset == stream::DatasetKind::kPamap2 ? models::KMeansConfig::pamap2()
                                                                  : models::KMeansConfig::nwgti();
  o.eval.kmeans.n_clusters = static_cast<int>(n_classes);
  o.tags_per_class = config.tags_per_class;
  o.tag_noise = config.tag_noise;
  return o;
}

GridOutcome run_grid(const RunConfig& config) {
  validate(config, Command::kRun);
  const auto grid = expand_grid(config);
  auto sessions = load_sessions(config);
  const auto tags = load_config_tags(config);
  GridOutcome out;
  out.n_classes = sessions.front().stream.descriptor.classes.size();
  for (const auto& spec : grid) out.rows.push_back({spec, {}, {}});

  auto options = run_options(config, out.n_classes);
  options.tags = tags;
  for (std::size_t si = 0; si < sessions.size(); ++si) {
    const auto& session = sessions[si];
    if (session.stream.descriptor.classes.size() != out.n_classes) {
      fail(ErrorKind::kData, "session " + session.name + " has a different class set");
    }
    const std::uint64_t seed = config.seed + si;
    for (auto kind : {DataKind::kRaw, DataKind::kEngineered}) {
      std::set<std::size_t> strides;
      for (const auto& spec : grid) {
        if (spec.kind == kind) strides.insert(spec.stride);
      }
      if (strides.empty()) continue;
      const std::vector<std::size_t> stride_list(strides.begin(), strides.end());
      features::PipelineConfig pc;
      pc.kind = kind;
      const auto set = evaluation::extract_samples(session.stream, pc, stride_list);
      out.features.push_back({session.name, kind, set.slots, set.emitted, set.calibration, set.threshold,
                              set.defined_keys, set.selected_keys, set.pipeline_seconds});
      for (auto& row : out.rows) {
        if (row.spec.kind != kind) continue;
        row.runs.push_back({session.name, evaluation::run_prequential(set.samples, row.spec, out.n_classes, seed, options)});
      }
    }
  }
  for (auto& row : out.rows) {
    std::vector<evaluation::PrequentialMetrics> per;
    for (const auto& r : row.runs) per.push_back(r.result.metrics);
    row.metrics = evaluation::aggregate(per);
  }
  return out;
}

std::vector<evaluation::ReportRow> report_rows(const GridOutcome& outcome) {
  std::vector<evaluation::ReportRow> rows;
  for (const auto& r : outcome.rows) rows.push_back({r.spec, r.metrics});
  return rows;
}

std::string summary_json(const RunConfig& config, const GridOutcome& outcome) {
  json sessions = json::array();
  for (const auto& f : outcome.features) {
    sessions.push_back({{"session", f.name},
                        {"data", features::to_string(f.kind)},
                        {"slots", f.slots},
                        {"emitted", f.emitted},
                        {"calibration", calibration_json(f.calibration)},
                        {"threshold_t2", f.threshold},
                        {"defined_keys", f.defined_keys},
                        {"selected_keys", f.selected_keys}});
  }
  json rows = json::array();
  for (const auto& r : outcome.rows) {
    json runs = json::array();
    Digest combined;
    for (const auto& s : r.runs) {
      combined.add(s.result.digest);
      json run = {{"session", s.session},
                  {"samples", s.result.metrics.samples},
                  {"learn_calls", s.result.metrics.learn_calls},
                  {"accuracy", s.result.metrics.accuracy},
                  {"digest", hex(s.result.digest)}};
      if (s.result.metrics.online_accuracy) run["online_accuracy"] = *s.result.metrics.online_accuracy;
      if (s.result.metrics.agreement) run["agreement"] = *s.result.metrics.agreement;
      if (s.result.label_map) {
        run["tags"] = s.result.tags.size();
        run["label_map"] = label_map_json(*s.result.label_map);
      }
      runs.push_back(std::move(run));
    }
    json row = {{"row", row_name(r.spec)},
                {"stride", r.spec.stride},
                {"partitions", r.spec.partitions},
                {"sessions", r.metrics.sessions},
                {"samples", r.metrics.samples},
                {"accuracy", r.metrics.accuracy},
                {"accuracy_std", r.metrics.accuracy_std},
                {"precision_micro", r.metrics.precision_micro},
                {"recall_micro", r.metrics.recall_micro},
                {"crloss", r.metrics.crloss}};
    if (r.metrics.online_accuracy) row["online_accuracy"] = *r.metrics.online_accuracy;
    if (r.metrics.agreement) row["agreement"] = *r.metrics.agreement;
    row["digest"] = hex(combined.value());
    row["runs"] = std::move(runs);
    rows.push_back(std::move(row));
  }
  json doc = {{"dataset", to_string(config.dataset)},
              {"seed", config.seed},
              {"judge_mode", labeling::to_string(config.judge_mode)},
              {"n_classes", outcome.n_classes},
              {"sessions", sessions},
              {"rows", rows}};
  return doc.dump(2) + "\n";
}

std::vector<fs::path> write_artifacts(const RunConfig& config, const GridOutcome& outcome) {
  std::vector<fs::path> written;
  auto put = [&](const fs::path& rel, const std::string& text) {
    write_file(config.out / rel, text);
    written.push_back(config.out / rel);
  };
  evaluation::ReportOptions ro;
  ro.include_timing = config.timing_in_report;
  ro.n_classes = outcome.n_classes;
  const auto rows = report_rows(outcome);
  put("report.csv", evaluation::report_csv(rows, ro));
  put("report.txt", evaluation::report_text(rows, ro));
  put("summary.json", summary_json(config, outcome));

  std::string timing = "row,session,samples,preq_time_s,per_sample_ms\n";
  char buf[160];
  for (const auto& r : outcome.rows) {
    for (const auto& s : r.runs) {
      const auto& m = s.result.metrics;
      std::snprintf(buf, sizeof buf, "%s,%s,%llu,%.6f,%.6f\n", row_name(r.spec).c_str(), s.session.c_str(),
                    static_cast<unsigned long long>(m.samples), m.preq_time_s, m.per_sample_ms);
      timing += buf;
    }
  }
  put("timing.csv", timing);

  for (const auto& r : outcome.rows) {
    const bool clustering = r.spec.id == Scenario::kD;
    for (const auto& s : r.runs) {
      const auto stem = row_name(r.spec) + "-" + s.session + ".csv";
      put(fs::path("predictions") / stem, evaluation::prediction_log_csv(s.result.log, outcome.n_classes, clustering));
      if (clustering) put(fs::path("curves") / stem, curve_csv(s.result.curve));
    }
  }
  return written;
}

std::string calibrate_sessions(const RunConfig& config) {
  validate(config, Command::kCalibrate);
  const auto sessions = load_sessions(config);
  json out = json::array();
  for (const auto& s : sessions) {
    const auto& d = s.stream.descriptor;
    calibration::CalibrationConfig cc;
    const auto k = calibration::calibration_length(d, cc);
    if (s.stream.slots.size() < k) {
      fail(ErrorKind::kData, "session " + s.name + " is shorter than the calibration interval");
    }
    const auto result = calibration::calibrate(d, std::span(s.stream.slots).first(k), cc);
    json entry = {{"session", s.name}, {"slots", s.stream.slots.size()}, {"r_min", d.r_min}, {"r_max", d.r_max}};
    entry.update(calibration_json(result));
    out.push_back(std::move(entry));
  }
  const std::string text = out.dump(2) + "\n";
  write_file(config.out / "calibration.json", text);
  return text;
}

std::string render_report(const RunConfig& config) {
  const auto path = config.out / "report.csv";
  if (!fs::exists(path)) fail(ErrorKind::kData, "no report at " + path.string());
  const auto rows = evaluation::parse_report_csv(read_file(path));
  std::size_t n = 0;
  for (const auto& r : rows) n = std::max(n, r.metrics.n_classes);
  evaluation::ReportOptions ro;
  ro.n_classes = n;
  ro.include_timing = config.timing_in_report;
  return evaluation::report_text(rows, ro);
}

}  // namespace nwa::gateway
