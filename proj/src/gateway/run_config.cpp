// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "gateway/run_config.hpp"

#include "common/error.hpp"
#include "stream/synthetic.hpp"

namespace nwa::gateway {

using evaluation::Scenario;
using features::DataKind;
using models::ModelId;

std::string_view to_string(stream::DatasetKind d) {
  return d == stream::DatasetKind::kPamap2 ? "pamap2" : "synthetic";
}

std::optional<stream::DatasetKind> parse_dataset(std::string_view text) {
  if (text == "synthetic") return stream::DatasetKind::kSynthetic;
  if (text == "pamap2") return stream::DatasetKind::kPamap2;
  return std::nullopt;
}

std::vector<std::string> check(const RunConfig& c, Command command) {
  std::vector<std::string> problems;
  if (c.dataset == stream::DatasetKind::kPamap2 && c.path.empty()) {
    problems.push_back("--dataset pamap2 needs --path");
  }
  if (c.scenario == Scenario::kD) {
    if (c.data == DataKind::kRaw) problems.push_back("scenario D runs on engineered data, not --data raw");
    if (c.model && *c.model != ModelId::kKMeans) problems.push_back("scenario D uses --model kmeans");
  } else if (c.scenario && c.model == ModelId::kKMeans) {
    problems.push_back("--model kmeans is only valid with --scenario D");
  }
  if (!c.scenario && c.model == ModelId::kKMeans && c.data == DataKind::kRaw) {
    problems.push_back("--model kmeans needs engineered data");
  }
  if (c.stride && *c.stride == 0) problems.push_back("--stride must be positive");
  if (c.sessions == 0) problems.push_back("--sessions must be positive");
  if (c.dataset == stream::DatasetKind::kPamap2 && c.sessions != 1) {
    problems.push_back("--sessions applies to synthetic data; PAMAP2 sessions are subjects");
  }
  if (c.tag_noise < 0.0 || c.tag_noise > 1.0) problems.push_back("--tag-noise must lie in [0, 1]");
  if (c.tags_per_class == 0) problems.push_back("--tags-per-class must be positive");
  if (!c.tags.empty() && c.scenario && *c.scenario != Scenario::kD) {
    problems.push_back("--tags only applies to scenario D");
  }
  if (!c.schedule.empty()) {
    try {
      for (const auto& seg : stream::parse_schedule(c.schedule)) {
        if (!(seg.duration_s > 0.0)) {
          problems.push_back("--schedule: segment durations must be positive");
          break;
        }
      }
    } catch (const Error& e) {
      problems.push_back(std::string("--schedule: ") + e.what());
    }
  }
  if (command == Command::kServe) {
    if (c.port < 0 || c.port > 65535) problems.push_back("--port must lie in [0, 65535]");
    if (c.speed < 0.0) problems.push_back("--speed must be non-negative");
    if (c.explain_every == 0) problems.push_back("--explain-every must be positive");
    if (c.metrics_every_s <= 0.0) problems.push_back("--metrics-every must be positive");
    if (c.min_cheating_run == 0) problems.push_back("--min-cheating-run must be positive");
    if (c.scenario && *c.scenario != Scenario::kD && *c.scenario != Scenario::kA) {
      problems.push_back("serve runs scenario A or D");
    }
    if (c.scenario == Scenario::kA && c.model && *c.model != ModelId::kArfc) {
      problems.push_back("serve explains with a forest: scenario A needs --model arfc");
    }
  }
  if (command == Command::kRun || command == Command::kReport || command == Command::kCalibrate) {
    if (c.out.empty()) problems.push_back("--out must not be empty");
  }
  if (command == Command::kRun && problems.empty() && expand_grid(c).empty()) {
    problems.push_back("the selected scenario, model and data give an empty grid");
  }
  return problems;
}

void validate(const RunConfig& config, Command command) {
  const auto problems = check(config, command);
  if (problems.empty()) return;
  std::string msg;
  for (const auto& p : problems) msg += (msg.empty() ? "" : "; ") + p;
  fail(ErrorKind::kConfig, msg);
}

std::vector<evaluation::ScenarioSpec> expand_grid(const RunConfig& c) {
  std::vector<evaluation::ScenarioSpec> out;
  auto add = [&](Scenario s, DataKind kind, ModelId model) {
    if (c.scenario && *c.scenario != s) return;
    if (c.data && *c.data != kind) return;
    if (c.model && *c.model != model) return;
    auto spec = evaluation::make_scenario(s, kind, model, c.dataset);
    if (c.stride) spec.stride = *c.stride;
    out.push_back(spec);
  };
  for (auto kind : {DataKind::kRaw, DataKind::kEngineered}) {
    for (auto s : {Scenario::kA, Scenario::kB, Scenario::kC}) {
      for (auto m : {ModelId::kGnb, ModelId::kHatc, ModelId::kArfc}) add(s, kind, m);
    }
    if (kind == DataKind::kEngineered) add(Scenario::kD, kind, ModelId::kKMeans);
  }
  return out;
}

}  // namespace nwa::gateway
