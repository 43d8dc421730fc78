// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "gateway/live_session.hpp"

#include <cmath>

#include <json.hpp>

#include "common/error.hpp"
#include "features/feature_key.hpp"
#include "gateway/runner.hpp"
#include "models/arf.hpp"
#include "stream/replay.hpp"

namespace nwa::gateway {

using json = nlohmann::ordered_json;
using evaluation::Scenario;

namespace {

evaluation::ScenarioSpec serve_spec(const RunConfig& c) {
  const auto s = c.scenario.value_or(Scenario::kD);
  const auto kind = c.data.value_or(features::DataKind::kEngineered);
  const auto model = c.model.value_or(s == Scenario::kD ? models::ModelId::kKMeans : models::ModelId::kArfc);
  auto spec = evaluation::make_scenario(s, kind, model, c.dataset);
  if (c.stride) spec.stride = *c.stride;
  return spec;
}

evaluation::EvalOptions serve_options(const RunConfig& c, std::size_t n_classes) {
  auto o = run_options(c, n_classes).eval;
  o.strict_coverage = false;
  return o;
}

explain::ExplainConfig explain_config(const RunConfig& c, const stream::Stream& s) {
  explain::ExplainConfig e;
  e.min_cheating_run = c.min_cheating_run;
  if (s.descriptor.dataset != stream::DatasetKind::kSynthetic) e.cheating_class.reset();
  return e;
}

json proba_json(const models::Proba& p) {
  json out = json::object();
  for (std::size_t c = 0; c < p.size(); ++c) out[stream::label_symbol(static_cast<ClassLabel>(c))] = p[c];
  return out;
}

std::string_view phase_name(features::Phase p) {
  switch (p) {
    case features::Phase::kCalibrating: return "calibrating";
    case features::Phase::kTuning: return "tuning";
    case features::Phase::kRunning: return "running";
  }
  return "running";
}

}  // namespace

InboundTag parse_inbound_tag(std::string_view text, std::size_t n_classes) {
  const auto doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) fail(ErrorKind::kData, "inbound message is not a JSON object");
  if (!doc.contains("type") || doc["type"] != "tag") fail(ErrorKind::kData, "inbound message type must be \"tag\"");
  if (!doc.contains("label") || !doc["label"].is_string()) fail(ErrorKind::kData, "tag needs a string label");
  const auto label = stream::parse_label_symbol(doc["label"].get<std::string>());
  if (!label || *label >= n_classes) {
    fail(ErrorKind::kData, "unknown tag label '" + doc["label"].get<std::string>() + "'");
  }
  InboundTag tag;
  tag.label = *label;
  if (doc.contains("slot") && !doc["slot"].is_null()) {
    if (!doc["slot"].is_number_unsigned()) fail(ErrorKind::kData, "tag slot must be a non-negative integer");
    tag.slot = doc["slot"].get<std::uint64_t>();
  }
  if (doc.contains("source")) {
    if (!doc["source"].is_string()) fail(ErrorKind::kData, "tag source must be a string");
    tag.source = doc["source"].get<std::string>();
  }
  if (tag.source.empty()) tag.source = "judge";
  return tag;
}

std::string error_event(std::string_view message) {
  return json{{"type", "error"}, {"message", message}}.dump();
}

LiveSession::LiveSession(const RunConfig& config, stream::Stream stream, Broadcaster& out)
    : config_(config),
      stream_(std::move(stream)),
      out_(out),
      spec_(serve_spec(config)),
      n_classes_(stream_.descriptor.classes.size()),
      pipeline_(stream_.descriptor, features::PipelineConfig{spec_.kind, {}, 60.0}),
      eval_(spec_, n_classes_, config.seed, serve_options(config, n_classes_)),
      explainer_(stream_.descriptor.classes.display_names, stream_.descriptor.master_rate(),
                 explain_config(config, stream_)) {
  if (spec_.id != Scenario::kD && spec_.model != models::ModelId::kArfc) {
    fail(ErrorKind::kConfig, "a live session explains with a forest: use scenario D or model arfc");
  }
}

bool LiveSession::submit_tag(InboundTag tag) {
  if (finished_) return false;
  std::lock_guard lock(inbound_mu_);
  inbound_.push_back(std::move(tag));
  return true;
}

void LiveSession::request_explanation() { explain_requested_ = true; }

std::string LiveSession::hello(std::uint64_t client) const {
  json classes = json::array();
  const auto& names = stream_.descriptor.classes.display_names;
  for (std::size_t c = 0; c < names.size(); ++c) {
    classes.push_back({{"label", stream::label_symbol(static_cast<ClassLabel>(c))}, {"name", names[c]}});
  }
  return json{{"type", "hello"},
              {"client", client},
              {"dataset", to_string(stream_.descriptor.dataset)},
              {"scenario", evaluation::to_string(spec_.id)},
              {"model", models::to_string(spec_.model)},
              {"data", features::to_string(spec_.kind)},
              {"judge_mode", labeling::to_string(config_.judge_mode)},
              {"stride", spec_.stride},
              {"rate_hz", stream_.descriptor.master_rate()},
              {"classes", classes}}
      .dump();
}

const models::AdaptiveRandomForest* LiveSession::forest() const {
  if (eval_.explainer()) return eval_.explainer();
  return dynamic_cast<const models::AdaptiveRandomForest*>(eval_.classifier());
}

void LiveSession::begin() {
  last_metrics_ = Clock::now();
  publish_metrics("start");
}

void LiveSession::drain_inbound() {
  std::vector<InboundTag> batch;
  {
    std::lock_guard lock(inbound_mu_);
    batch.swap(inbound_);
  }
  const std::uint64_t latest = cursor_ ? stream_.slots[cursor_ - 1].n : 0;
  for (auto& t : batch) {
    const std::uint64_t slot = t.slot.value_or(latest);
    const bool applied = spec_.id == Scenario::kD;
    if (applied) eval_.add_tag({slot, t.label, t.source});
    out_.publish(json{{"type", "tag_ack"},
                      {"label", stream::label_symbol(t.label)},
                      {"slot", slot},
                      {"source", t.source},
                      {"applied", applied}}
                     .dump());
  }
}

void LiveSession::publish_slot(const stream::RawSlot& slot) {
  const double t0 = stream_.slots.front().timestamp;
  const auto tick = static_cast<std::uint64_t>(std::floor((slot.timestamp - t0) * kDisplayRateHz + 1e-9));
  if (last_display_tick_ && *last_display_tick_ == tick) return;
  last_display_tick_ = tick;
  const auto& addrs = stream_.descriptor.addresses;
  json values = json::object();
  for (std::size_t i = 0; i < addrs.size() && i < slot.values.size(); ++i) {
    if (!slot.values[i]) continue;
    features::FeatureKey key;
    key.address = addrs[i];
    values[key.str()] = *slot.values[i];
  }
  out_.publish(json{{"type", "slot"}, {"n", slot.n}, {"values", values}}.dump());
  if (display_keys_.empty()) return;
  const auto& cand = pipeline_.last_candidates();
  json fv = json::object();
  for (auto id : display_keys_) {
    if (const double* v = cand.find(id)) fv[features::key_string(id)] = *v;
  }
  if (!fv.empty()) out_.publish(json{{"type", "feature"}, {"n", slot.n}, {"values", fv}}.dump());
}

void LiveSession::publish_prediction(const evaluation::PredictionRecord& rec) {
  json ev = {{"type", "prediction"},
             {"n", rec.n},
             {"label", stream::label_symbol(rec.pred)},
             {"proba", proba_json(rec.proba)},
             {"cluster", rec.cluster}};
  if (spec_.id == Scenario::kD) ev["bootstrap"] = rec.bootstrap;
  out_.publish(ev.dump());
}

void LiveSession::publish_explanation(std::uint64_t n, const features::FeatureVector& x) {
  const auto* f = forest();
  if (!f) return;
  const auto report = explainer_.explain(*f, x, &pipeline_.selection());
  json gamma = json::array();
  display_keys_.clear();
  for (const auto& [id, count] : report.gamma) {
    gamma.push_back({{"key", features::key_string(id)}, {"count", count}});
    if (display_keys_.size() < 8) display_keys_.push_back(id);
  }
  json path = json::array();
  if (report.shown_path) {
    for (const auto& s : report.paths[*report.shown_path].steps) {
      path.push_back({{"key", features::key_string(s.feature)},
                      {"threshold", s.threshold},
                      {"value", s.value},
                      {"branch", s.branch == explain::Branch::kRight ? ">" : "<="}});
    }
  }
  json ev = {{"type", "explanation"},
             {"n", n},
             {"gamma", gamma},
             {"path", path},
             {"texts", json::array({report.texts[0], report.texts[1], report.texts[2], report.texts[3]})},
             {"confidence", report.confidence},
             {"label", stream::label_symbol(report.prediction)},
             {"proba", proba_json(report.proba)}};
  if (report.display) {
    ev["display"] = {{"key", features::key_string(report.display->key)}, {"fallback", report.display->fallback}};
    if (display_keys_.empty()) display_keys_.push_back(report.display->key);
  } else {
    ev["display"] = nullptr;
  }
  if (report.cheating) {
    ev["cheating"] = {{"start", report.cheating->start}, {"end", report.cheating->end}};
  } else {
    ev["cheating"] = nullptr;
  }
  out_.publish(ev.dump());
}

void LiveSession::publish_metrics(std::string_view reason) {
  last_metrics_ = Clock::now();
  const auto m = eval_.metrics();
  json ev = {{"type", "metrics"},
             {"reason", reason},
             {"n", cursor_ ? stream_.slots[cursor_ - 1].n : 0},
             {"slots", cursor_},
             {"phase", phase_name(pipeline_.phase())},
             {"samples", eval_.log().size()},
             {"scenario", evaluation::to_string(spec_.id)},
             {"model", models::to_string(spec_.model)},
             {"accuracy", m.online_accuracy.value_or(m.accuracy)},
             {"crloss", m.crloss},
             {"per_sample_ms", m.per_sample_ms}};
  if (spec_.id == Scenario::kD) {
    const auto& map = eval_.label_map();
    ev["mapped_accuracy"] = m.accuracy;
    ev["agreement"] = m.agreement.value_or(0.0);
    ev["bootstrap"] = eval_.bootstrapping();
    ev["provenance"] = labeling::to_string(map.provenance());
    json clusters = json::array();
    for (std::size_t k = 0; k < map.size(); ++k) {
      clusters.push_back({{"cluster", k},
                          {"label", stream::label_symbol(map.labels[k])},
                          {"source", labeling::to_string(map.sources[k])},
                          {"anonymous", k < map.anonymous.size() && map.anonymous[k]}});
    }
    ev["label_map"] = clusters;
    json tags = json::array();
    for (const auto& t : eval_.tags()) {
      tags.push_back({{"slot", t.slot}, {"label", stream::label_symbol(t.label)}, {"source", t.source}});
    }
    ev["tags"] = tags;
  }
  out_.publish(ev.dump());
}

void LiveSession::finish() {
  if (finished_.exchange(true)) return;
  drain_inbound();
  publish_metrics("end");
  out_.publish(json{{"type", "end"}, {"n", last_n_}, {"slots", cursor_}}.dump());
}

bool LiveSession::advance() {
  if (cursor_ >= stream_.slots.size()) {
    finish();
    return false;
  }
  drain_inbound();
  const auto& slot = stream_.slots[cursor_++];
  last_n_ = slot.n;
  auto fv = pipeline_.push(slot);
  publish_slot(slot);
  if (fv && ++emitted_ % spec_.stride == 0) {
    const auto& rec = eval_.step(*fv, slot.ground_truth);
    explainer_.observe(rec.n, rec.pred);
    publish_prediction(rec);
    last_x_ = std::move(*fv);
    const bool periodic = rec.n >= next_explain_;
    if (periodic) next_explain_ = (rec.n / config_.explain_every + 1) * config_.explain_every;
    if (explain_requested_.exchange(false) || periodic) publish_explanation(rec.n, *last_x_);
    if (eval_.curve().size() > curve_seen_) {
      curve_seen_ = eval_.curve().size();
      publish_metrics("tick");
    }
  } else if (last_x_ && explain_requested_.exchange(false)) {
    publish_explanation(last_x_->n, *last_x_);
  }
  if (Clock::now() - last_metrics_ >= std::chrono::duration<double>(config_.metrics_every_s)) {
    publish_metrics("periodic");
  }
  return true;
}

void LiveSession::run(const std::atomic<bool>* stop) {
  begin();
  const double speed = config_.speed > 0.0 ? config_.speed : stream::kAsFastAsPossible;
  stream::replay(stream_, speed, [&](const stream::RawSlot&) { return advance(); }, stop);
  if (!stop || !stop->load()) finish();
}

}  // namespace nwa::gateway
