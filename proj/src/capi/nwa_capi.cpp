// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "nwa/nwa.h"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <thread>

#include "common/error.hpp"
#include "evaluation/metrics.hpp"
#include "gateway/live_session.hpp"
#include "gateway/run_config.hpp"
#include "gateway/runner.hpp"
#include "gateway/server.hpp"
#include "labeling/labeling.hpp"

struct nwa_config {
  nwa::gateway::RunConfig run;
};

struct nwa_session {
  nwa::gateway::Broadcaster broadcaster;
  std::shared_ptr<nwa::gateway::Subscription> subscription;
  std::unique_ptr<nwa::gateway::LiveSession> live;
};

namespace {

using nwa::ErrorKind;
using nwa::gateway::RunConfig;

thread_local std::string g_last_error;

nwa_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig: return NWA_ERR_CONFIG;
    case ErrorKind::kData: return NWA_ERR_DATA;
    case ErrorKind::kCalibrationInsufficient: return NWA_ERR_CALIBRATION;
    case ErrorKind::kCoverage: return NWA_ERR_COVERAGE;
    case ErrorKind::kDimension: return NWA_ERR_DIMENSION;
  }
  return NWA_ERR_INTERNAL;
}

nwa_status fail_with(nwa_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
nwa_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const nwa::Error& e) {
    return fail_with(status_of(e.kind()), e.what());
  } catch (const std::exception& e) {
    return fail_with(NWA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail_with(NWA_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  nwa::fail(ErrorKind::kConfig, "--" + key + ": bad value '" + value + "'");
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  if constexpr (std::is_floating_point_v<T>) {
    char* end = nullptr;
    out = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0') bad_value(key, value);
  } else {
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(key, value);
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
  if (value == "0" || value == "false" || value == "no" || value == "off") return false;
  bad_value(key, value);
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"dataset",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         const auto d = nwa::gateway::parse_dataset(v);
         if (!d) bad_value(k, v);
         c.dataset = *d;
       }},
      {"path", [](RunConfig& c, const std::string&, const std::string& v) { c.path = v; }},
      {"scenario",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         const auto s = nwa::evaluation::parse_scenario(v);
         if (!s) bad_value(k, v);
         c.scenario = *s;
       }},
      {"model",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         const auto m = nwa::models::parse_model_id(v);
         if (!m) bad_value(k, v);
         c.model = *m;
       }},
      {"data",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         const auto d = nwa::features::parse_data_kind(v);
         if (!d) bad_value(k, v);
         c.data = *d;
       }},
      {"seed", [](RunConfig& c, const std::string& k, const std::string& v) { c.seed = parse_number<std::uint64_t>(k, v); }},
      {"stride",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.stride = parse_number<std::size_t>(k, v); }},
      {"tags", [](RunConfig& c, const std::string&, const std::string& v) { c.tags = v; }},
      {"judge-mode",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         const auto m = nwa::labeling::parse_judge_mode(v);
         if (!m) bad_value(k, v);
         c.judge_mode = *m;
       }},
      {"out", [](RunConfig& c, const std::string&, const std::string& v) { c.out = v; }},
      {"port", [](RunConfig& c, const std::string& k, const std::string& v) { c.port = parse_number<int>(k, v); }},
      {"host", [](RunConfig& c, const std::string&, const std::string& v) { c.host = v; }},
      {"sessions",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.sessions = parse_number<std::size_t>(k, v); }},
      {"schedule", [](RunConfig& c, const std::string&, const std::string& v) { c.schedule = v; }},
      {"tags-per-class",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.tags_per_class = parse_number<std::size_t>(k, v);
       }},
      {"tag-noise",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.tag_noise = parse_number<double>(k, v); }},
      {"timing",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.timing_in_report = parse_bool(k, v); }},
      {"speed", [](RunConfig& c, const std::string& k, const std::string& v) { c.speed = parse_number<double>(k, v); }},
      {"explain-every",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.explain_every = parse_number<std::uint64_t>(k, v);
       }},
      {"metrics-every",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.metrics_every_s = parse_number<double>(k, v); }},
      {"min-cheating-run",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.min_cheating_run = parse_number<std::size_t>(k, v);
       }},
      {"record", [](RunConfig& c, const std::string&, const std::string& v) { c.record = v; }},
      {"exit-on-end",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.exit_on_end = parse_bool(k, v); }},
  };
  return table;
}

nwa::gateway::Command parse_command(const char* command) {
  const std::string c = command ? command : "";
  if (c == "calibrate") return nwa::gateway::Command::kCalibrate;
  if (c == "run") return nwa::gateway::Command::kRun;
  if (c == "serve") return nwa::gateway::Command::kServe;
  if (c == "report") return nwa::gateway::Command::kReport;
  nwa::fail(ErrorKind::kConfig, "unknown command '" + c + "'");
}

}  // namespace

extern "C" {

const char* nwa_version(void) { return "1.0.0"; }

const char* nwa_last_error(void) { return g_last_error.c_str(); }

const char* nwa_status_name(nwa_status status) {
  switch (status) {
    case NWA_OK: return "ok";
    case NWA_ERR_INTERNAL: return "internal";
    case NWA_ERR_CONFIG: return "config";
    case NWA_ERR_DATA: return "data";
    case NWA_ERR_CALIBRATION: return "calibration";
    case NWA_ERR_COVERAGE: return "coverage";
    case NWA_ERR_DIMENSION: return "dimension";
    case NWA_ERR_ARGUMENT: return "argument";
  }
  return "unknown";
}

int nwa_exit_code(nwa_status status) {
  switch (status) {
    case NWA_OK: return 0;
    case NWA_ERR_CONFIG:
    case NWA_ERR_ARGUMENT: return 2;
    case NWA_ERR_DATA:
    case NWA_ERR_CALIBRATION:
    case NWA_ERR_COVERAGE: return 3;
    default: return 1;
  }
}

void nwa_string_free(char* s) { std::free(s); }

nwa_status nwa_config_new(nwa_config** out) {
  if (!out) return fail_with(NWA_ERR_ARGUMENT, "null output pointer");
  return guarded([&] {
    *out = new nwa_config();
    return NWA_OK;
  });
}

void nwa_config_free(nwa_config* config) { delete config; }

nwa_status nwa_config_set(nwa_config* config, const char* key, const char* value) {
  if (!config || !key || !value) return fail_with(NWA_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const auto it = setters().find(key);
    if (it == setters().end()) nwa::fail(ErrorKind::kConfig, std::string("unknown option --") + key);
    it->second(config->run, key, value);
    return NWA_OK;
  });
}

nwa_status nwa_config_validate(const nwa_config* config, const char* command) {
  if (!config) return fail_with(NWA_ERR_ARGUMENT, "null config");
  return guarded([&] {
    nwa::gateway::validate(config->run, parse_command(command));
    return NWA_OK;
  });
}

nwa_status nwa_calibrate(const nwa_config* config, char** json_out) {
  if (!config) return fail_with(NWA_ERR_ARGUMENT, "null config");
  return guarded([&] {
    const auto text = nwa::gateway::calibrate_sessions(config->run);
    if (json_out) *json_out = dup_string(text);
    return NWA_OK;
  });
}

nwa_status nwa_run(const nwa_config* config, char** report_out) {
  if (!config) return fail_with(NWA_ERR_ARGUMENT, "null config");
  return guarded([&] {
    const auto outcome = nwa::gateway::run_grid(config->run);
    nwa::gateway::write_artifacts(config->run, outcome);
    if (report_out) *report_out = dup_string(nwa::gateway::read_file(config->run.out / "report.txt"));
    return NWA_OK;
  });
}

nwa_status nwa_report(const nwa_config* config, char** report_out) {
  if (!config) return fail_with(NWA_ERR_ARGUMENT, "null config");
  return guarded([&] {
    nwa::gateway::validate(config->run, nwa::gateway::Command::kReport);
    const auto text = nwa::gateway::render_report(config->run);
    if (report_out) *report_out = dup_string(text);
    return NWA_OK;
  });
}

nwa_status nwa_serve(const nwa_config* config, const volatile int* interrupt) {
  if (!config) return fail_with(NWA_ERR_ARGUMENT, "null config");
  return guarded([&] {
    std::atomic<bool> stop{false};
    std::atomic<bool> done{false};
    std::thread watcher([&] {
      while (!done) {
        if (interrupt && *interrupt) stop = true;
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
      }
    });
    try {
      nwa::gateway::serve(config->run, &stop);
    } catch (...) {
      done = true;
      watcher.join();
      throw;
    }
    done = true;
    watcher.join();
    return NWA_OK;
  });
}

nwa_status nwa_session_open(const nwa_config* config, nwa_session** out) {
  if (!config || !out) return fail_with(NWA_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    nwa::gateway::validate(config->run, nwa::gateway::Command::kServe);
    auto sessions = nwa::gateway::load_sessions(config->run);
    auto s = std::make_unique<nwa_session>();
    s->live = std::make_unique<nwa::gateway::LiveSession>(config->run, std::move(sessions.front().stream),
                                                          s->broadcaster);
    auto* live = s->live.get();
    s->subscription = s->broadcaster.subscribe([live](std::uint64_t id) { return live->hello(id); });
    s->live->begin();
    *out = s.release();
    return NWA_OK;
  });
}

void nwa_session_close(nwa_session* session) { delete session; }

nwa_status nwa_session_advance(nwa_session* session, int* more) {
  if (!session) return fail_with(NWA_ERR_ARGUMENT, "null session");
  return guarded([&] {
    const bool m = session->live->advance();
    if (more) *more = m ? 1 : 0;
    return NWA_OK;
  });
}

nwa_status nwa_session_send(nwa_session* session, const char* message) {
  if (!session || !message) return fail_with(NWA_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    try {
      auto tag = nwa::gateway::parse_inbound_tag(message, session->live->stream().descriptor.classes.size());
      if (!session->live->submit_tag(std::move(tag))) nwa::fail(ErrorKind::kData, "the session has ended");
    } catch (const nwa::Error& e) {
      session->broadcaster.send_to(session->subscription->id(), nwa::gateway::error_event(e.what()));
      throw;
    }
    return NWA_OK;
  });
}

nwa_status nwa_session_request_explanation(nwa_session* session) {
  if (!session) return fail_with(NWA_ERR_ARGUMENT, "null session");
  session->live->request_explanation();
  return NWA_OK;
}

nwa_status nwa_session_poll(nwa_session* session, char** line_out) {
  if (!session || !line_out) return fail_with(NWA_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto line = session->subscription->pop(std::chrono::milliseconds(0));
    *line_out = line ? dup_string(*line) : nullptr;
    return NWA_OK;
  });
}

nwa_status nwa_best_mapping(const uint64_t* counts, size_t m, int* labels_out, uint64_t* matched_out) {
  if (!counts || !labels_out) return fail_with(NWA_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    nwa::labeling::Confusion c(m, std::vector<std::uint64_t>(m));
    for (size_t i = 0; i < m; ++i) {
      for (size_t j = 0; j < m; ++j) c[i][j] = counts[i * m + j];
    }
    const auto mapping = nwa::labeling::best_mapping(c);
    for (size_t i = 0; i < m; ++i) labels_out[i] = mapping.labels[i];
    if (matched_out) *matched_out = mapping.correct;
    return NWA_OK;
  });
}

nwa_status nwa_cross_entropy(const int* truth, const double* proba, size_t n, size_t n_classes, double* out) {
  if (!truth || !proba || !out) return fail_with(NWA_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<nwa::stream::ClassLabel> t(n);
    std::vector<nwa::models::Proba> p(n, nwa::models::Proba(n_classes));
    for (size_t i = 0; i < n; ++i) {
      if (truth[i] < 0 || static_cast<size_t>(truth[i]) >= n_classes) {
        nwa::fail(ErrorKind::kData, "truth outside the class set");
      }
      t[i] = static_cast<nwa::stream::ClassLabel>(truth[i]);
      for (size_t c = 0; c < n_classes; ++c) p[i][c] = proba[i * n_classes + c];
    }
    *out = nwa::evaluation::cross_entropy(t, p);
    return NWA_OK;
  });
}

}  // extern "C"
