// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include <csignal>
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nwa/nwa.h"

namespace {

volatile int g_interrupt = 0;

extern "C" void on_signal(int) { g_interrupt = 1; }

struct Flag {
  const char* name;
  const char* help;
  std::vector<std::string> commands;
};

const std::vector<Flag>& flags() {
  static const std::vector<Flag> table = {
      {"dataset", "synthetic | pamap2", {"calibrate", "run", "serve"}},
      {"path", "PAMAP2 Protocol directory, or a synthetic stream dump", {"calibrate", "run", "serve"}},
      {"scenario", "A | B | C | D", {"run", "serve"}},
      {"model", "gnb | hatc | arfc | kmeans", {"run", "serve"}},
      {"data", "raw | engineered", {"run", "serve"}},
      {"seed", "run seed", {"calibrate", "run", "serve"}},
      {"stride", "decimation stride", {"run", "serve"}},
      {"tags", "judge tag file (slot,label,source per line)", {"run"}},
      {"judge-mode", "full | correct-only", {"run", "serve"}},
      {"out", "output directory", {"calibrate", "run", "report"}},
      {"port", "serve port (0 picks a free one)", {"serve"}},
      {"host", "serve address", {"serve"}},
      {"sessions", "synthetic sessions (seed, seed+1, ...)", {"calibrate", "run"}},
      {"schedule", "synthetic schedule, e.g. c0:120,c1:60,c2:60", {"calibrate", "run", "serve"}},
      {"tags-per-class", "simulated judge tags per class", {"run"}},
      {"tag-noise", "probability that a simulated tag is wrong", {"run"}},
      {"timing", "include prequential time in the report (true | false)", {"run", "report"}},
      {"speed", "replay speed multiplier (0 = as fast as possible)", {"serve"}},
      {"explain-every", "explanation cadence in slots", {"serve"}},
      {"metrics-every", "metrics cadence in seconds", {"serve"}},
      {"min-cheating-run", "shortest reported cheating run, in predictions", {"serve"}},
      {"record", "file receiving every published event", {"serve"}},
      {"exit-on-end", "stop serving when the replay ends (true | false)", {"serve"}},
  };
  return table;
}

int report_failure(nwa_status status) {
  std::fprintf(stderr, "error (%s): %s\n", nwa_status_name(status), nwa_last_error());
  return nwa_exit_code(status);
}

void print_and_free(char* text) {
  if (!text) return;
  std::fputs(text, stdout);
  nwa_string_free(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online assessment of Nordic walking practice"};
  app.require_subcommand(1);
  app.set_version_flag("--version", nwa_version());

  std::map<std::string, CLI::App*> commands;
  commands["calibrate"] = app.add_subcommand("calibrate", "calibrate windows and write calibration.json");
  commands["run"] = app.add_subcommand("run", "run the prequential grid and write the report");
  commands["serve"] = app.add_subcommand("serve", "serve a live session over HTTP");
  commands["report"] = app.add_subcommand("report", "render report.csv as a table");

  std::map<std::string, std::map<std::string, CLI::Option*>> options;
  std::map<std::string, std::string> values;
  for (const auto& f : flags()) {
    for (const auto& c : f.commands) {
      options[c][f.name] = commands[c]->add_option("--" + std::string(f.name), values[f.name], f.help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::fprintf(stderr, "error (config): %s\n", e.what());
    return 2;
  }

  std::string command;
  for (const auto& [name, sub] : commands) {
    if (sub->parsed()) command = name;
  }

  nwa_config* raw = nullptr;
  if (const auto s = nwa_config_new(&raw); s != NWA_OK) return report_failure(s);
  std::unique_ptr<nwa_config, void (*)(nwa_config*)> config(raw, nwa_config_free);
  for (const auto& [name, opt] : options[command]) {
    if (opt->count() == 0) continue;
    if (const auto s = nwa_config_set(config.get(), name.c_str(), values[name].c_str()); s != NWA_OK) {
      return report_failure(s);
    }
  }
  if (const auto s = nwa_config_validate(config.get(), command.c_str()); s != NWA_OK) return report_failure(s);

  char* text = nullptr;
  nwa_status status = NWA_OK;
  if (command == "calibrate") {
    status = nwa_calibrate(config.get(), &text);
  } else if (command == "run") {
    status = nwa_run(config.get(), &text);
  } else if (command == "report") {
    status = nwa_report(config.get(), &text);
  } else {
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    status = nwa_serve(config.get(), &g_interrupt);
  }
  if (status != NWA_OK) return report_failure(status);
  print_and_free(text);
  return 0;
}
