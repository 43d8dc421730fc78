// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "gateway/server.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <mutex>

#include <httplib.h>

#include "common/error.hpp"
#include "gateway/runner.hpp"

namespace nwa::gateway {

SessionServer::SessionServer(const RunConfig& config, stream::Stream stream)
    : config_(config), http_(std::make_unique<httplib::Server>()) {
  session_ = std::make_unique<LiveSession>(config_, std::move(stream), broadcaster_);
  if (!config_.record.empty()) {
    if (config_.record.has_parent_path()) std::filesystem::create_directories(config_.record.parent_path());
    auto file = std::make_shared<std::ofstream>(config_.record, std::ios::trunc);
    if (!*file) fail(ErrorKind::kData, "cannot write " + config_.record.string());
    broadcaster_.set_recorder([file](std::uint64_t i, const std::string& body) {
      *file << with_seq(i + 1, body) << '\n';
      file->flush();
    });
  }
  routes();
}

SessionServer::~SessionServer() { stop(); }

void SessionServer::routes() {
  http_->Get("/events", [this](const httplib::Request&, httplib::Response& res) {
    auto sub = broadcaster_.subscribe([this](std::uint64_t id) { return session_->hello(id); });
    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider(
        "application/x-ndjson",
        [this, sub](std::size_t, httplib::DataSink& sink) {
          while (!stop_) {
            auto line = sub->pop(std::chrono::milliseconds(200));
            if (!line) {
              if (sub->closed()) break;
              if (!sink.is_writable()) return false;
              continue;
            }
            *line += '\n';
            if (!sink.write(line->data(), line->size())) return false;
          }
          sink.done();
          return true;
        },
        [this, sub](bool) { broadcaster_.unsubscribe(sub->id()); });
  });

  http_->Post("/tag", [this](const httplib::Request& req, httplib::Response& res) {
    try {
      auto tag = parse_inbound_tag(req.body, session_->stream().descriptor.classes.size());
      if (!session_->submit_tag(std::move(tag))) {
        res.status = 409;
        res.set_content(error_event("the session has ended"), "application/json");
        return;
      }
      res.status = 202;
      res.set_content("{\"type\":\"queued\"}", "application/json");
    } catch (const Error& e) {
      const auto body = error_event(e.what());
      if (req.has_param("client")) {
        try {
          broadcaster_.send_to(std::stoull(req.get_param_value("client")), body);
        } catch (const std::exception&) {
        }
      }
      res.status = 400;
      res.set_content(body, "application/json");
    }
  });

  http_->Post("/explain", [this](const httplib::Request&, httplib::Response& res) {
    session_->request_explanation();
    res.status = 202;
    res.set_content("{\"type\":\"queued\"}", "application/json");
  });

  http_->Get("/health", [this](const httplib::Request&, httplib::Response& res) {
    const std::string body = "{\"status\":\"" + std::string(session_->finished() ? "ended" : "live") +
                             "\",\"slots\":" + std::to_string(session_->slots_processed()) + "}";
    res.set_content(body, "application/json");
  });
}

int SessionServer::bind() {
  port_ = config_.port == 0 ? http_->bind_to_any_port(config_.host) : (http_->bind_to_port(config_.host, config_.port)
                                                                           ? config_.port
                                                                           : -1);
  if (port_ < 0) fail(ErrorKind::kConfig, "cannot bind " + config_.host + ":" + std::to_string(config_.port));
  return port_;
}

void SessionServer::start() {
  start_http();
  start_replay();
}

void SessionServer::start_http() {
  if (port_ < 0) bind();
  http_thread_ = std::thread([this] { http_->listen_after_bind(); });
  http_->wait_until_ready();
}

void SessionServer::start_replay() {
  worker_ = std::thread([this] { session_->run(&stop_); });
}

void SessionServer::stop() {
  stop_ = true;
  if (worker_.joinable()) worker_.join();
  broadcaster_.close_all();
  http_->stop();
  if (http_thread_.joinable()) http_thread_.join();
}

void SessionServer::wait_finished(const std::atomic<bool>* interrupt) {
  while (!session_->finished() && !(interrupt && interrupt->load()) && !stop_) {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
}

int serve(const RunConfig& config, const std::atomic<bool>* interrupt) {
  validate(config, Command::kServe);
  auto sessions = load_sessions(config);
  SessionServer server(config, std::move(sessions.front().stream));
  const int port = server.bind();
  std::fprintf(stderr, "serving %s on http://%s:%d/events\n", sessions.front().name.c_str(), config.host.c_str(),
               port);
  server.start();
  server.wait_finished(interrupt);
  if (config.exit_on_end) {
    // Lets clients read the closing events.
    std::this_thread::sleep_for(std::chrono::milliseconds(500));
  } else {
    while (!(interrupt && interrupt->load())) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  }
  server.stop();
  return 0;
}

}  // namespace nwa::gateway
