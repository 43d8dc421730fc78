// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <memory>
#include <string>
#include <thread>

#include "gateway/broadcaster.hpp"
#include "gateway/live_session.hpp"
#include "gateway/run_config.hpp"

namespace httplib {
class Server;
}

namespace nwa::gateway {

/// HTTP front of a live session:
///   GET  /events   newline-delimited JSON event stream
///   POST /tag      inbound tag message (`?client=<id>` routes errors)
///   POST /explain  request an explanation at the next slot
///   GET  /health
class SessionServer {
 public:
  SessionServer(const RunConfig& config, stream::Stream stream);
  ~SessionServer();

  /// Binds `config.host:config.port` (0 picks a free port); returns the port.
  int bind();
  /// Starts the HTTP listener and the replay worker.
  void start();
  void start_http();
  void start_replay();
  void stop();
  /// Blocks until the replay has finished or `stop` was called.
  void wait_finished(const std::atomic<bool>* interrupt = nullptr);

  int port() const { return port_; }
  LiveSession& session() { return *session_; }
  Broadcaster& broadcaster() { return broadcaster_; }

 private:
  void routes();

  RunConfig config_;
  Broadcaster broadcaster_;
  std::unique_ptr<LiveSession> session_;
  std::unique_ptr<httplib::Server> http_;
  std::thread http_thread_;
  std::thread worker_;
  std::atomic<bool> stop_{false};
  int port_ = -1;
};

/// Loads the configured stream and serves it until it ends (with
/// `exit_on_end`) or `interrupt` is set.
int serve(const RunConfig& config, const std::atomic<bool>* interrupt);

}  // namespace nwa::gateway
