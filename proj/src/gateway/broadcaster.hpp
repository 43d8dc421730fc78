// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace nwa::gateway {

inline constexpr std::size_t kSubscriberBuffer = 1000;

/// Prefixes a JSON object body `{"type":...}` with `"seq":seq`.
std::string with_seq(std::uint64_t seq, const std::string& body);

class Broadcaster;

/// One connection's view of the event stream. Sequence numbers are assigned
/// on delivery, so they increase by one per line on every connection.
class Subscription {
 public:
  Subscription(std::uint64_t id, std::size_t capacity);

  std::uint64_t id() const { return id_; }
  /// Next line (without trailing newline), or nullopt on timeout or close.
  std::optional<std::string> pop(std::chrono::milliseconds timeout);
  /// Every line currently buffered.
  std::vector<std::string> drain();
  bool closed() const;
  std::uint64_t dropped_total() const;

 private:
  friend class Broadcaster;
  void push(std::string body);
  void close();
  std::optional<std::string> pop_locked();

  std::uint64_t id_;
  std::size_t capacity_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::string> bodies_;
  std::uint64_t pending_gap_ = 0;
  std::uint64_t dropped_total_ = 0;
  std::uint64_t seq_ = 0;
  bool closed_ = false;
};

class Broadcaster {
 public:
  explicit Broadcaster(std::size_t capacity = kSubscriberBuffer) : capacity_(capacity) {}
  ~Broadcaster();

  /// `greeting(id)`, when given, is the new connection's first event.
  std::shared_ptr<Subscription> subscribe(const std::function<std::string(std::uint64_t)>& greeting = {});
  void unsubscribe(std::uint64_t id);
  /// Sends `body` to every subscriber; never blocks on a slow one.
  void publish(const std::string& body);
  /// Sends `body` to one subscriber only.
  bool send_to(std::uint64_t id, const std::string& body);
  /// Called with every published body and its global index.
  void set_recorder(std::function<void(std::uint64_t, const std::string&)> recorder);
  void close_all();
  std::size_t subscribers() const;
  std::uint64_t published() const;

 private:
  std::size_t capacity_;
  mutable std::mutex mu_;
  std::vector<std::shared_ptr<Subscription>> subs_;
  std::uint64_t next_id_ = 1;
  std::uint64_t published_ = 0;
  std::function<void(std::uint64_t, const std::string&)> recorder_;
};

}  // namespace nwa::gateway
