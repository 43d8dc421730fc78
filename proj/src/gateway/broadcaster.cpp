// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "gateway/broadcaster.hpp"

#include <algorithm>

namespace nwa::gateway {

std::string with_seq(std::uint64_t seq, const std::string& body) {
  std::string out = "{\"seq\":" + std::to_string(seq);
  if (body.size() > 2) out += ',';
  out.append(body, 1, std::string::npos);
  return out;
}

Subscription::Subscription(std::uint64_t id, std::size_t capacity) : id_(id), capacity_(capacity) {}

void Subscription::push(std::string body) {
  {
    std::lock_guard lock(mu_);
    if (closed_) return;
    if (bodies_.size() >= capacity_) {
      bodies_.pop_front();
      ++pending_gap_;
      ++dropped_total_;
    }
    bodies_.push_back(std::move(body));
  }
  cv_.notify_one();
}

void Subscription::close() {
  {
    std::lock_guard lock(mu_);
    closed_ = true;
  }
  cv_.notify_all();
}

std::optional<std::string> Subscription::pop_locked() {
  if (pending_gap_) {
    const auto n = pending_gap_;
    pending_gap_ = 0;
    return with_seq(++seq_, "{\"type\":\"gap\",\"dropped\":" + std::to_string(n) + "}");
  }
  if (bodies_.empty()) return std::nullopt;
  auto line = with_seq(++seq_, bodies_.front());
  bodies_.pop_front();
  return line;
}

std::optional<std::string> Subscription::pop(std::chrono::milliseconds timeout) {
  std::unique_lock lock(mu_);
  cv_.wait_for(lock, timeout, [&] { return closed_ || pending_gap_ || !bodies_.empty(); });
  return pop_locked();
}

std::vector<std::string> Subscription::drain() {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  while (auto line = pop_locked()) out.push_back(std::move(*line));
  return out;
}

bool Subscription::closed() const {
  std::lock_guard lock(mu_);
  return closed_;
}

std::uint64_t Subscription::dropped_total() const {
  std::lock_guard lock(mu_);
  return dropped_total_;
}

Broadcaster::~Broadcaster() { close_all(); }

std::shared_ptr<Subscription> Broadcaster::subscribe(const std::function<std::string(std::uint64_t)>& greeting) {
  std::lock_guard lock(mu_);
  auto sub = std::make_shared<Subscription>(next_id_++, capacity_);
  if (greeting) sub->push(greeting(sub->id()));
  subs_.push_back(sub);
  return sub;
}

void Broadcaster::unsubscribe(std::uint64_t id) {
  std::shared_ptr<Subscription> gone;
  {
    std::lock_guard lock(mu_);
    auto it = std::find_if(subs_.begin(), subs_.end(), [&](const auto& s) { return s->id() == id; });
    if (it == subs_.end()) return;
    gone = *it;
    subs_.erase(it);
  }
  gone->close();
}

void Broadcaster::publish(const std::string& body) {
  std::lock_guard lock(mu_);
  if (recorder_) recorder_(published_, body);
  ++published_;
  for (auto& s : subs_) s->push(body);
}

bool Broadcaster::send_to(std::uint64_t id, const std::string& body) {
  std::lock_guard lock(mu_);
  for (auto& s : subs_) {
    if (s->id() == id) {
      s->push(body);
      return true;
    }
  }
  return false;
}

void Broadcaster::set_recorder(std::function<void(std::uint64_t, const std::string&)> recorder) {
  std::lock_guard lock(mu_);
  recorder_ = std::move(recorder);
}

void Broadcaster::close_all() {
  std::vector<std::shared_ptr<Subscription>> subs;
  {
    std::lock_guard lock(mu_);
    subs.swap(subs_);
  }
  for (auto& s : subs) s->close();
}

std::size_t Broadcaster::subscribers() const {
  std::lock_guard lock(mu_);
  return subs_.size();
}

std::uint64_t Broadcaster::published() const {
  std::lock_guard lock(mu_);
  return published_;
}

}  // namespace nwa::gateway
