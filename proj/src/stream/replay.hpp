// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>
#include <type_traits>

#include "stream/types.hpp"

namespace nwa::stream {

inline constexpr double kAsFastAsPossible = std::numeric_limits<double>::infinity();

/// Emits the slots of `stream` in order, holding each slot until
/// (timestamp - first timestamp) / speed has elapsed since the start.
/// A `sink(const RawSlot&)` returning false stops the replay early, as does
/// setting `*stop`. Returns the number of slots emitted.
template <typename Sink>
std::size_t replay(const Stream& stream, double speed, Sink&& sink,
                   const std::atomic<bool>* stop = nullptr) {
  using Clock = std::chrono::steady_clock;
  if (stream.slots.empty()) return 0;
  const bool paced = std::isfinite(speed) && speed > 0.0;
  const auto start = Clock::now();
  const double t0 = stream.slots.front().timestamp;
  std::size_t emitted = 0;
  for (const auto& slot : stream.slots) {
    if (stop && stop->load(std::memory_order_relaxed)) break;
    if (paced) {
      const auto due = start + std::chrono::duration_cast<Clock::duration>(
                                   std::chrono::duration<double>((slot.timestamp - t0) / speed));
      std::this_thread::sleep_until(due);
    }
    ++emitted;
    if constexpr (std::is_same_v<decltype(sink(slot)), bool>) {
      if (!sink(slot)) break;
    } else {
      sink(slot);
    }
  }
  return emitted;
}

}  // namespace nwa::stream
