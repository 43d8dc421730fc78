// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace nwa {

/// FNV-1a over a canonical byte serialization of model statistics.
class Digest {
 public:
  Digest& add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) byte(static_cast<std::uint8_t>(v >> (8 * i)));
    return *this;
  }
  Digest& add(std::int64_t v) { return add(static_cast<std::uint64_t>(v)); }
  Digest& add(int v) { return add(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))); }
  Digest& add(unsigned v) { return add(static_cast<std::uint64_t>(v)); }
  Digest& add(bool v) { return add(static_cast<std::uint64_t>(v ? 1 : 0)); }
  Digest& add(double v) { return add(std::bit_cast<std::uint64_t>(v)); }
  Digest& add(std::string_view s) {
    add(static_cast<std::uint64_t>(s.size()));
    for (char c : s) byte(static_cast<std::uint8_t>(c));
    return *this;
  }

  std::uint64_t value() const { return state_; }

  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
    return buf;
  }

 private:
  void byte(std::uint8_t b) {
    state_ ^= b;
    state_ *= 0x100000001B3ULL;
  }

  std::uint64_t state_ = 0xCBF29CE484222325ULL;
};

}  // namespace nwa
