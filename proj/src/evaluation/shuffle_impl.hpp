// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <numeric>
#include <vector>

#include "common/rng.hpp"

namespace nwa::evaluation {

template <typename T>
void shuffle_blocks(std::vector<T>& items, std::size_t partitions, std::uint64_t seed) {
  const std::size_t n = items.size();
  if (partitions < 2 || n < 2) return;
  std::vector<std::size_t> order(partitions);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(order);
  std::vector<T> out;
  out.reserve(n);
  for (auto b : order) {
    const std::size_t lo = b * n / partitions;
    const std::size_t hi = (b + 1) * n / partitions;
    for (std::size_t i = lo; i < hi; ++i) out.push_back(std::move(items[i]));
  }
  items = std::move(out);
}

}  // namespace nwa::evaluation
