// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace nwa::features {

/// Fixed-capacity FIFO of the last `w` present values with running sums.
/// Sums are kept relative to an anchor value and re-anchored every `w`
/// updates, which bounds cancellation error in the variance.
class WindowState {
 public:
  explicit WindowState(std::size_t capacity = 1);

  /// Appends a present value (evicting the oldest when full); an absent
  /// value leaves the state unchanged.
  void update(std::optional<double> value);

  std::size_t capacity() const { return buffer_.size(); }
  std::size_t size() const { return size_; }
  bool full() const { return size_ == buffer_.size(); }

  /// Oldest-to-newest copy of the buffer.
  std::vector<double> contents() const;
  void copy_contents(std::vector<double>& out) const;

  double sum() const;
  double sum_of_squares() const;
  double mean() const;
  /// Population variance of the buffer.
  double variance() const;

 private:
  void resync();

  std::vector<double> buffer_;
  std::size_t head_ = 0;  // next write position
  std::size_t size_ = 0;
  std::size_t since_resync_ = 0;
  double anchor_ = 0.0;
  double shifted_sum_ = 0.0;
  double shifted_sq_ = 0.0;
};

}  // namespace nwa::features
