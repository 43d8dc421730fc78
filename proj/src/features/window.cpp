// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "features/window.hpp"

#include <algorithm>

#include "common/error.hpp"

namespace nwa::features {

WindowState::WindowState(std::size_t capacity) : buffer_(capacity, 0.0) {
  if (capacity == 0) fail(ErrorKind::kConfig, "window capacity must be positive");
}

void WindowState::update(std::optional<double> value) {
  if (!value) return;
  const double x = *value;
  if (size_ == 0) anchor_ = x;
  if (full()) {
    const double old = buffer_[head_] - anchor_;
    shifted_sum_ -= old;
    shifted_sq_ -= old * old;
  } else {
    ++size_;
  }
  buffer_[head_] = x;
  head_ = (head_ + 1) % buffer_.size();
  const double d = x - anchor_;
  shifted_sum_ += d;
  shifted_sq_ += d * d;
  if (++since_resync_ >= buffer_.size()) resync();
}

void WindowState::resync() {
  since_resync_ = 0;
  if (size_ == 0) return;
  anchor_ = mean();
  shifted_sum_ = 0.0;
  shifted_sq_ = 0.0;
  const std::size_t start = (head_ + buffer_.size() - size_) % buffer_.size();
  for (std::size_t i = 0; i < size_; ++i) {
    const double d = buffer_[(start + i) % buffer_.size()] - anchor_;
    shifted_sum_ += d;
    shifted_sq_ += d * d;
  }
}

std::vector<double> WindowState::contents() const {
  std::vector<double> out;
  copy_contents(out);
  return out;
}

void WindowState::copy_contents(std::vector<double>& out) const {
  out.resize(size_);
  const std::size_t start = (head_ + buffer_.size() - size_) % buffer_.size();
  const std::size_t first = std::min(size_, buffer_.size() - start);
  std::copy_n(buffer_.begin() + static_cast<std::ptrdiff_t>(start), first, out.begin());
  std::copy_n(buffer_.begin(), size_ - first, out.begin() + static_cast<std::ptrdiff_t>(first));
}

double WindowState::sum() const { return shifted_sum_ + static_cast<double>(size_) * anchor_; }

double WindowState::sum_of_squares() const {
  return shifted_sq_ + 2.0 * anchor_ * shifted_sum_ + static_cast<double>(size_) * anchor_ * anchor_;
}

double WindowState::mean() const {
  return size_ ? anchor_ + shifted_sum_ / static_cast<double>(size_) : 0.0;
}

double WindowState::variance() const {
  if (size_ == 0) return 0.0;
  const double n = static_cast<double>(size_);
  const double m = shifted_sum_ / n;
  return std::max(0.0, shifted_sq_ / n - m * m);
}

}  // namespace nwa::features
