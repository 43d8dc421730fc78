// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "models/model.hpp"

namespace nwa::evaluation {

using models::Proba;
using stream::ClassLabel;

inline constexpr double kProbaFloor = 1e-12;

/// Running confusion matrix (rows truth, columns prediction) plus the
/// probabilistic and index-error sums.
class MetricAccumulator {
 public:
  explicit MetricAccumulator(std::size_t n_classes = 3);

  void add(ClassLabel truth, ClassLabel pred, const Proba* proba = nullptr);

  std::size_t n_classes() const { return n_; }
  std::uint64_t count() const { return count_; }
  const std::vector<std::vector<std::uint64_t>>& confusion() const { return confusion_; }

  double accuracy() const;
  /// Zero when the class was never predicted.
  double precision(ClassLabel c) const;
  /// Zero when the class never occurred.
  double recall(ClassLabel c) const;
  /// Averages over classes seen in truth or prediction.
  double precision_macro() const;
  double recall_macro() const;
  double precision_micro() const;
  double recall_micro() const;
  /// Mean of -log(max(p_true, floor)) over samples that carried probabilities.
  double crloss() const;
  double rmse() const;
  double mae() const;

 private:
  bool seen(std::size_t c) const;

  std::size_t n_;
  std::vector<std::vector<std::uint64_t>> confusion_;
  std::uint64_t count_ = 0;
  std::uint64_t proba_count_ = 0;
  double log_loss_ = 0.0;
  double sq_error_ = 0.0;
  double abs_error_ = 0.0;
};

/// crloss over a log: -(1/E) sum_i sum_j h_j[i] log rho_j[i].
double cross_entropy(std::span<const ClassLabel> truth, std::span<const Proba> proba);

struct RegressionMetrics {
  double rmse = 0.0;
  double mae = 0.0;
};
RegressionMetrics regression_metrics(std::span<const ClassLabel> truth, std::span<const ClassLabel> pred);

}  // namespace nwa::evaluation
