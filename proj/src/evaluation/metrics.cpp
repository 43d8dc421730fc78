// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "evaluation/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"

namespace nwa::evaluation {

MetricAccumulator::MetricAccumulator(std::size_t n_classes)
    : n_(n_classes), confusion_(n_classes, std::vector<std::uint64_t>(n_classes, 0)) {}

void MetricAccumulator::add(ClassLabel truth, ClassLabel pred, const Proba* proba) {
  if (truth >= n_ || pred >= n_) fail(ErrorKind::kData, "label outside the declared class set");
  ++confusion_[truth][pred];
  ++count_;
  const double d = static_cast<double>(truth) - static_cast<double>(pred);
  sq_error_ += d * d;
  abs_error_ += std::fabs(d);
  if (proba) {
    if (proba->size() != n_) fail(ErrorKind::kDimension, "probability vector size mismatch");
    log_loss_ -= std::log(std::max((*proba)[truth], kProbaFloor));
    ++proba_count_;
  }
}

double MetricAccumulator::accuracy() const {
  if (count_ == 0) return 0.0;
  std::uint64_t hit = 0;
  for (std::size_t c = 0; c < n_; ++c) hit += confusion_[c][c];
  return static_cast<double>(hit) / static_cast<double>(count_);
}

double MetricAccumulator::precision(ClassLabel c) const {
  std::uint64_t col = 0;
  for (std::size_t t = 0; t < n_; ++t) col += confusion_[t][c];
  return col ? static_cast<double>(confusion_[c][c]) / static_cast<double>(col) : 0.0;
}

double MetricAccumulator::recall(ClassLabel c) const {
  std::uint64_t row = 0;
  for (auto v : confusion_[c]) row += v;
  return row ? static_cast<double>(confusion_[c][c]) / static_cast<double>(row) : 0.0;
}

bool MetricAccumulator::seen(std::size_t c) const {
  for (std::size_t k = 0; k < n_; ++k) {
    if (confusion_[c][k] || confusion_[k][c]) return true;
  }
  return false;
}

double MetricAccumulator::precision_macro() const {
  double sum = 0.0;
  std::size_t classes = 0;
  for (std::size_t c = 0; c < n_; ++c) {
    if (!seen(c)) continue;
    sum += precision(static_cast<ClassLabel>(c));
    ++classes;
  }
  return classes ? sum / static_cast<double>(classes) : 0.0;
}

double MetricAccumulator::recall_macro() const {
  double sum = 0.0;
  std::size_t classes = 0;
  for (std::size_t c = 0; c < n_; ++c) {
    if (!seen(c)) continue;
    sum += recall(static_cast<ClassLabel>(c));
    ++classes;
  }
  return classes ? sum / static_cast<double>(classes) : 0.0;
}

double MetricAccumulator::precision_micro() const {
  std::uint64_t tp = 0, predicted = 0;
  for (std::size_t t = 0; t < n_; ++t) {
    for (std::size_t p = 0; p < n_; ++p) {
      predicted += confusion_[t][p];
      if (t == p) tp += confusion_[t][p];
    }
  }
  return predicted ? static_cast<double>(tp) / static_cast<double>(predicted) : 0.0;
}

double MetricAccumulator::recall_micro() const {
  std::uint64_t tp = 0, actual = 0;
  for (std::size_t t = 0; t < n_; ++t) {
    for (auto v : confusion_[t]) actual += v;
    tp += confusion_[t][t];
  }
  return actual ? static_cast<double>(tp) / static_cast<double>(actual) : 0.0;
}

double MetricAccumulator::crloss() const {
  return proba_count_ ? log_loss_ / static_cast<double>(proba_count_) : 0.0;
}

double MetricAccumulator::rmse() const {
  return count_ ? std::sqrt(sq_error_ / static_cast<double>(count_)) : 0.0;
}

double MetricAccumulator::mae() const {
  return count_ ? abs_error_ / static_cast<double>(count_) : 0.0;
}

double cross_entropy(std::span<const ClassLabel> truth, std::span<const Proba> proba) {
  if (truth.size() != proba.size()) fail(ErrorKind::kDimension, "truth / probability count mismatch");
  if (truth.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const auto& p = proba[i];
    for (std::size_t j = 0; j < p.size(); ++j) {
      const double h = j == truth[i] ? 1.0 : 0.0;
      if (h > 0.0) sum += h * std::log(std::max(p[j], kProbaFloor));
    }
  }
  return -sum / static_cast<double>(truth.size());
}

RegressionMetrics regression_metrics(std::span<const ClassLabel> truth, std::span<const ClassLabel> pred) {
  if (truth.size() != pred.size()) fail(ErrorKind::kDimension, "truth / prediction count mismatch");
  RegressionMetrics out;
  if (truth.empty()) return out;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double d = static_cast<double>(truth[i]) - static_cast<double>(pred[i]);
    out.rmse += d * d;
    out.mae += std::fabs(d);
  }
  out.rmse = std::sqrt(out.rmse / static_cast<double>(truth.size()));
  out.mae /= static_cast<double>(truth.size());
  return out;
}

}  // namespace nwa::evaluation
