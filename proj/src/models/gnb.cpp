// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "models/gnb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "common/digest.hpp"
#include "models/gaussian.hpp"

namespace nwa::models {

GaussianNB::GaussianNB(std::size_t n_classes)
    : Classifier(n_classes), class_weight_(n_classes, 0.0), stats_(n_classes), seen_(n_classes) {}

void GaussianNB::learn_one(const FeatureVector& x, ClassLabel y, double weight) {
  check_label(y);
  if (weight <= 0.0) return;
  class_weight_[y] += weight;
  auto& stats = stats_[y];
  if (stats.empty()) stats.resize(features::kFeatureIdUniverse);
  for (const auto& [id, value] : x.values) {
    if (stats[id].weight() == 0.0) seen_[y].push_back(id);
    stats[id].add(value, weight);
  }
}

Proba GaussianNB::predict_proba_one(const FeatureVector& x) const {
  const std::size_t m = n_classes();
  Proba p(m, 0.0);
  double total = 0.0;
  for (double w : class_weight_) total += w;
  if (total == 0.0) {
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(m));
    return p;
  }
  std::vector<double> logp(m, -std::numeric_limits<double>::infinity());
  for (std::size_t c = 0; c < m; ++c) {
    if (class_weight_[c] == 0.0) continue;
    double lp = std::log(class_weight_[c] / total);
    const auto& stats = stats_[c];
    for (const auto& [id, value] : x.values) {
      const auto& s = stats[id];
      if (s.weight() == 0.0) continue;
      lp += gaussian_log_pdf(value, s.mean(), s.variance());
    }
    logp[c] = lp;
  }
  const double top = *std::max_element(logp.begin(), logp.end());
  for (std::size_t c = 0; c < m; ++c) {
    p[c] = std::isinf(logp[c]) ? 0.0 : std::exp(logp[c] - top);
  }
  normalize(p);
  return p;
}

std::uint64_t GaussianNB::digest() const {
  Digest d;
  d.add(std::string_view("gnb"));
  for (std::size_t c = 0; c < n_classes(); ++c) {
    d.add(class_weight_[c]);
    auto ids = seen_[c];
    std::sort(ids.begin(), ids.end());
    for (FeatureId id : ids) {
      const auto& s = stats_[c][id];
      d.add(static_cast<std::uint64_t>(id));
      d.add(s.weight());
      d.add(s.mean());
      d.add(s.m2());
    }
  }
  return d.value();
}

}  // namespace nwa::models
