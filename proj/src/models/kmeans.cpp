// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "models/kmeans.hpp"

#include <algorithm>
#include <cmath>

#include "common/digest.hpp"
#include "common/error.hpp"

namespace nwa::models {

KMeans::KMeans(KMeansConfig config, std::uint64_t seed) : config_(config), rng_(seed) {
  if (config_.n_clusters < 2) fail(ErrorKind::kConfig, "n_clusters must be at least 2");
  if (!(config_.halflife > 0.0 && config_.halflife <= 1.0)) {
    fail(ErrorKind::kConfig, "halflife must lie in (0, 1]");
  }
  if (!(config_.p > 0.0) || config_.sigma < 0.0) fail(ErrorKind::kConfig, "invalid K-means prior");
  centers_.resize(static_cast<std::size_t>(config_.n_clusters));
}

void KMeans::materialize(const FeatureVector& x) {
  auto& first = centers_.front();
  bool fresh = false;
  for (const auto& entry : x.values) {
    if (!first.count(entry.first)) {
      fresh = true;
      break;
    }
  }
  if (!fresh) return;
  std::vector<FeatureId> missing;
  for (const auto& entry : x.values) {
    if (!first.count(entry.first)) missing.push_back(entry.first);
  }
  for (auto& center : centers_) {
    for (FeatureId id : missing) center[id] = rng_.normal(config_.mu, config_.sigma);
  }
}

double KMeans::distance(int cluster, const FeatureVector& x) {
  materialize(x);
  const auto& c = centers_[cluster];
  double total = 0.0;
  if (config_.p == 1.0) {
    for (const auto& [id, v] : x.values) total += std::fabs(v - c.at(id));
    return total;
  }
  for (const auto& [id, v] : x.values) total += std::pow(std::fabs(v - c.at(id)), config_.p);
  return std::pow(total, 1.0 / config_.p);
}

int KMeans::predict_one(const FeatureVector& x) {
  materialize(x);
  int best = 0;
  double best_d = distance(0, x);
  for (int k = 1; k < config_.n_clusters; ++k) {
    const double d = distance(k, x);
    if (d < best_d) {
      best = k;
      best_d = d;
    }
  }
  return best;
}

int KMeans::learn_predict_one(const FeatureVector& x) {
  const int k = predict_one(x);
  auto& c = centers_[k];
  for (const auto& [id, v] : x.values) {
    double& coord = c.at(id);
    coord += config_.halflife * (v - coord);
  }
  return k;
}

std::uint64_t KMeans::digest() const {
  Digest d;
  d.add(std::string_view("kmeans"));
  for (const auto& center : centers_) {
    std::vector<std::pair<FeatureId, double>> coords(center.begin(), center.end());
    std::sort(coords.begin(), coords.end());
    for (const auto& [id, v] : coords) {
      d.add(static_cast<std::uint64_t>(id));
      d.add(v);
    }
  }
  return d.value();
}

}  // namespace nwa::models
