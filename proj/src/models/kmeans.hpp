// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "common/rng.hpp"
#include "models/model.hpp"

namespace nwa::models {

struct KMeansConfig {
  int n_clusters = 3;
  double halflife = 0.075;
  double mu = 0.01;
  double sigma = 0.001;
  double p = 1.0;

  static KMeansConfig nwgti() { return {3, 0.075, 0.01, 0.001, 1.0}; }
  static KMeansConfig pamap2() { return {2, 0.77, 0.01, 10.0, 1.0}; }
};

/// Incremental K-means. Centroid coordinates are drawn from N(mu, sigma) the
/// first time a key is seen; distances use only the keys present in the
/// sample; the winner moves by `halflife` toward the sample.
class KMeans {
 public:
  explicit KMeans(KMeansConfig config = {}, std::uint64_t seed = 0);

  /// Assigns `x` and updates the winning centroid.
  int learn_predict_one(const FeatureVector& x);
  /// Assigns `x` without moving any centroid.
  int predict_one(const FeatureVector& x);

  double distance(int cluster, const FeatureVector& x);
  const std::unordered_map<FeatureId, double>& center(int cluster) const { return centers_[cluster]; }
  int n_clusters() const { return config_.n_clusters; }
  const KMeansConfig& config() const { return config_; }
  std::uint64_t digest() const;

 private:
  void materialize(const FeatureVector& x);

  KMeansConfig config_;
  Rng rng_;
  std::vector<std::unordered_map<FeatureId, double>> centers_;
};

}  // namespace nwa::models
