// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "common/rng.hpp"
#include "models/hoeffding_tree.hpp"

namespace nwa::models {

struct ForestConfig {
  int models = 50;
  /// Keys drawn per leaf; 0 keeps every key.
  int features = 50;
  /// Configured Poisson rate. Resampling uses lambda / 10 unless
  /// `raw_lambda` is set; 0 trains every tree once per sample.
  double lambda = 50.0;
  bool raw_lambda = false;
  TreeConfig tree;

  double effective_lambda() const { return raw_lambda ? lambda : lambda / 10.0; }
};

/// Ensemble of adaptive Hoeffding trees with Poisson resampling and random
/// per-leaf key subsets. Probabilities are the normalized sum of the member
/// trees' normalized votes.
class AdaptiveRandomForest final : public Classifier {
 public:
  AdaptiveRandomForest(std::size_t n_classes, ForestConfig config = {}, std::uint64_t seed = 0);

  void learn_one(const FeatureVector& x, ClassLabel y, double weight = 1.0) override;
  Proba predict_proba_one(const FeatureVector& x) const override;
  std::uint64_t digest() const override;
  std::unique_ptr<Classifier> clone() const override {
    return std::make_unique<AdaptiveRandomForest>(*this);
  }
  std::string_view name() const override { return "arfc"; }

  const std::vector<HoeffdingTree>& trees() const { return trees_; }
  const ForestConfig& config() const { return config_; }

 private:
  ForestConfig config_;
  std::vector<HoeffdingTree> trees_;
  std::vector<Rng> resample_;
  bool trained_ = false;
};

}  // namespace nwa::models
