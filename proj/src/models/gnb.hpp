// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "common/numeric.hpp"
#include "models/model.hpp"

namespace nwa::models {

/// Gaussian naive Bayes with per-class running moments for every key.
/// Keys a class has not seen are skipped for that class.
class GaussianNB final : public Classifier {
 public:
  explicit GaussianNB(std::size_t n_classes);

  void learn_one(const FeatureVector& x, ClassLabel y, double weight = 1.0) override;
  Proba predict_proba_one(const FeatureVector& x) const override;
  std::uint64_t digest() const override;
  std::unique_ptr<Classifier> clone() const override { return std::make_unique<GaussianNB>(*this); }
  std::string_view name() const override { return "gnb"; }

  double class_weight(ClassLabel c) const { return class_weight_[c]; }
  const RunningMoments& moments(ClassLabel c, FeatureId id) const { return stats_[c][id]; }

 private:
  std::vector<double> class_weight_;
  std::vector<std::vector<RunningMoments>> stats_;  // [class][feature id]
  std::vector<std::vector<FeatureId>> seen_;        // per class, first-seen order
};

}  // namespace nwa::models
