// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "features/feature_key.hpp"
#include "stream/types.hpp"

namespace nwa::models {

using features::FeatureId;
using features::FeatureVector;
using stream::ClassLabel;

/// Class probabilities indexed by label.
using Proba = std::vector<double>;

/// Highest probability; the lowest label wins ties.
ClassLabel argmax(const Proba& p);

/// Scales `p` to sum to one; all-zero input becomes uniform.
void normalize(Proba& p);

/// Incremental supervised classifier over sparse feature vectors.
class Classifier {
 public:
  explicit Classifier(std::size_t n_classes);
  virtual ~Classifier() = default;

  virtual void learn_one(const FeatureVector& x, ClassLabel y, double weight = 1.0) = 0;
  virtual Proba predict_proba_one(const FeatureVector& x) const = 0;
  ClassLabel predict_one(const FeatureVector& x) const { return argmax(predict_proba_one(x)); }

  /// Stable hash of the sufficient statistics.
  virtual std::uint64_t digest() const = 0;
  virtual std::unique_ptr<Classifier> clone() const = 0;
  virtual std::string_view name() const = 0;

  std::size_t n_classes() const { return n_classes_; }

 protected:
  void check_label(ClassLabel y) const;

 private:
  std::size_t n_classes_;
};

enum class ModelId { kGnb, kHatc, kArfc, kKMeans };

std::string_view to_string(ModelId id);
std::optional<ModelId> parse_model_id(std::string_view text);

}  // namespace nwa::models
