// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "models/factory.hpp"

#include "common/error.hpp"

namespace nwa::models {

std::unique_ptr<Classifier> make_classifier(ModelId id, std::size_t n_classes, std::uint64_t seed,
                                            const ModelConfig& config) {
  switch (id) {
    case ModelId::kGnb: return std::make_unique<GaussianNB>(n_classes);
    case ModelId::kHatc: return std::make_unique<HoeffdingTree>(n_classes, config.hatc, seed);
    case ModelId::kArfc: return std::make_unique<AdaptiveRandomForest>(n_classes, config.arfc, seed);
    case ModelId::kKMeans: break;
  }
  fail(ErrorKind::kConfig, "kmeans is not a supervised classifier");
}

}  // namespace nwa::models
