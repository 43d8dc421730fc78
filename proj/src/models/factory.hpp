// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>

#include "models/arf.hpp"
#include "models/gnb.hpp"
#include "models/hoeffding_tree.hpp"
#include "models/kmeans.hpp"

namespace nwa::models {

struct ModelConfig {
  TreeConfig hatc;
  ForestConfig arfc;
};

/// Supervised models only; K-means is constructed directly.
std::unique_ptr<Classifier> make_classifier(ModelId id, std::size_t n_classes, std::uint64_t seed,
                                            const ModelConfig& config = {});

}  // namespace nwa::models
