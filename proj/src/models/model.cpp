// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "models/model.hpp"

#include <numeric>

#include "common/error.hpp"

namespace nwa::models {

ClassLabel argmax(const Proba& p) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i] > p[best]) best = i;
  }
  return static_cast<ClassLabel>(best);
}

void normalize(Proba& p) {
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (!(total > 0.0)) {
    std::fill(p.begin(), p.end(), p.empty() ? 0.0 : 1.0 / static_cast<double>(p.size()));
    return;
  }
  for (auto& v : p) v /= total;
}

Classifier::Classifier(std::size_t n_classes) : n_classes_(n_classes) {
  if (n_classes < 2) fail(ErrorKind::kConfig, "a classifier needs at least two classes");
}

void Classifier::check_label(ClassLabel y) const {
  if (y >= n_classes_) {
    fail(ErrorKind::kData, "label " + stream::label_symbol(y) + " outside the declared class set");
  }
}

std::string_view to_string(ModelId id) {
  switch (id) {
    case ModelId::kGnb: return "gnb";
    case ModelId::kHatc: return "hatc";
    case ModelId::kArfc: return "arfc";
    case ModelId::kKMeans: return "kmeans";
  }
  return "?";
}

std::optional<ModelId> parse_model_id(std::string_view text) {
  for (auto id : {ModelId::kGnb, ModelId::kHatc, ModelId::kArfc, ModelId::kKMeans}) {
    if (to_string(id) == text) return id;
  }
  return std::nullopt;
}

}  // namespace nwa::models
