// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wikistream/core/error.hpp"
#include "wikistream/model/factory.hpp"

namespace wikistream::model {

/// Candidate values per hyperparameter. Defaults hold the searched grids;
/// the last value of each list is the tuned default used without a search.
struct HyperparameterGrid {
  std::vector<double> alma_alpha{0.3, 0.5, 0.7, 0.9};
  std::vector<double> alma_B{0.6, 1.0, 1.4, 1.8};
  std::vector<double> alma_C{0.6, 1.0, 1.1, 1.4, 1.8};
  std::vector<std::optional<std::size_t>> hatc_depth{std::nullopt, 50, 100, 200};
  std::vector<double> hatc_tie_threshold{0.9, 0.5, 0.05, 0.005};
  std::vector<double> hatc_max_size{25, 50, 100, 200};
  std::vector<std::size_t> arfc_models{10, 25, 50, 75};
  std::vector<SubspaceSize> arfc_features{SubspaceSize::sqrt(), SubspaceSize::fixed(25), SubspaceSize::fixed(50),
                                          SubspaceSize::fixed(100)};
  std::vector<double> arfc_lambda{5, 25, 50, 100};

  /// Cartesian product for `base.kind`, first list varying slowest.
  std::vector<ModelConfig> expand(const ModelConfig& base) const {
    std::vector<ModelConfig> out;
    switch (base.kind) {
      case ModelKind::kGnb:
        out.push_back(base);
        break;
      case ModelKind::kAlma:
        for (double a : alma_alpha)
          for (double b : alma_B)
            for (double c : alma_C) {
              ModelConfig m = base;
              m.alma = {a, b, c};
              out.push_back(m);
            }
        break;
      case ModelKind::kHatc:
        for (const auto& d : hatc_depth)
          for (double t : hatc_tie_threshold)
            for (double s : hatc_max_size) {
              ModelConfig m = base;
              m.hatc.max_depth = d;
              m.hatc.tie_threshold = t;
              m.hatc.max_size_mb = s;
              out.push_back(m);
            }
        break;
      case ModelKind::kArfc:
        for (std::size_t n : arfc_models)
          for (const auto& f : arfc_features)
            for (double l : arfc_lambda) {
              ModelConfig m = base;
              m.arfc.models = n;
              m.arfc.features = f;
              m.arfc.lambda = l;
              out.push_back(m);
            }
        break;
    }
    return out;
  }
};

/// Test-then-train accuracy of a fresh model over `samples`.
inline double prequential_accuracy(const ModelConfig& config,
                                   std::span<const std::pair<FeatureVector, Label>> samples) {
  if (samples.empty()) return 0.0;
  auto model = make_classifier(config);
  std::size_t correct = 0;
  for (const auto& [x, y] : samples) {
    if (model->predict_one(x) == y) ++correct;
    model->learn_one(x, y);
  }
  return static_cast<double>(correct) / static_cast<double>(samples.size());
}

struct GridSearchResult {
  ModelConfig best;
  double best_score = 0.0;
  std::vector<std::pair<ModelConfig, double>> scores;
};

/// Exhaustive search; ties keep the earliest grid point.
inline GridSearchResult grid_search(const ModelConfig& base, const HyperparameterGrid& grid,
                                    std::span<const std::pair<FeatureVector, Label>> samples) {
  if (samples.empty()) throw ValidationError("grid search needs a non-empty cold start");
  GridSearchResult r;
  bool first = true;
  for (const auto& c : grid.expand(base)) {
    const double s = prequential_accuracy(c, samples);
    r.scores.emplace_back(c, s);
    if (first || s > r.best_score) {
      r.best = c;
      r.best_score = s;
      first = false;
    }
  }
  return r;
}

}  // namespace wikistream::model
