// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <vector>

#include "wikistream/model/classifier.hpp"

namespace wikistream::model {

struct AlmaParams {
  double alpha = 0.9;
  double B = 1.8;
  double C = 1.8;
};

/// Approximate large margin algorithm, p = 2.
///
/// On a margin violation y<w,x> <= (1-alpha) B/sqrt(k), the weights move by
/// C/sqrt(k) y x and are scaled back into the unit ball; k counts updates.
/// Absent features do not take part in the dot product or the update.
class Alma final : public Classifier {
 public:
  explicit Alma(AlmaParams params = {}) : params_(params) {}

  void learn_one(const FeatureVector& x, Label y) override {
    const double sign = y == Label::kDisinformation ? 1.0 : -1.0;
    const double sqrt_k = std::sqrt(static_cast<double>(k_));
    const double gamma = params_.B / sqrt_k;
    if (sign * margin(x) > (1.0 - params_.alpha) * gamma) return;
    const double eta = params_.C / sqrt_k;
    for (const auto& e : x) {
      if (e.id.index >= weights_.size()) weights_.resize(e.id.index + 1, 0.0);
      weights_[e.id.index] += eta * sign * e.value;
    }
    double norm2 = 0.0;
    for (double w : weights_) norm2 += w * w;
    const double norm = std::sqrt(norm2);
    if (norm > 1.0) {
      for (double& w : weights_) w /= norm;
    }
    ++k_;
  }

  double margin(const FeatureVector& x) const {
    double s = 0.0;
    for (const auto& e : x) {
      if (e.id.index < weights_.size()) s += weights_[e.id.index] * e.value;
    }
    return s;
  }

  /// Logistic of the margin; a zero margin gives (0.5, 0.5) and predicts class 0.
  ClassDistribution predict_proba_one(const FeatureVector& x) const override {
    const double p1 = 1.0 / (1.0 + std::exp(-margin(x)));
    return {1.0 - p1, p1};
  }

  std::string_view kind() const noexcept override { return "alma"; }

  std::size_t updates() const noexcept { return k_ - 1; }
  double weight_norm() const {
    double n2 = 0.0;
    for (double w : weights_) n2 += w * w;
    return std::sqrt(n2);
  }

 private:
  AlmaParams params_;
  std::vector<double> weights_;
  std::size_t k_ = 1;
};

}  // namespace wikistream::model
