// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string_view>

#include "wikistream/core/feature_vector.hpp"

namespace wikistream::model {

/// Probability of class 0 and class 1.
using ClassDistribution = std::array<double, 2>;

/// Ties go to class 0.
inline Label argmax(const ClassDistribution& d) noexcept {
  return d[1] > d[0] ? Label::kDisinformation : Label::kNonDisinformation;
}

inline ClassDistribution normalize(ClassDistribution d) noexcept {
  const double total = d[0] + d[1];
  if (!(total > 0.0)) return {0.5, 0.5};
  return {d[0] / total, d[1] / total};
}

/// Incremental binary classifier. Inputs are never modified.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual void learn_one(const FeatureVector& x, Label y) = 0;
  virtual ClassDistribution predict_proba_one(const FeatureVector& x) const = 0;
  virtual std::string_view kind() const noexcept = 0;

  Label predict_one(const FeatureVector& x) const { return argmax(predict_proba_one(x)); }

  /// Confidence reported with a prediction: the probability of the predicted class.
  double confidence(const FeatureVector& x) const {
    const auto p = predict_proba_one(x);
    return p[to_int(argmax(p))];
  }
};

}  // namespace wikistream::model
