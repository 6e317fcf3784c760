// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "wikistream/model/classifier.hpp"
#include "wikistream/selection/variance_selector.hpp"

namespace wikistream::model {

struct GaussianNBParams {
  double var_floor = 1e-9;
};

/// Streaming Gaussian naive Bayes. Per class: a prior count; per (class,
/// feature): running mean and population variance.
///
/// A feature in the query contributes to the joint likelihood only when every
/// class with prior mass has observed it, so absent dimensions never act as
/// implicit zeros. Predicting before any learning returns the uniform
/// distribution.
class GaussianNB final : public Classifier {
 public:
  explicit GaussianNB(GaussianNBParams params = {}) : params_(params) {}

  void learn_one(const FeatureVector& x, Label y) override {
    const auto c = static_cast<std::size_t>(to_int(y));
    class_count_[c] += 1.0;
    auto& table = moments_[c];
    for (const auto& e : x) {
      if (e.id.index >= table.size()) table.resize(e.id.index + 1);
      table[e.id.index].update(e.value);
    }
  }

  ClassDistribution predict_proba_one(const FeatureVector& x) const override {
    const double total = class_count_[0] + class_count_[1];
    if (total <= 0.0) return {0.5, 0.5};
    std::array<double, 2> log_joint{};
    std::array<bool, 2> active{class_count_[0] > 0.0, class_count_[1] > 0.0};
    for (std::size_t c = 0; c < 2; ++c) {
      log_joint[c] = active[c] ? std::log(class_count_[c] / total) : -std::numeric_limits<double>::infinity();
    }
    for (const auto& e : x) {
      bool usable = true;
      for (std::size_t c = 0; c < 2 && usable; ++c) {
        if (active[c]) usable = observed(c, e.id);
      }
      if (!usable) continue;
      for (std::size_t c = 0; c < 2; ++c) {
        if (!active[c]) continue;
        const auto& m = moments_[c][e.id.index];
        log_joint[c] += log_gaussian(e.value, m.mean, std::max(m.variance(), params_.var_floor));
      }
    }
    const double hi = std::max(log_joint[0], log_joint[1]);
    ClassDistribution p{};
    for (std::size_t c = 0; c < 2; ++c) p[c] = active[c] ? std::exp(log_joint[c] - hi) : 0.0;
    return normalize(p);
  }

  std::string_view kind() const noexcept override { return "gnb"; }

  double class_count(Label y) const noexcept { return class_count_[to_int(y)]; }

  const selection::RunningMoments* moments(Label y, FeatureId id) const {
    const auto c = static_cast<std::size_t>(to_int(y));
    return observed(c, id) ? &moments_[c][id.index] : nullptr;
  }

  static double log_gaussian(double x, double mean, double var) {
    constexpr double kLogTwoPi = 1.8378770664093454835606594728112;
    const double d = x - mean;
    return -0.5 * (kLogTwoPi + std::log(var) + d * d / var);
  }

 private:
  bool observed(std::size_t c, FeatureId id) const {
    return id.index < moments_[c].size() && moments_[c][id.index].count > 0.0;
  }

  GaussianNBParams params_;
  std::array<double, 2> class_count_{};
  std::array<std::vector<selection::RunningMoments>, 2> moments_;
};

}  // namespace wikistream::model
