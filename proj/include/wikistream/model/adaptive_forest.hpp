// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "wikistream/core/random.hpp"
#include "wikistream/model/hoeffding_tree.hpp"

namespace wikistream::model {

struct ForestParams {
  std::size_t models = 75;
  SubspaceSize features = SubspaceSize::fixed(100);
  double lambda = 100.0;
  bool bagging = true;
  TreeParams tree{};  // tree.subspace is overridden by `features`
};

/// Seed of member `i`: member 0 uses the forest seed itself.
inline std::uint64_t member_seed(std::uint64_t seed, std::size_t i) noexcept {
  return seed ^ (static_cast<std::uint64_t>(i) * 0x9E3779B97F4A7C15ULL);
}

/// Adaptive random forest of Hoeffding adaptive trees.
///
/// Each member sees a sample with weight k ~ Poisson(lambda) drawn from its
/// own bagging stream (k = 0 skips it) and splits on a random feature subset
/// per leaf. Drift is handled inside each member. Prediction is a majority
/// vote with ties to class 0; the probability of a class is its vote share.
class AdaptiveRandomForest final : public Classifier {
 public:
  explicit AdaptiveRandomForest(ForestParams params = {}, std::uint64_t seed = 0) : params_(params) {
    if (params_.models == 0) throw std::invalid_argument("forest needs at least one model");
    if (params_.bagging && !(params_.lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
    TreeParams tp = params_.tree;
    tp.subspace = params_.features;
    trees_.reserve(params_.models);
    bagging_.reserve(params_.models);
    for (std::size_t i = 0; i < params_.models; ++i) {
      const auto s = member_seed(seed, i);
      trees_.emplace_back(tp, s);
      bagging_.emplace_back(splitmix64(s));
    }
  }

  void learn_one(const FeatureVector& x, Label y) override {
    for (std::size_t i = 0; i < trees_.size(); ++i) {
      const int k = params_.bagging ? poisson(bagging_[i], params_.lambda) : 1;
      if (k > 0) trees_[i].learn_weighted(x, y, static_cast<double>(k));
    }
  }

  /// Class-1 votes.
  std::size_t votes_for_disinformation(const FeatureVector& x) const {
    std::size_t v = 0;
    for (const auto& t : trees_) v += t.predict_one(x) == Label::kDisinformation ? 1 : 0;
    return v;
  }

  ClassDistribution predict_proba_one(const FeatureVector& x) const override {
    const double ones = static_cast<double>(votes_for_disinformation(x));
    const double n = static_cast<double>(trees_.size());
    return {(n - ones) / n, ones / n};
  }

  std::string_view kind() const noexcept override { return "arfc"; }

  const std::vector<HoeffdingAdaptiveTree>& trees() const noexcept { return trees_; }
  const ForestParams& params() const noexcept { return params_; }

 private:
  ForestParams params_;
  std::vector<HoeffdingAdaptiveTree> trees_;
  std::vector<Rng> bagging_;
};

}  // namespace wikistream::model
