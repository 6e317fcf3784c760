// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"
#include "wikistream/model/adwin.hpp"
#include "wikistream/model/alma.hpp"
#include "wikistream/model/factory.hpp"
#include "wikistream/model/gaussian_nb.hpp"
#include "wikistream/model/grid_search.hpp"

using namespace wikistream;
using namespace wikistream::model;

namespace {

FeatureVector x1(double v) {
  FeatureVector x;
  x.set(FeatureId{0}, v);
  return x;
}

}  // namespace

TEST(GaussianNB, SymmetricClassesGiveEvenPosterior) {
  GaussianNB nb;
  for (int i = 0; i < 50; ++i) {
    nb.learn_one(x1(-1), Label::kNonDisinformation);
    nb.learn_one(x1(1), Label::kDisinformation);
  }
  auto p = nb.predict_proba_one(x1(0));
  EXPECT_NEAR(p[0], 0.5, 1e-6);
  EXPECT_NEAR(p[1], 0.5, 1e-6);
  EXPECT_EQ(nb.predict_one(x1(1)), Label::kDisinformation);
}

TEST(GaussianNB, UntrainedIsUniform) {
  GaussianNB nb;
  auto p = nb.predict_proba_one(x1(3));
  EXPECT_EQ(p[0], 0.5);
  EXPECT_EQ(nb.predict_one(x1(3)), Label::kNonDisinformation);
}

TEST(GaussianNB, MatchesBatchRefitOnEveryPrefix) {
  std::mt19937_64 rng(11);
  auto stream = oracle::random_stream(rng, 300, 4, 0.2);
  GaussianNB nb;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    const auto p = nb.predict_proba_one(stream[i].first);
    const auto q = oracle::batch_gnb(stream, i, stream[i].first);
    ASSERT_NEAR(p[0], q[0], 1e-9) << "prefix " << i;
    ASSERT_NEAR(p[1], q[1], 1e-9) << "prefix " << i;
    nb.learn_one(stream[i].first, stream[i].second);
  }
}

TEST(Alma, ZeroWeightsPredictClassZero) {
  Alma a;
  EXPECT_EQ(a.predict_one(x1(5)), Label::kNonDisinformation);
  EXPECT_EQ(a.predict_proba_one(x1(5))[0], 0.5);
}

TEST(Alma, WeightsStayInUnitBall) {
  Alma a;
  std::mt19937_64 rng(2);
  auto stream = oracle::random_stream(rng, 200, 5);
  for (const auto& [x, y] : stream) {
    a.learn_one(x, y);
    EXPECT_LE(a.weight_norm(), 1.0 + 1e-12);
  }
  EXPECT_GT(a.updates(), 0u);
}

TEST(Alma, LearnsSeparableStream) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Alma a;
  std::size_t correct = 0;
  const std::size_t n = 500;
  for (std::size_t i = 0; i < n;) {
    const double p = u(rng), q = u(rng);
    const double m = (p + q) / std::sqrt(2.0);
    if (std::abs(m) < 0.5) continue;
    FeatureVector x;
    x.set(FeatureId{0}, p);
    x.set(FeatureId{1}, q);
    const Label y = m > 0 ? Label::kDisinformation : Label::kNonDisinformation;
    if (i >= n - 100 && a.predict_one(x) == y) ++correct;
    a.learn_one(x, y);
    ++i;
  }
  EXPECT_GE(correct, 95u);
}

TEST(Adwin, DetectsMeanShift) {
  Adwin d;
  std::mt19937_64 rng(1);
  std::bernoulli_distribution lo(0.1), hi(0.9);
  bool early = false;
  for (int i = 0; i < 1000; ++i) early |= d.update(lo(rng) ? 1.0 : 0.0);
  EXPECT_FALSE(early);
  bool detected = false;
  for (int i = 0; i < 1000 && !detected; ++i) detected = d.update(hi(rng) ? 1.0 : 0.0);
  EXPECT_TRUE(detected);
  for (int i = 0; i < 300; ++i) d.update(hi(rng) ? 1.0 : 0.0);
  EXPECT_GT(d.estimation(), 0.7);
}

TEST(Factory, NamesAndParsing) {
  EXPECT_EQ(parse_model_kind("arfc"), ModelKind::kArfc);
  EXPECT_EQ(model_name(ModelKind::kGnb), "gnb");
  EXPECT_THROW(parse_model_kind("svm"), UnsupportedModelError);
  EXPECT_EQ(parse_subspace("sqrt"), SubspaceSize::sqrt());
  EXPECT_EQ(parse_subspace("25"), SubspaceSize::fixed(25));
  EXPECT_THROW(parse_subspace("0"), ConfigurationError);
  EXPECT_THROW(parse_subspace("x"), ConfigurationError);
}

TEST(Factory, DefaultsAreTunedValues) {
  ModelConfig c;
  EXPECT_EQ(c.alma.alpha, 0.9);
  EXPECT_EQ(c.alma.B, 1.8);
  EXPECT_EQ(c.alma.C, 1.8);
  EXPECT_EQ(*c.hatc.max_depth, 200u);
  EXPECT_EQ(c.hatc.tie_threshold, 0.005);
  EXPECT_EQ(c.hatc.max_size_mb, 200.0);
  EXPECT_EQ(c.arfc.models, 75u);
  EXPECT_EQ(c.arfc.features, SubspaceSize::fixed(100));
  EXPECT_EQ(c.arfc.lambda, 100.0);
  for (auto k : {ModelKind::kGnb, ModelKind::kAlma, ModelKind::kHatc, ModelKind::kArfc}) {
    c.kind = k;
    EXPECT_EQ(make_classifier(c)->kind(), model_name(k));
  }
}

TEST(GridSearch, DefaultListsEndWithTunedValues) {
  HyperparameterGrid g;
  EXPECT_EQ(g.alma_alpha, (std::vector<double>{0.3, 0.5, 0.7, 0.9}));
  EXPECT_EQ(g.alma_B.back(), 1.8);
  EXPECT_EQ(g.alma_C.back(), 1.8);
  EXPECT_EQ(g.arfc_models.back(), 75u);
  ModelConfig base;
  base.kind = ModelKind::kAlma;
  EXPECT_EQ(g.expand(base).size(), 4u * 4u * 5u);
}

TEST(GridSearch, SinglePointGrid) {
  HyperparameterGrid g;
  g.alma_alpha = {0.5};
  g.alma_B = {1.0};
  g.alma_C = {1.1};
  ModelConfig base;
  base.kind = ModelKind::kAlma;
  std::mt19937_64 rng(3);
  auto s = oracle::random_stream(rng, 50, 2);
  auto r = grid_search(base, g, s);
  EXPECT_EQ(r.scores.size(), 1u);
  EXPECT_EQ(r.best.alma.alpha, 0.5);
  EXPECT_EQ(r.best.alma.C, 1.1);
}

TEST(GridSearch, PrefersDeeperTreeOnConjunction) {
  // y = (a > 0.5) and (b > 0.5): one split caps accuracy near 0.75.
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<oracle::Sample> s;
  for (int i = 0; i < 4000; ++i) {
    FeatureVector x;
    const double a = u(rng), b = u(rng);
    x.set(FeatureId{0}, a);
    x.set(FeatureId{1}, b);
    s.emplace_back(x, a > 0.5 && b > 0.5 ? Label::kDisinformation : Label::kNonDisinformation);
  }
  HyperparameterGrid g;
  g.hatc_depth = {1, 4};
  g.hatc_tie_threshold = {0.5};
  g.hatc_max_size = {200};
  ModelConfig base;
  base.kind = ModelKind::kHatc;
  auto r = grid_search(base, g, s);
  ASSERT_EQ(r.scores.size(), 2u);
  EXPECT_EQ(*r.best.hatc.max_depth, 4u);
  EXPECT_GT(r.scores[1].second, r.scores[0].second);
}

TEST(GridSearch, EmptySamplesRejected) {
  EXPECT_THROW(grid_search(ModelConfig{}, HyperparameterGrid{}, {}), ValidationError);
}
