// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <set>

#include "wikistream/ingest/scenario.hpp"
#include "wikistream/ingest/synth.hpp"
#include "wikistream/pipeline/pipeline.hpp"

using namespace wikistream;
using namespace wikistream::pipeline;

namespace {

std::vector<WikiEvent> synth(std::size_t n, std::uint64_t seed = 7) {
  SynthConfig c;
  c.n = n;
  c.seed = seed;
  return synthesize_events(c);
}

PipelineConfig small_forest(bool retain = true) {
  PipelineConfig c;
  c.model.kind = model::ModelKind::kArfc;
  c.model.arfc.models = 5;
  c.model.arfc.lambda = 6;
  c.retain_records = retain;
  return c;
}

}  // namespace

TEST(Featurizer, FixedLayout) {
  const auto names = Featurizer::fixed_names();
  EXPECT_EQ(names.size(), 4u + 7 + 3 + 5 + 1 + 300 + 5 + 7 + 4 + 5 + 4 + 4 * 19);
  EXPECT_EQ(std::set<std::string>(names.begin(), names.end()).size(), names.size());
  Featurizer f;
  EXPECT_EQ(f.space().size(), names.size());
  EXPECT_EQ(f.quality_ids().size(), 16u);
  EXPECT_EQ(f.base_feature_of(*f.space().find("flesch")), 4u);
  EXPECT_EQ(f.base_feature_of(*f.space().find("aq_wp10stub")), 15u);
  EXPECT_FALSE(f.base_feature_of(*f.space().find("user_post_count")));
}

TEST(Featurizer, VectorCarriesTextAndQualityValues) {
  Featurizer f;
  f.set_ngram_cap(4);
  WikiEvent ev;
  ev.content = "The cat sat on the mat.";
  ev.size_diff = -3;
  ev.edit_quality = std::array<double, 4>{0.2, 0.8, 0.6, 0.4};
  const auto v = f.vectorize(f.base(ev), {});
  EXPECT_NEAR(*v.get(*f.space().find("flesch")), 116.145, 1e-9);
  EXPECT_EQ(*v.get(*f.space().find("size_diff")), -3.0);
  EXPECT_EQ(*v.get(*f.space().find("eq_damaging_true")), 0.8);
  EXPECT_FALSE(v.get(*f.space().find("aq_ok")));
  EXPECT_EQ(*v.get(*f.space().find("ng:cat")), 1.0);
}

TEST(Pipeline, UseBeforeCalibrationFails) {
  Pipeline p;
  EXPECT_THROW(p.process(synth(1)[0]), std::logic_error);
  EXPECT_THROW(p.calibrate({}), ValidationError);
}

TEST(Pipeline, ThresholdFromQualityScores) {
  auto events = synth(200);
  Pipeline p(small_forest());
  p.calibrate(std::span<const WikiEvent>(events.data(), 50));
  EXPECT_TRUE(p.calibrated());
  EXPECT_GT(p.selector().threshold(), 0.0);
  EXPECT_GE(p.featurizer().ngrams().cap(), 1u);
  EXPECT_EQ(p.learned(), 50u);
  EXPECT_EQ(p.population().count(), 50u);
}

TEST(Pipeline, ThresholdFallbackWithoutQualityScores) {
  auto events = synth(60);
  for (auto& e : events) {
    e.article_quality.reset();
    e.edit_quality.reset();
    e.review_quality.reset();
  }
  Pipeline p(small_forest());
  p.calibrate(std::span<const WikiEvent>(events.data(), 30));
  EXPECT_GT(p.selector().threshold(), 0.0);
}

TEST(Pipeline, ProcessRecordsAndRejectsDuplicates) {
  auto events = synth(120);
  Pipeline p(small_forest());
  p.calibrate(std::span<const WikiEvent>(events.data(), 20));
  for (std::size_t i = 20; i < events.size(); ++i) {
    const auto r = p.process(events[i]);
    EXPECT_EQ(r.index, i - 19);
    EXPECT_EQ(r.confidence, r.proba[to_int(r.predicted)]);
    EXPECT_LE(r.top_features.size(), 3u);
    std::set<std::size_t> bases;
    for (std::size_t k = 0; k < r.top_features.size(); ++k) {
      bases.insert(r.top_features[k].base_feature);
      if (k > 0) {
        EXPECT_GE(r.top_features[k - 1].variance, r.top_features[k].variance);
      }
    }
    EXPECT_EQ(bases.size(), r.top_features.size());
  }
  EXPECT_EQ(p.predictions(), 100u);
  EXPECT_THROW(p.process(events[50]), ConflictError);
  EXPECT_THROW(p.record("nope"), NotFoundError);
  EXPECT_FALSE(p.contributions(events[30].user_id).empty());
}

TEST(Pipeline, DeterministicAcrossInstances) {
  auto events = synth(300, 3);
  Pipeline a(small_forest(false)), b(small_forest(false));
  std::span<const WikiEvent> cold(events.data(), 30);
  a.calibrate(cold);
  b.calibrate(cold);
  for (std::size_t i = 30; i < events.size(); ++i) {
    const auto ra = a.process(events[i]);
    const auto rb = b.process(events[i]);
    ASSERT_EQ(ra.proba, rb.proba);
    ASSERT_EQ(ra.selected, rb.selected);
  }
}

TEST(Pipeline, FeedbackTrainsAndCountsSpam) {
  auto events = synth(80);
  for (auto& e : events) e.revert_flag = false;
  for (std::size_t i = 40; i < events.size(); ++i) events[i].label.reset();
  PipelineConfig cfg = small_forest();
  cfg.model.kind = model::ModelKind::kGnb;
  Pipeline p(cfg);
  p.calibrate(std::span<const WikiEvent>(events.data(), 40));
  const auto r = p.process(events[40]);
  const auto learned = p.learned();
  const auto spam = p.histories().user(r.user_id)->spam_count;
  p.apply_feedback(r.event_id, Label::kDisinformation);
  EXPECT_EQ(p.learned(), learned + 1);
  EXPECT_EQ(p.feedback_applied(), 1u);
  EXPECT_EQ(p.histories().user(r.user_id)->spam_count, spam + 1);
}

TEST(Pipeline, GridSearchPicksFromGrid) {
  auto events = synth(100);
  PipelineConfig cfg;
  cfg.model.kind = model::ModelKind::kAlma;
  cfg.grid_search = true;
  cfg.grid.alma_alpha = {0.3, 0.9};
  cfg.grid.alma_B = {1.8};
  cfg.grid.alma_C = {1.8};
  Pipeline p(cfg);
  p.calibrate(std::span<const WikiEvent>(events.data(), 60));
  ASSERT_TRUE(p.grid_result());
  EXPECT_EQ(p.grid_result()->scores.size(), 2u);
  EXPECT_EQ(p.active_config().alma.alpha, p.grid_result()->best.alma.alpha);
}
