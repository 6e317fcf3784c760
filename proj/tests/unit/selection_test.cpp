// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <sstream>

#include "wikistream/selection/variance_selector.hpp"

using namespace wikistream;
using namespace wikistream::selection;

namespace {

FeatureVector one(std::uint32_t id, double v) {
  FeatureVector x;
  x.set(FeatureId{id}, v);
  return x;
}

}  // namespace

TEST(Percentile, NearestRankOfTenthsIsPointEight) {
  EXPECT_DOUBLE_EQ(nearest_rank_percentile({0.9, 0.1, 0.0, 0.5, 0.3, 0.2, 0.7, 0.4, 0.6, 0.8}, 90), 0.8);
}

TEST(Percentile, HandComputedFixtures) {
  // rank = ceil(p/100 * n)
  EXPECT_DOUBLE_EQ(nearest_rank_percentile({15, 20, 35, 40, 50}, 30), 20);
  EXPECT_DOUBLE_EQ(nearest_rank_percentile({15, 20, 35, 40, 50}, 40), 20);
  EXPECT_DOUBLE_EQ(nearest_rank_percentile({15, 20, 35, 40, 50}, 50), 35);
  EXPECT_DOUBLE_EQ(nearest_rank_percentile({15, 20, 35, 40, 50}, 100), 50);
  EXPECT_DOUBLE_EQ(nearest_rank_percentile({3}, 90), 3);
  EXPECT_THROW(nearest_rank_percentile({}, 90), ValidationError);
}

TEST(Selector, ConstantFeatureDropped) {
  VarianceSelector sel(0.022);
  FeatureVector last;
  for (int i = 0; i < 100; ++i) last = sel.update_and_select(one(0, 4.0));
  EXPECT_TRUE(last.empty());
}

TEST(Selector, AlternatingFeatureKept) {
  VarianceSelector sel(0.067);
  FeatureVector last;
  for (int i = 0; i < 100; ++i) last = sel.update_and_select(one(0, i % 2));
  EXPECT_DOUBLE_EQ(sel.tracker().variance(FeatureId{0}), 0.25);
  EXPECT_EQ(last.size(), 1u);
}

TEST(Selector, NewDimensionExcludedUntilItVaries) {
  VarianceSelector sel(0.1);
  for (int i = 0; i < 10; ++i) sel.update_and_select(one(0, i % 2));
  auto x = one(0, 1);
  x.set(FeatureId{7}, 3.0);
  auto out = sel.update_and_select(x);
  EXPECT_FALSE(out.contains(FeatureId{7}));
  x.set(FeatureId{7}, 0.0);
  out = sel.update_and_select(x);
  EXPECT_TRUE(out.contains(FeatureId{7}));
}

TEST(Selector, ThresholdFixedOnce) {
  VarianceSelector sel;
  EXPECT_THROW(sel.threshold(), std::logic_error);
  sel.set_threshold(0.5);
  EXPECT_THROW(sel.set_threshold(0.2), std::logic_error);
  EXPECT_THROW(VarianceSelector(-1.0), ValidationError);
}

TEST(Selector, CalibrationUsesProbeFeatures) {
  std::vector<FeatureVector> cold;
  for (int i = 0; i < 10; ++i) {
    FeatureVector x;
    x.set(FeatureId{0}, i % 2);      // variance 0.25
    x.set(FeatureId{1}, 2.0 * (i % 2));  // variance 1.0
    x.set(FeatureId{2}, 100.0 * i);  // not a probe
    cold.push_back(x);
  }
  std::vector<FeatureId> probe = {FeatureId{0}, FeatureId{1}, FeatureId{9}};
  EXPECT_DOUBLE_EQ(calibrate_threshold(cold, probe), 1.0);
  EXPECT_DOUBLE_EQ(calibrate_threshold(cold, probe, 50), 0.25);
}

TEST(Selector, CsvExport) {
  VarianceSelector sel(0.1);
  sel.update_and_select(one(0, 0));
  sel.update_and_select(one(0, 1));
  FeatureSpace space;
  space.intern("a,b");
  std::ostringstream out;
  sel.export_csv(out, space);
  EXPECT_EQ(out.str(), "feature_id,name,variance,selected\n0,\"a,b\",0.25,1\n");
}
