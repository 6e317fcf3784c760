// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <sstream>

#include "wikistream/ingest/event.hpp"
#include "wikistream/ingest/scenario.hpp"
#include "wikistream/ingest/synth.hpp"

using namespace wikistream;
using nlohmann::json;

namespace {

json base_record() {
  return {{"id", "e1"}, {"ts", "2024-01-01T00:00:00Z"}, {"user", "u"}, {"page", "p"}, {"text", "hello"}};
}

WikiEvent ev(std::string id, int second, int label) {
  WikiEvent e;
  e.event_id = std::move(id);
  e.timestamp = *parse_iso8601("2024-01-01T00:00:00Z") + std::chrono::seconds(second);
  e.user_id = "u";
  e.page_id = "p";
  e.label = label_from_int(label);
  return e;
}

}  // namespace

TEST(Event, DegenerateArticleQualityIsValid) {
  auto r = base_record();
  r["article_quality"] = {{"ok", 1.0}, {"wp10b", 0.0}, {"wp10c", 0.0}, {"wp10fa", 0.0},
                          {"wp10ga", 0.0}, {"wp10start", 0.0}, {"wp10stub", 0.0}};
  auto e = event_from_json(r);
  ASSERT_TRUE(e.article_quality);
  EXPECT_EQ((*e.article_quality)[0], 1.0);
}

TEST(Event, MissingTimestampIsRejected) {
  auto r = base_record();
  r.erase("ts");
  EXPECT_ANY_THROW(event_from_json(r));
}

TEST(Event, OutOfRangeScoreIsRejected) {
  auto r = base_record();
  r["edit_quality"] = {{"damaging_true", 1.3}};
  EXPECT_ANY_THROW(event_from_json(r));
}

TEST(Event, BadLabelIsRejected) {
  auto r = base_record();
  r["label"] = 2;
  EXPECT_THROW(event_from_json(r), ValidationError);
}

TEST(Event, JsonRoundTrip) {
  auto r = base_record();
  r["revert"] = true;
  r["size_diff"] = -42;
  r["label"] = 1;
  r["review_quality"] = {{"a", 0.1}, {"b", 0.2}, {"c", 0.3}, {"d", 0.2}, {"e", 0.2}};
  auto e = event_from_json(r);
  EXPECT_EQ(event_from_json(event_to_json(e)), e);
}

TEST(Event, MalformedLineCarriesLineNumber) {
  std::istringstream in(base_record().dump() + "\n{not json\n");
  try {
    read_events(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(OrderStream, SortsByTime) {
  auto out = order_stream({ev("x", 5, 0), ev("y", 3, 0), ev("z", 4, 0)});
  EXPECT_EQ(out[0].event_id, "y");
  EXPECT_EQ(out[1].event_id, "z");
  EXPECT_EQ(out[2].event_id, "x");
}

TEST(OrderStream, TiesBreakById) {
  for (bool swap : {false, true}) {
    std::vector<WikiEvent> in = {ev("a", 1, 0), ev("b", 1, 0)};
    if (swap) std::swap(in[0], in[1]);
    auto out = order_stream(in);
    EXPECT_EQ(out[0].event_id, "a");
    EXPECT_EQ(out[1].event_id, "b");
  }
  EXPECT_TRUE(order_stream({}).empty());
}

TEST(Scenario, ClassBlocksTakeFirstSPerClass) {
  std::vector<WikiEvent> in = {ev("a", 1, 0), ev("b", 2, 1), ev("c", 3, 0),
                               ev("d", 4, 0), ev("e", 5, 1), ev("f", 6, 0)};
  ScenarioConfig cfg;
  cfg.scenario = Scenario::kClassBlocks;
  cfg.s = 2;
  auto out = build_scenario(in, cfg);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(out[0].event_id, "a");
  EXPECT_EQ(out[1].event_id, "c");
  EXPECT_EQ(out[2].event_id, "b");
  EXPECT_EQ(out[3].event_id, "e");
}

TEST(Scenario, BalancedIsBalancedOrderedAndDeterministic) {
  SynthConfig sc;
  sc.n = 600;
  sc.disinformation_fraction = 0.3;
  auto events = synthesize_events(sc);
  ScenarioConfig cfg;
  cfg.rng_seed = 7;
  auto a = build_scenario(events, cfg);
  auto b = build_scenario(events, cfg);
  EXPECT_EQ(a, b);
  std::size_t ones = 0;
  for (const auto& e : a) ones += to_int(*e.label);
  EXPECT_EQ(ones * 2, a.size());
  for (std::size_t i = 1; i < a.size(); ++i) EXPECT_LE(a[i - 1].timestamp, a[i].timestamp);
}

TEST(Scenario, RejectsOversizedS) {
  ScenarioConfig cfg;
  cfg.s = 3;
  EXPECT_THROW(build_scenario({ev("a", 1, 0), ev("b", 2, 1)}, cfg), ValidationError);
}

TEST(Scenario, RejectsUnlabeled) {
  auto e = ev("a", 1, 0);
  e.label.reset();
  EXPECT_THROW(build_scenario({e}, {}), ValidationError);
}

TEST(Synth, DeterministicAndLabeled) {
  SynthConfig sc;
  sc.n = 200;
  auto a = synthesize_events(sc);
  auto b = synthesize_events(sc);
  ASSERT_EQ(a.size(), 200u);
  EXPECT_EQ(a, b);
  for (const auto& e : a) EXPECT_TRUE(e.label);
}
