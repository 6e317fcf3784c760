// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "support/oracles.hpp"
#include "wikistream/eval/export.hpp"
#include "wikistream/eval/metrics.hpp"
#include "wikistream/eval/prequential.hpp"
#include "wikistream/ingest/synth.hpp"

using namespace wikistream;
using namespace wikistream::eval;

namespace {

constexpr Label k0 = Label::kNonDisinformation;
constexpr Label k1 = Label::kDisinformation;

void add_n(MetricsAccumulator& acc, Label t, Label p, int n) {
  for (int i = 0; i < n; ++i) acc.add(t, p);
}

std::size_t balanced_size(const std::vector<WikiEvent>& events) {
  std::size_t ones = 0;
  for (const auto& e : events) ones += to_int(*e.label);
  return 2 * std::min(ones, events.size() - ones);
}

std::vector<WikiEvent> synth(std::size_t n) {
  SynthConfig c;
  c.n = n;
  return synthesize_events(c);
}

pipeline::PipelineConfig gnb() {
  pipeline::PipelineConfig c;
  c.model.kind = model::ModelKind::kGnb;
  return c;
}

}  // namespace

TEST(Metrics, HandConfusionMatrix) {
  MetricsAccumulator acc;
  add_n(acc, k1, k1, 3);
  add_n(acc, k0, k1, 1);
  add_n(acc, k1, k0, 1);
  add_n(acc, k0, k0, 5);
  const auto s = acc.snapshot();
  EXPECT_DOUBLE_EQ(s.per_class[1].precision, 0.75);
  EXPECT_DOUBLE_EQ(s.per_class[1].recall, 0.75);
  EXPECT_DOUBLE_EQ(s.per_class[1].f1, 0.75);
  EXPECT_DOUBLE_EQ(s.accuracy, 0.8);
  EXPECT_DOUBLE_EQ(s.micro.f1, 0.8);
}

TEST(Metrics, PerfectLog) {
  MetricsAccumulator acc;
  add_n(acc, k1, k1, 4);
  add_n(acc, k0, k0, 4);
  const auto s = acc.snapshot();
  for (double v : {s.accuracy, s.per_class[0].f1, s.per_class[1].f1, s.macro.precision, s.macro.recall, s.macro.f1,
                   s.micro.f1}) {
    EXPECT_EQ(v, 1.0);
  }
}

TEST(Metrics, ConstantPredictorOnBalancedTruth) {
  MetricsAccumulator acc;
  add_n(acc, k1, k1, 5);
  add_n(acc, k0, k1, 5);
  const auto s = acc.snapshot();
  EXPECT_DOUBLE_EQ(s.accuracy, 0.5);
  EXPECT_DOUBLE_EQ(s.per_class[0].f1, 0.0);
  EXPECT_DOUBLE_EQ(s.macro.f1, (0.0 + 2.0 / 3.0) / 2.0);
  EXPECT_LT(s.macro.f1, 0.5);
}

TEST(Metrics, EmptyIsZero) {
  const auto s = MetricsAccumulator{}.snapshot();
  EXPECT_EQ(s.accuracy, 0.0);
  EXPECT_EQ(s.macro.f1, 0.0);
}

TEST(Prequential, ColdStartSize) {
  EXPECT_EQ(cold_start_size(10000, 0.005), 50u);
  EXPECT_EQ(cold_start_size(10, 0.005), 1u);
  EXPECT_EQ(cold_start_size(1001, 0.005), 6u);
  EXPECT_THROW(cold_start_size(10, 0.0), ValidationError);
}

TEST(Prequential, MonotoneClock) {
  MonotoneClock c;
  const auto t = *parse_iso8601("2024-01-01T00:00:10Z");
  EXPECT_EQ(c.admit(t), t);
  EXPECT_EQ(c.admit(t - std::chrono::seconds(5)), t);
  EXPECT_EQ(c.admit(t + std::chrono::seconds(1)), t + std::chrono::seconds(1));
}

TEST(Prequential, DelayedTrainingBursts) {
  auto events = synth(260);
  pipeline::Pipeline p(gnb());
  p.calibrate(std::span<const WikiEvent>(events.data(), 10));
  const auto learned = p.learned();
  PrequentialOptions opt;
  opt.scenario = Scenario::kDelayed;
  opt.delay_n = 100;
  auto run = run_prequential(p, std::span<const WikiEvent>(events.data() + 10, 250), opt);
  ASSERT_EQ(run.bursts.size(), 2u);
  EXPECT_EQ(run.bursts[0].after_prediction, 100u);
  EXPECT_EQ(run.bursts[1].after_prediction, 200u);
  EXPECT_EQ(run.bursts[0].size, 100u);
  EXPECT_EQ(run.untrained_at_end, 50u);
  EXPECT_EQ(p.learned() - learned, 200u);
}

TEST(Prequential, CurveCadenceAndMetricsOracle) {
  auto events = synth(1010);
  pipeline::Pipeline p(gnb());
  p.calibrate(std::span<const WikiEvent>(events.data(), 10));
  auto run = run_prequential(p, std::span<const WikiEvent>(events.data() + 10, 1000), {});
  ASSERT_EQ(run.log.size(), 1000u);
  ASSERT_EQ(run.curve.size(), 100u);
  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : run.log) pairs.emplace_back(to_int(e.truth), to_int(e.predicted));
  for (std::size_t k = 0; k < run.curve.size(); ++k) {
    EXPECT_EQ(run.curve[k].sample_index, 10 * (k + 1));
    EXPECT_TRUE(oracle::snapshot_matches(pairs, run.curve[k].sample_index, run.curve[k])) << "row " << k;
  }
  double latency = 0.0;
  for (const auto& e : run.log) latency += e.latency_seconds;
  EXPECT_NEAR(latency, run.total_seconds, 1e-6);
  EXPECT_DOUBLE_EQ(run.samples_per_second(), 1000.0 / run.total_seconds);
}

TEST(Prequential, UnlabeledEventRejected) {
  auto events = synth(20);
  pipeline::Pipeline p(gnb());
  p.calibrate(std::span<const WikiEvent>(events.data(), 10));
  events[12].label.reset();
  EXPECT_THROW(run_prequential(p, std::span<const WikiEvent>(events.data() + 10, 10), {}), ValidationError);
}

TEST(Evaluate, EndToEndWithExport) {
  EvaluationConfig cfg;
  cfg.pipeline = gnb();
  cfg.scenario.rng_seed = 1;
  const auto events = synth(600);
  const auto n = balanced_size(events);
  auto out = evaluate(events, cfg);
  EXPECT_EQ(out.run.cold_start, cold_start_size(n, 0.005));
  EXPECT_EQ(out.run.log.size() + out.run.cold_start, n);
  EXPECT_GT(out.run.final_metrics().accuracy, 0.6);

  const auto dir = std::filesystem::temp_directory_path() / "wikistream_eval_test";
  std::filesystem::remove_all(dir);
  export_results(dir, out.run, out.pipeline.get());
  for (const char* f : {"curve.csv", "predictions.csv", "summary.json", "model.json", "selector.csv"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  std::ifstream curve(dir / "curve.csv");
  std::string header;
  std::getline(curve, header);
  EXPECT_EQ(header.rfind("sample_index,accuracy,", 0), 0u);
  std::ifstream summary(dir / "summary.json");
  auto j = nlohmann::json::parse(summary);
  EXPECT_EQ(j.at("samples"), out.run.log.size());
  EXPECT_EQ(j.at("model"), "gnb");
  std::filesystem::remove_all(dir);
}

TEST(Evaluate, ClassBlocksScenarioRuns) {
  EvaluationConfig cfg;
  cfg.pipeline = gnb();
  cfg.scenario.scenario = Scenario::kClassBlocks;
  const auto events = synth(400);
  auto out = evaluate(events, cfg);
  EXPECT_EQ(out.run.log.size() + out.run.cold_start, balanced_size(events));
}
