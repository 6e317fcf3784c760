// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cmath>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wikistream/core/error.hpp"
#include "wikistream/eval/metrics.hpp"
#include "wikistream/ingest/scenario.hpp"
#include "wikistream/pipeline/pipeline.hpp"

namespace wikistream::eval {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0, Clock::time_point t1) {
  return std::chrono::duration<double>(t1 - t0).count();
}

/// Keeps event times non-decreasing in stream order: a regressing time is
/// replaced by the latest time admitted so far.
class MonotoneClock {
 public:
  Timestamp admit(Timestamp ts) {
    if (last_ && ts < *last_) return *last_;
    last_ = ts;
    return ts;
  }

 private:
  std::optional<Timestamp> last_;
};

struct PredictionLogEntry {
  std::size_t index = 0;  // 1-based
  std::string event_id;
  Label truth = Label::kNonDisinformation;
  Label predicted = Label::kNonDisinformation;
  model::ClassDistribution proba{};
  double latency_seconds = 0.0;
};

struct PhaseTimes {
  double featurize = 0.0;
  double select = 0.0;
  double predict = 0.0;
  double learn = 0.0;
};

struct TrainingBurst {
  std::size_t after_prediction = 0;
  std::size_t size = 0;
};

struct EvaluationRun {
  ScenarioConfig scenario;
  std::string model;
  std::size_t cold_start = 0;
  std::vector<PredictionLogEntry> log;
  std::vector<MetricsSnapshot> curve;
  std::vector<TrainingBurst> bursts;
  std::size_t untrained_at_end = 0;
  PhaseTimes phases;
  double calibration_seconds = 0.0;
  double total_seconds = 0.0;  // prequential loop only

  double samples_per_second() const noexcept {
    return total_seconds > 0.0 ? static_cast<double>(log.size()) / total_seconds : 0.0;
  }
  MetricsSnapshot final_metrics() const {
    MetricsAccumulator acc;
    for (const auto& e : log) acc.add(e.truth, e.predicted);
    return acc.snapshot(total_seconds);
  }
};

struct PrequentialOptions {
  Scenario scenario = Scenario::kBalanced;
  std::size_t delay_n = 100;
  std::size_t curve_every = 10;
};

/// Test-then-train over a calibrated pipeline. Scenarios 1 and 2 learn each
/// sample right after its prediction; scenario 3 buffers labeled samples and
/// learns them in order whenever `delay_n` are pending.
inline EvaluationRun run_prequential(pipeline::Pipeline& p, std::span<const WikiEvent> stream,
                                     const PrequentialOptions& opt) {
  if (!p.calibrated()) throw std::logic_error("prequential run needs a calibrated pipeline");
  if (opt.curve_every == 0) throw ValidationError("curve cadence must be >= 1");
  if (opt.delay_n == 0) throw ValidationError("delay must be >= 1");
  EvaluationRun run;
  run.scenario.scenario = opt.scenario;
  run.scenario.delay_n = opt.delay_n;
  run.model = std::string(p.model().kind());
  run.log.reserve(stream.size());
  MetricsAccumulator acc;
  std::vector<std::pair<FeatureVector, Label>> pending;
  const bool delayed = opt.scenario == Scenario::kDelayed;

  const auto start = Clock::now();
  auto last = start;
  for (const auto& ev : stream) {
    if (!ev.label) throw ValidationError("unlabeled event '" + ev.event_id + "' in evaluation stream");
    const Label truth = *ev.label;

    const auto t0 = Clock::now();
    auto f = p.featurize(ev);
    const auto t1 = Clock::now();
    auto selected = p.select(f.full);
    const auto t2 = Clock::now();
    const auto proba = p.predict(selected);
    const auto t3 = Clock::now();
    run.phases.featurize += seconds_since(t0, t1);
    run.phases.select += seconds_since(t1, t2);
    run.phases.predict += seconds_since(t2, t3);

    PredictionLogEntry entry;
    entry.index = run.log.size() + 1;
    entry.event_id = ev.event_id;
    entry.truth = truth;
    entry.predicted = model::argmax(proba);
    entry.proba = proba;
    acc.add(truth, entry.predicted);

    const auto t4 = Clock::now();
    if (!delayed) {
      p.learn(selected, truth);
    } else {
      pending.emplace_back(std::move(selected), truth);
      if (pending.size() >= opt.delay_n) {
        for (const auto& [x, y] : pending) p.learn(x, y);
        run.bursts.push_back({entry.index, pending.size()});
        pending.clear();
      }
    }
    const auto t5 = Clock::now();
    run.phases.learn += seconds_since(t4, t5);

    entry.latency_seconds = seconds_since(last, t5);
    last = t5;
    run.log.push_back(std::move(entry));
    if (run.log.size() % opt.curve_every == 0) run.curve.push_back(acc.snapshot(seconds_since(start, t5)));
  }
  run.total_seconds = seconds_since(start, last);
  run.untrained_at_end = pending.size();
  return run;
}

struct EvaluationConfig {
  ScenarioConfig scenario;
  double cold_start_fraction = 0.005;
  std::size_t curve_every = 10;
  pipeline::PipelineConfig pipeline;
};

struct EvaluationOutcome {
  EvaluationRun run;
  std::unique_ptr<pipeline::Pipeline> pipeline;
};

/// Size of the cold-start prefix: ceil(fraction * n), at least 1.
inline std::size_t cold_start_size(std::size_t n, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw ValidationError("cold-start fraction must be in (0, 1)");
  const auto k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
  return std::max<std::size_t>(1, k);
}

/// Builds the scenario stream from `events` (in stream order), calibrates on
/// its cold-start prefix and evaluates the rest.
inline EvaluationOutcome evaluate(const std::vector<WikiEvent>& events, const EvaluationConfig& cfg,
                                  pipeline::TextResources resources = {}) {
  auto stream = build_scenario(events, cfg.scenario);
  MonotoneClock clock;
  for (auto& ev : stream) ev.timestamp = clock.admit(ev.timestamp);
  const std::size_t k = cold_start_size(stream.size(), cfg.cold_start_fraction);
  if (k >= stream.size()) throw ValidationError("stream too short: nothing left after the cold start");

  EvaluationOutcome out;
  out.pipeline = std::make_unique<pipeline::Pipeline>(cfg.pipeline, std::move(resources));
  const auto c0 = Clock::now();
  out.pipeline->calibrate(std::span<const WikiEvent>(stream.data(), k));
  const double calibration = seconds_since(c0, Clock::now());

  PrequentialOptions opt;
  opt.scenario = cfg.scenario.scenario;
  opt.delay_n = cfg.scenario.delay_n;
  opt.curve_every = cfg.curve_every;
  out.run = run_prequential(*out.pipeline, std::span<const WikiEvent>(stream.data() + k, stream.size() - k), opt);
  out.run.scenario = cfg.scenario;
  out.run.cold_start = k;
  out.run.calibration_seconds = calibration;
  return out;
}

}  // namespace wikistream::eval
