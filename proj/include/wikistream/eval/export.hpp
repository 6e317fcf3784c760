// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "wikistream/eval/prequential.hpp"
#include "wikistream/model/factory.hpp"

namespace wikistream::eval {

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << std::setprecision(10);
  return out;
}

inline void check_written(std::ofstream& out, const std::filesystem::path& p) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + p.string());
}

}  // namespace detail

inline void write_curve_csv(std::ostream& out, const std::vector<MetricsSnapshot>& curve) {
  out << "sample_index,accuracy,precision_0,recall_0,f1_0,precision_1,recall_1,f1_1,"
         "macro_precision,macro_recall,macro_f1,micro_precision,micro_recall,micro_f1,seconds\n";
  for (const auto& s : curve) {
    out << s.sample_index << ',' << s.accuracy;
    for (const auto& m : {s.per_class[0], s.per_class[1], s.macro, s.micro}) {
      out << ',' << m.precision << ',' << m.recall << ',' << m.f1;
    }
    out << ',' << s.seconds << '\n';
  }
}

/// Event ids are written verbatim; ids containing commas or quotes are quoted.
inline void write_predictions_csv(std::ostream& out, const std::vector<PredictionLogEntry>& log) {
  out << "index,event_id,truth,predicted,proba_0,proba_1,latency_seconds\n";
  for (const auto& e : log) {
    std::string id = e.event_id;
    if (id.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char c : id) {
        if (c == '"') q.push_back('"');
        q.push_back(c);
      }
      id = q + "\"";
    }
    out << e.index << ',' << id << ',' << to_int(e.truth) << ',' << to_int(e.predicted) << ',' << e.proba[0] << ','
        << e.proba[1] << ',' << e.latency_seconds << '\n';
  }
}

inline nlohmann::json summary_json(const EvaluationRun& run, const pipeline::Pipeline* p = nullptr) {
  nlohmann::json j;
  j["model"] = run.model;
  j["scenario"] = static_cast<int>(run.scenario.scenario);
  j["delay"] = run.scenario.delay_n;
  j["seed"] = run.scenario.rng_seed;
  j["cold_start"] = run.cold_start;
  j["samples"] = run.log.size();
  j["total_seconds"] = run.total_seconds;
  j["samples_per_second"] = run.samples_per_second();
  j["calibration_seconds"] = run.calibration_seconds;
  j["phase_seconds"] = {{"featurize", run.phases.featurize},
                        {"select", run.phases.select},
                        {"predict", run.phases.predict},
                        {"learn", run.phases.learn}};
  nlohmann::json bursts = nlohmann::json::array();
  for (const auto& b : run.bursts) bursts.push_back({b.after_prediction, b.size});
  j["training_bursts"] = std::move(bursts);
  j["untrained_at_end"] = run.untrained_at_end;
  j["final"] = to_json(run.final_metrics());
  if (p) {
    j["params"] = model::params_to_json(p->active_config());
    j["variance_threshold"] = p->selector().threshold();
    j["ngram_cap"] = p->featurizer().ngrams().cap();
    if (const auto& g = p->grid_result()) {
      nlohmann::json scores = nlohmann::json::array();
      for (const auto& [c, s] : g->scores) scores.push_back({{"params", model::params_to_json(c)}, {"score", s}});
      j["grid_search"] = {{"best_score", g->best_score}, {"scores", std::move(scores)}};
    }
  }
  return j;
}

/// Writes curve.csv, predictions.csv, summary.json and, with a pipeline,
/// model.json and selector.csv into `dir` (created if missing).
inline void export_results(const std::filesystem::path& dir, const EvaluationRun& run,
                           const pipeline::Pipeline* p = nullptr) {
  std::filesystem::create_directories(dir);
  {
    auto path = dir / "curve.csv";
    auto out = detail::open_out(path);
    write_curve_csv(out, run.curve);
    detail::check_written(out, path);
  }
  {
    auto path = dir / "predictions.csv";
    auto out = detail::open_out(path);
    write_predictions_csv(out, run.log);
    detail::check_written(out, path);
  }
  {
    auto path = dir / "summary.json";
    auto out = detail::open_out(path);
    out << summary_json(run, p).dump(2) << '\n';
    detail::check_written(out, path);
  }
  if (p) {
    model::write_model_dump(p->model_dump(), (dir / "model.json").string());
    auto path = dir / "selector.csv";
    auto out = detail::open_out(path);
    p->selector().export_csv(out, p->space());
    detail::check_written(out, path);
  }
}

}  // namespace wikistream::eval
