// SPDX-License-Identifier: Apache-2.0
// Command-line front end: synth, evaluate, serve.

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "wikistream.hpp"

namespace {

using namespace wikistream;

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

pipeline::TextResources load_resources(const std::string& vectors, std::size_t ngram_n) {
  pipeline::TextResources r;
  if (!vectors.empty()) r.vectors = text::load_word_vectors(vectors);
  if (ngram_n < 1) throw ConfigurationError("n-gram size must be >= 1");
  r.ngram_n = ngram_n;
  return r;
}

Scenario parse_scenario(int s) {
  if (s < 1 || s > 3) throw ConfigurationError("scenario must be 1, 2 or 3");
  return static_cast<Scenario>(s);
}

struct ModelOptions {
  std::string kind = "arfc";
  std::uint64_t seed = 0;
  std::optional<std::size_t> models;
  std::optional<std::string> features;
  std::optional<double> lambda;
  std::optional<std::size_t> depth;
  std::optional<double> tie;
  std::optional<double> maxsize;

  void attach(CLI::App* app) {
    app->add_option("--model", kind, "gnb | alma | hatc | arfc")->capture_default_str();
    app->add_option("--seed", seed, "model and scenario seed")->capture_default_str();
    app->add_option("--models", models, "ARFC ensemble size");
    app->add_option("--features", features, "ARFC feature subset: all | sqrt | N");
    app->add_option("--lambda", lambda, "ARFC Poisson rate");
    app->add_option("--depth", depth, "tree max depth");
    app->add_option("--tie", tie, "tree tie threshold");
    app->add_option("--maxsize", maxsize, "tree memory cap in MB");
  }

  model::ModelConfig build() const {
    model::ModelConfig c;
    c.kind = model::parse_model_kind(kind);
    c.seed = seed;
    for (auto* t : {&c.hatc, &c.arfc.tree}) {
      if (depth) t->max_depth = *depth;
      if (tie) t->tie_threshold = *tie;
      if (maxsize) t->max_size_mb = *maxsize;
    }
    if (models) c.arfc.models = *models;
    if (features) c.arfc.features = model::parse_subspace(*features);
    if (lambda) c.arfc.lambda = *lambda;
    return c;
  }
};

int run_synth(const SynthConfig& cfg, const std::string& out_path) {
  const auto events = synthesize_events(cfg);
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  for (const auto& ev : events) out << event_to_json(ev).dump() << '\n';
  if (!out) throw std::runtime_error("write failed: " + out_path);
  std::cerr << "wrote " << events.size() << " events to " << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wikistream: stream classification and explanation of wiki revision events"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "write a planted-signal synthetic event stream (JSONL)");
  SynthConfig synth_cfg;
  std::string synth_out;
  synth->add_option("--n", synth_cfg.n, "number of events")->capture_default_str();
  synth->add_option("--seed", synth_cfg.seed, "generator seed")->capture_default_str();
  synth->add_option("--balance", synth_cfg.disinformation_fraction, "share of disinformation events")
      ->capture_default_str();
  synth->add_option("--overlap", synth_cfg.overlap, "class overlap in [0, 1]")->capture_default_str();
  synth->add_option("--users", synth_cfg.users)->capture_default_str();
  synth->add_option("--spam-users", synth_cfg.spam_users)->capture_default_str();
  synth->add_option("--pages", synth_cfg.pages)->capture_default_str();
  synth->add_option("--out", synth_out, "output JSONL path")->required();

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "prequential evaluation over a recorded stream");
  int scenario = 2;
  std::string input, out_dir, vectors;
  std::optional<std::size_t> s;
  eval::EvaluationConfig eval_cfg;
  ModelOptions eval_model;
  std::size_t ngram_n = 1;
  evaluate->add_option("--scenario", scenario, "1 | 2 | 3")->capture_default_str();
  evaluate->add_option("--input", input, "events JSONL")->required();
  evaluate->add_option("--out", out_dir, "output directory")->required();
  evaluate->add_option("--cold-start", eval_cfg.cold_start_fraction, "cold-start fraction")->capture_default_str();
  evaluate->add_option("--delay", eval_cfg.scenario.delay_n, "scenario 3 training delay")->capture_default_str();
  evaluate->add_option("--s", s, "events per class (default: minority count)");
  evaluate->add_option("--curve-every", eval_cfg.curve_every)->capture_default_str();
  evaluate->add_option("--threshold-percentile", eval_cfg.pipeline.threshold_percentile)->capture_default_str();
  evaluate->add_flag("--grid-search", eval_cfg.pipeline.grid_search, "tune hyperparameters on the cold start");
  evaluate->add_option("--vectors", vectors, "word vectors (word followed by 300 values per line)");
  evaluate->add_option("--ngram", ngram_n, "n-gram size")->capture_default_str();
  eval_model.attach(evaluate);

  // serve
  auto* serve = app.add_subcommand("serve", "run the REST service");
  std::string host = "127.0.0.1", state_dir, bootstrap_path, serve_vectors;
  int port = 8080;
  service::ServiceConfig svc_cfg;
  ModelOptions serve_model;
  std::size_t serve_ngram_n = 1;
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--state", state_dir, "persistence directory")->required();
  serve->add_option("--bootstrap", bootstrap_path, "events JSONL admitted when the state is empty");
  serve->add_option("--cold-start-events", svc_cfg.cold_start_events)->capture_default_str();
  serve->add_option("--checkpoint-every", svc_cfg.checkpoint_every)->capture_default_str();
  serve->add_option("--vectors", serve_vectors);
  serve->add_option("--ngram", serve_ngram_n)->capture_default_str();
  serve->add_flag("--grid-search", svc_cfg.pipeline.grid_search);
  serve_model.attach(serve);

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return run_synth(synth_cfg, synth_out);

    if (evaluate->parsed()) {
      eval_cfg.scenario.scenario = parse_scenario(scenario);
      eval_cfg.scenario.s = s;
      eval_cfg.scenario.rng_seed = eval_model.seed;
      eval_cfg.pipeline.model = eval_model.build();
      const auto events = order_stream(read_events_file(input));
      auto outcome = eval::evaluate(events, eval_cfg, load_resources(vectors, ngram_n));
      eval::export_results(out_dir, outcome.run, outcome.pipeline.get());
      const auto m = outcome.run.final_metrics();
      std::cout << "scenario " << scenario << ", model " << eval_model.kind << ": " << outcome.run.log.size()
                << " predictions, accuracy " << m.accuracy << ", macro F1 " << m.macro.f1 << ", "
                << outcome.run.samples_per_second() << " samples/s\n";
      return 0;
    }

    if (serve->parsed()) {
      svc_cfg.state_dir = state_dir;
      svc_cfg.pipeline.model = serve_model.build();
      svc_cfg.llm = explain::LlmConfig::from_env();
      svc_cfg.resources = load_resources(serve_vectors, serve_ngram_n);
      service::Service svc(svc_cfg);
      if (!bootstrap_path.empty()) svc.bootstrap(order_stream(read_events_file(bootstrap_path)));
      service::HttpServer server(svc);
      const int bound = server.start(host, port);
      std::cerr << "listening on " << host << ':' << bound << '\n';
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(200));
      server.stop();
      svc.shutdown();
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
