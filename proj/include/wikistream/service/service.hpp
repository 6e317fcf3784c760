// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "wikistream/core/error.hpp"
#include "wikistream/eval/metrics.hpp"
#include "wikistream/eval/prequential.hpp"
#include "wikistream/explain/explanation.hpp"
#include "wikistream/explain/feedback.hpp"
#include "wikistream/explain/llm_client.hpp"
#include "wikistream/ingest/event.hpp"
#include "wikistream/pipeline/pipeline.hpp"
#include "wikistream/service/executor.hpp"

namespace wikistream::service {

struct ServiceConfig {
  pipeline::PipelineConfig pipeline;
  pipeline::TextResources resources;
  /// Live cold start: events buffered before the first prediction.
  std::size_t cold_start_events = 50;
  /// Journal, feedback log and checkpoints; empty keeps everything in memory.
  std::string state_dir;
  std::size_t checkpoint_every = 1000;
  explain::LlmConfig llm;
};

/// Wall clock in milliseconds; replaceable for tests.
using NowFn = std::function<Timestamp()>;

inline Timestamp system_now() {
  return std::chrono::time_point_cast<std::chrono::milliseconds>(std::chrono::system_clock::now());
}

/// The live engine behind the REST API. All pipeline state is owned by one
/// writer thread; requests are queued to it in arrival order. Explanation
/// text is produced on a second thread.
///
/// Every admitted event and feedback is appended to `journal.jsonl`; on
/// start-up an existing journal is replayed, which restores the exact state.
class Service {
 public:
  explicit Service(ServiceConfig config, std::unique_ptr<explain::TextGenerator> generator = nullptr,
                   NowFn now = system_now)
      : config_(std::move(config)), generator_(std::move(generator)), now_(std::move(now)) {
    config_.pipeline.retain_records = true;
    if (config_.cold_start_events == 0) throw ConfigurationError("cold start needs at least one event");
    pipeline_ = std::make_unique<pipeline::Pipeline>(config_.pipeline, config_.resources);
    if (!generator_) generator_ = explain::make_generator(config_.llm);
    if (!config_.state_dir.empty()) {
      std::filesystem::create_directories(config_.state_dir);
      replay_journal();
      feedback_.set_log_path(path("feedback.jsonl"));
    }
  }

  ~Service() {
    try {
      shutdown();
    } catch (const std::exception& e) {
      std::cerr << "final checkpoint failed: " << e.what() << '\n';
    }
  }

  /// Finishes queued work and writes a final checkpoint.
  void shutdown() {
    if (stopped_) return;
    stopped_ = true;
    writer_.shutdown();
    texts_.shutdown();
    if (!config_.state_dir.empty() && pipeline_->calibrated()) write_checkpoint();
  }

  /// Admits bootstrap events when nothing has been journaled yet.
  void bootstrap(const std::vector<WikiEvent>& events) {
    writer_
        .submit([&] {
          if (admitted_ > 0) return;
          for (const auto& ev : events) admit(ev, true, false);
        })
        .get();
  }

  nlohmann::json post_event(const nlohmann::json& body) {
    auto ev = event_from_json(body);
    return writer_.submit([this, ev = std::move(ev)]() mutable { return admit(std::move(ev), true, true); }).get();
  }

  nlohmann::json post_feedback(const nlohmann::json& body) {
    if (!body.is_object() || !body.contains("event_id") || !body.at("event_id").is_string()) {
      throw ValidationError("feedback needs a string event_id");
    }
    if (!body.contains("label") || !body.at("label").is_number_integer()) {
      throw ValidationError("feedback needs an integer label");
    }
    const auto id = body.at("event_id").get<std::string>();
    const auto v = body.at("label").get<long long>();
    if (v != 0 && v != 1) throw ValidationError("feedback label must be 0 or 1");
    const Label label = label_from_int(static_cast<int>(v));
    return writer_.submit([this, id, label] { return feedback(id, label, now_(), true); }).get();
  }

  nlohmann::json explanation(const std::string& event_id) const {
    std::lock_guard lock(explanations_mu_);
    auto it = explanations_.find(event_id);
    if (it == explanations_.end()) throw NotFoundError("no explanation for event '" + event_id + "'");
    return explain::to_json(it->second);
  }

  nlohmann::json user(const std::string& user_id) {
    return writer_.submit([this, user_id] { return user_view(user_id); }).get();
  }

  nlohmann::json metrics() {
    return writer_.submit([this] { return metrics_view(); }).get();
  }

  /// Waits for queued predictions and explanation texts.
  void drain() {
    writer_.drain();
    texts_.drain();
  }

  std::string path(const char* name) const { return (std::filesystem::path(config_.state_dir) / name).string(); }

 private:
  // ---- writer thread only ----

  nlohmann::json admit(WikiEvent ev, bool journal, bool generate_text) {
    if (seen_.count(ev.event_id) > 0) throw ConflictError("duplicate event id '" + ev.event_id + "'");
    if (last_ts_ && ev.timestamp < *last_ts_) {
      const auto arrival = now_();
      const auto stamped = arrival < *last_ts_ ? *last_ts_ : arrival;
      std::cerr << "warning: event '" << ev.event_id << "' time " << format_iso8601(ev.timestamp)
                << " regresses; stamped " << format_iso8601(stamped) << '\n';
      ev.timestamp = stamped;
    }
    if (journal) append_journal({{"type", "event"}, {"event", event_to_json(ev)}});
    seen_.insert(ev.event_id);
    last_ts_ = ev.timestamp;
    ++admitted_;

    if (!pipeline_->calibrated()) {
      const std::string id = ev.event_id;
      cold_.push_back(std::move(ev));
      const std::size_t buffered = cold_.size();
      if (buffered >= config_.cold_start_events) {
        pipeline_->calibrate(cold_);
        cold_.clear();
      }
      return {{"event_id", id},
              {"status", "calibrating"},
              {"buffered", buffered},
              {"cold_start_events", config_.cold_start_events}};
    }

    // Paths come from the model as it was when predicting, before it learns the label.
    explain::Explanation e;
    const auto r = pipeline_->process(ev, [&](const pipeline::PredictionRecord& rec) {
      std::optional<model::ModelDump> dump;
      if (pipeline_->active_config().kind == model::ModelKind::kHatc ||
          pipeline_->active_config().kind == model::ModelKind::kArfc) {
        dump = pipeline_->model_dump();
      }
      e = explain::explain_prediction(rec, dump ? &*dump : nullptr);
    });
    if (r.truth) metrics_.add(*r.truth, r.predicted);
    if (!generate_text) explain::generate(e, nullptr);
    {
      std::lock_guard lock(explanations_mu_);
      explanations_[r.event_id] = e;
    }
    if (generate_text) {
      texts_.submit([this, e]() mutable {
        explain::generate(e, generator_.get());
        std::lock_guard lock(explanations_mu_);
        explanations_[e.event_id] = std::move(e);
      });
    }
    if (!config_.state_dir.empty() && config_.checkpoint_every > 0 &&
        pipeline_->predictions() % config_.checkpoint_every == 0) {
      write_checkpoint();
    }
    return {{"event_id", r.event_id},
            {"status", "predicted"},
            {"predicted", to_int(r.predicted)},
            {"category", class_name(r.predicted)},
            {"confidence", r.confidence},
            {"proba", {r.proba[0], r.proba[1]}},
            {"sample_index", r.index},
            {"explanation_id", r.event_id}};
  }

  nlohmann::json feedback(const std::string& event_id, Label label, Timestamp ts, bool journal) {
    if (!pipeline_->has_record(event_id)) throw NotFoundError("unknown or unpredicted event '" + event_id + "'");
    if (feedback_.contains(event_id)) throw ConflictError("feedback already recorded for event '" + event_id + "'");
    const auto& r = pipeline_->record(event_id);
    if (journal) {
      append_journal({{"type", "feedback"}, {"event_id", event_id}, {"label", to_int(label)}, {"ts", format_iso8601(ts)}});
    }
    explain::FeedbackRecord rec;
    rec.event_id = event_id;
    rec.expert_label = label;
    rec.prior_prediction = r.predicted;
    rec.timestamp = ts;
    feedback_.record(rec);
    pipeline_->apply_feedback(event_id, label);
    if (!r.truth) metrics_.add(label, r.predicted);
    feedback_.mark_applied(event_id);
    return explain::to_json(*feedback_.find(event_id));
  }

  nlohmann::json user_view(const std::string& user_id) const {
    const auto* h = pipeline_->histories().user(user_id);
    const auto& ids = pipeline_->contributions(user_id);
    if (!h && ids.empty()) throw NotFoundError("unknown user '" + user_id + "'");
    nlohmann::json j;
    j["user_id"] = user_id;
    if (h) {
      const auto now = h->last_post_ts.value_or(Timestamp{});
      const auto b = history::behavioral_features(*h, now);
      j["history"] = {{"post_count", h->n},
                      {"spam_count", h->spam_count},
                      {"spam_tendency", b.spam_tendency},
                      {"posting_antiquity_weeks", b.antiquity_weeks},
                      {"posting_frequency", b.frequency_per_week},
                      {"first_post", h->first_post_ts ? format_iso8601(*h->first_post_ts) : ""},
                      {"last_post", h->last_post_ts ? format_iso8601(*h->last_post_ts) : ""}};
    }
    nlohmann::json list = nlohmann::json::array();
    for (const auto& id : ids) {
      const auto& r = pipeline_->record(id);
      nlohmann::json c = {{"event_id", id},
                          {"ts", format_iso8601(r.timestamp)},
                          {"page_id", r.page_id},
                          {"predicted", to_int(r.predicted)},
                          {"category", class_name(r.predicted)},
                          {"confidence", r.confidence}};
      nlohmann::json top = nlohmann::json::array();
      for (const auto& t : r.top_features) top.push_back(explain::to_json(t));
      c["top_features"] = std::move(top);
      if (const auto* f = feedback_.find(id)) {
        c["status"] = f->verdict();
        c["expert_label"] = to_int(f->expert_label);
      } else {
        c["status"] = "pending";
      }
      list.push_back(std::move(c));
    }
    if (!ids.empty()) {
      const auto& last = pipeline_->record(ids.back());
      j["last_contribution"] = {{"event_id", last.event_id}, {"ts", format_iso8601(last.timestamp)}, {"content", last.content}};
      nlohmann::json top = nlohmann::json::array();
      for (const auto& t : last.top_features) top.push_back(explain::to_json(t));
      j["top_features"] = std::move(top);
    }
    j["contributions"] = std::move(list);
    return j;
  }

  nlohmann::json metrics_view() const {
    auto j = eval::to_json(metrics_.snapshot());
    j["sample_index"] = pipeline_->predictions();
    j["evaluated"] = metrics_.count();
    j["admitted"] = admitted_;
    j["calibrated"] = pipeline_->calibrated();
    j["cold_start_buffered"] = cold_.size();
    j["feedback_applied"] = feedback_.applied_count();
    j["learned"] = pipeline_->learned();
    j["model"] = model::model_name(pipeline_->active_config().kind);
    return j;
  }

  void append_journal(const nlohmann::json& j) {
    if (config_.state_dir.empty()) return;
    std::ofstream out(path("journal.jsonl"), std::ios::app);
    if (!out) throw std::runtime_error("cannot append to journal in " + config_.state_dir);
    out << j.dump() << '\n';
    out.flush();
    if (!out) throw std::runtime_error("journal write failed in " + config_.state_dir);
  }

  void replay_journal() {
    std::ifstream in(path("journal.jsonl"));
    if (!in) return;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      ++n;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(n, std::string("journal: ") + e.what());
      }
      const auto type = j.value("type", std::string{});
      if (type == "event") {
        admit(event_from_json(j.at("event"), n), false, false);
      } else if (type == "feedback") {
        const auto ts = parse_iso8601(j.at("ts").get<std::string>());
        if (!ts) throw ParseError(n, "journal: bad feedback timestamp");
        feedback(j.at("event_id").get<std::string>(), label_from_int(j.at("label").get<int>()), *ts, false);
      } else {
        throw ParseError(n, "journal: unknown record type '" + type + "'");
      }
    }
  }

  /// model.json and histories.jsonl, each written to a temporary file first.
  void write_checkpoint() {
    const auto model_tmp = path("model.json.tmp");
    model::write_model_dump(pipeline_->model_dump(), model_tmp);
    std::filesystem::rename(model_tmp, path("model.json"));
    const auto hist_tmp = path("histories.jsonl.tmp");
    {
      std::ofstream out(hist_tmp);
      if (!out) throw std::runtime_error("cannot write " + hist_tmp);
      pipeline_->histories().export_jsonl(out);
    }
    std::filesystem::rename(hist_tmp, path("histories.jsonl"));
  }

  ServiceConfig config_;
  std::unique_ptr<explain::TextGenerator> generator_;
  NowFn now_;
  std::unique_ptr<pipeline::Pipeline> pipeline_;
  explain::FeedbackStore feedback_;
  eval::MetricsAccumulator metrics_;
  std::vector<WikiEvent> cold_;
  std::unordered_set<std::string> seen_;
  std::optional<Timestamp> last_ts_;
  std::size_t admitted_ = 0;

  mutable std::mutex explanations_mu_;
  std::unordered_map<std::string, explain::Explanation> explanations_;

  bool stopped_ = false;
  // Declared last: the workers start after every other member exists and
  // are joined before any of them is destroyed.
  SerialExecutor texts_;
  SerialExecutor writer_;
};

}  // namespace wikistream::service
