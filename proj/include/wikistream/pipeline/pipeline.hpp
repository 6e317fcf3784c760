// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wikistream/core/error.hpp"
#include "wikistream/explain/quartiles.hpp"
#include "wikistream/history/entity_history.hpp"
#include "wikistream/ingest/event.hpp"
#include "wikistream/model/factory.hpp"
#include "wikistream/model/grid_search.hpp"
#include "wikistream/pipeline/featurizer.hpp"
#include "wikistream/selection/variance_selector.hpp"

namespace wikistream::pipeline {

struct PipelineConfig {
  model::ModelConfig model;
  double threshold_percentile = 90.0;
  bool grid_search = false;
  model::HyperparameterGrid grid;
  /// Keep per-event state (needed for explanations and feedback).
  bool retain_records = false;
};

struct Featurized {
  FeatureVector full;
  history::Channels channels{};
  history::HistoricalSnapshot snapshot;
};

/// One of the most variable selected base features of an event.
struct TopFeature {
  std::size_t base_feature = 0;  // 1-19
  std::string name;
  double value = 0.0;
  double variance = 0.0;
  explain::QuartileColor color = explain::QuartileColor::kNone;
};

struct PredictionRecord {
  std::size_t index = 0;  // 1-based prediction count
  std::string event_id;
  std::string user_id;
  std::string page_id;
  Timestamp timestamp{};
  std::string content;
  bool revert = false;
  std::optional<Label> truth;
  FeatureVector selected;
  history::Channels channels{};
  std::vector<TopFeature> top_features;
  Label predicted = Label::kNonDisinformation;
  model::ClassDistribution proba{0.5, 0.5};
  double confidence = 0.5;
};

/// Feature engineering, selection and the active model, driven one event at
/// a time. Not thread-safe; callers serialize access.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config = {}, TextResources resources = {})
      : config_(std::move(config)), featurizer_(std::move(resources)) {}

  const PipelineConfig& config() const noexcept { return config_; }
  bool calibrated() const noexcept { return model_ != nullptr; }

  /// Cold start: fixes the n-gram cap and the variance threshold, feeds the
  /// histories, population and variance tracker, optionally grid-searches the
  /// model, then trains it on the labeled cold-start events.
  void calibrate(std::span<const WikiEvent> cold_start) {
    if (calibrated()) throw std::logic_error("pipeline already calibrated");
    if (cold_start.empty()) throw ValidationError("empty cold start");
    featurizer_.calibrate(cold_start);
    std::vector<FeatureVector> vectors;
    vectors.reserve(cold_start.size());
    for (const auto& ev : cold_start) {
      auto f = featurize(ev);
      population_.add(f.channels);
      vectors.push_back(std::move(f.full));
    }
    selector_.set_threshold(calibrate_threshold(vectors));
    std::vector<std::pair<FeatureVector, Label>> labeled;
    for (std::size_t i = 0; i < cold_start.size(); ++i) {
      auto s = selector_.update_and_select(vectors[i]);
      if (cold_start[i].label) labeled.emplace_back(std::move(s), *cold_start[i].label);
    }
    active_ = config_.model;
    if (config_.grid_search && !labeled.empty()) {
      grid_result_ = model::grid_search(config_.model, config_.grid, labeled);
      active_ = grid_result_->best;
    }
    model_ = model::make_classifier(active_);
    for (const auto& [x, y] : labeled) learn(x, y);
    cold_start_size_ = cold_start.size();
  }

  /// Base features, history snapshot (prior events only) and the full vector.
  /// Updates the histories and the population store.
  Featurized featurize(const WikiEvent& ev) {
    Featurized f;
    const auto base = featurizer_.base(ev);
    f.channels = to_channels(base);
    f.snapshot = histories_.snapshot_then_update(ev.user_id, ev.page_id, f.channels, ev.revert_flag, ev.timestamp);
    f.full = featurizer_.vectorize(base, f.snapshot);
    return f;
  }

  FeatureVector select(const FeatureVector& full) { return selector_.update_and_select(full); }

  model::ClassDistribution predict(const FeatureVector& selected) const { return require_model().predict_proba_one(selected); }

  void learn(const FeatureVector& selected, Label y) {
    require_model();
    model_->learn_one(selected, y);
    ++learned_;
  }

  /// Featurize, select and predict one post-calibration event. Labeled events
  /// are learned right after the prediction; `before_learn` sees the record
  /// while the model is still the one that made it. Records are kept when
  /// configured.
  PredictionRecord process(const WikiEvent& ev,
                           const std::function<void(const PredictionRecord&)>& before_learn = {}) {
    require_model();
    if (config_.retain_records && records_.count(ev.event_id) > 0) {
      throw ConflictError("duplicate event id '" + ev.event_id + "'");
    }
    auto f = featurize(ev);
    PredictionRecord r;
    r.selected = select(f.full);
    r.proba = predict(r.selected);
    r.predicted = model::argmax(r.proba);
    r.confidence = r.proba[static_cast<std::size_t>(to_int(r.predicted))];
    r.index = ++predictions_;
    r.event_id = ev.event_id;
    r.user_id = ev.user_id;
    r.page_id = ev.page_id;
    r.timestamp = ev.timestamp;
    r.revert = ev.revert_flag;
    r.truth = ev.label;
    r.channels = f.channels;
    if (config_.retain_records) {
      r.content = ev.content;
      r.top_features = top_features(r.selected, f.channels);
    }
    population_.add(f.channels);
    if (before_learn) before_learn(r);
    if (ev.label) learn(r.selected, *ev.label);
    if (config_.retain_records) {
      contributions_[ev.user_id].push_back(ev.event_id);
      records_.emplace(ev.event_id, r);
    }
    return r;
  }

  /// Adds a cold-start event's base values to the population store.
  void add_population(const history::Channels& c) { population_.add(c); }

  /// Expert feedback: trains on the event's selected vector with the expert
  /// label and counts a spam post for the user when the label is 1 and the
  /// event was not already counted as spam.
  void apply_feedback(const std::string& event_id, Label expert_label) {
    const auto& r = record(event_id);
    learn(r.selected, expert_label);
    if (expert_label == Label::kDisinformation && !r.revert) histories_.mark_spam(r.user_id);
    ++feedback_applied_;
  }

  /// Top three selected base features by the variance of their selected
  /// components (ties: lower feature number), colored against the population.
  std::vector<TopFeature> top_features(const FeatureVector& selected, const history::Channels& channels) const {
    std::array<double, history::kChannelCount + 1> best{};
    std::array<bool, history::kChannelCount + 1> seen{};
    for (const auto& e : selected) {
      const auto base = featurizer_.base_feature_of(e.id);
      if (!base) continue;
      const double v = selector_.tracker().variance(e.id);
      if (!seen[*base] || v > best[*base]) best[*base] = v;
      seen[*base] = true;
    }
    std::vector<TopFeature> out;
    for (std::size_t b = 1; b <= history::kChannelCount; ++b) {
      if (!seen[b]) continue;
      TopFeature t;
      t.base_feature = b;
      t.name = std::string(history::kChannelNames[b - 1]);
      t.value = channels[b - 1];
      t.variance = best[b];
      out.push_back(std::move(t));
    }
    std::stable_sort(out.begin(), out.end(), [](const TopFeature& a, const TopFeature& b) { return a.variance > b.variance; });
    if (out.size() > 3) out.resize(3);
    for (auto& t : out) t.color = population_.color(t.base_feature - 1, t.value);
    return out;
  }

  const PredictionRecord& record(const std::string& event_id) const {
    auto it = records_.find(event_id);
    if (it == records_.end()) throw NotFoundError("unknown event '" + event_id + "'");
    return it->second;
  }
  bool has_record(const std::string& event_id) const { return records_.count(event_id) > 0; }

  const std::vector<std::string>& contributions(const std::string& user_id) const {
    static const std::vector<std::string> kNone;
    auto it = contributions_.find(user_id);
    return it == contributions_.end() ? kNone : it->second;
  }

  const model::Classifier& model() const { return require_model(); }
  const model::ModelConfig& active_config() const noexcept { return active_; }
  const std::optional<model::GridSearchResult>& grid_result() const noexcept { return grid_result_; }
  model::ModelDump model_dump() const { return model::dump_model(require_model(), active_, &featurizer_.space()); }

  const Featurizer& featurizer() const noexcept { return featurizer_; }
  const FeatureSpace& space() const noexcept { return featurizer_.space(); }
  const selection::VarianceSelector& selector() const noexcept { return selector_; }
  const history::HistoryStore& histories() const noexcept { return histories_; }
  const explain::PopulationStore& population() const noexcept { return population_; }

  std::size_t predictions() const noexcept { return predictions_; }
  std::size_t learned() const noexcept { return learned_; }
  std::size_t feedback_applied() const noexcept { return feedback_applied_; }
  std::size_t cold_start_size() const noexcept { return cold_start_size_; }

 private:
  const model::Classifier& require_model() const {
    if (!model_) throw std::logic_error("pipeline used before calibration");
    return *model_;
  }

  /// Percentile of the quality-score variances; when the cold start carries
  /// no quality scores, of every observed feature's variance.
  double calibrate_threshold(const std::vector<FeatureVector>& vectors) const {
    const auto probe = featurizer_.quality_ids();
    selection::VarianceTracker t;
    for (const auto& v : vectors) t.update(v);
    std::vector<double> vars;
    for (FeatureId id : probe) {
      if (t.observed(id)) vars.push_back(t.variance(id));
    }
    if (vars.empty()) {
      for (std::uint32_t i = 0; i < t.dimension(); ++i) {
        if (t.observed(FeatureId{i})) vars.push_back(t.variance(FeatureId{i}));
      }
    }
    return selection::nearest_rank_percentile(std::move(vars), config_.threshold_percentile);
  }

  PipelineConfig config_;
  model::ModelConfig active_;
  Featurizer featurizer_;
  history::HistoryStore histories_;
  selection::VarianceSelector selector_;
  explain::PopulationStore population_;
  std::unique_ptr<model::Classifier> model_;
  std::optional<model::GridSearchResult> grid_result_;
  std::unordered_map<std::string, PredictionRecord> records_;
  std::unordered_map<std::string, std::vector<std::string>> contributions_;
  std::size_t predictions_ = 0;
  std::size_t learned_ = 0;
  std::size_t feedback_applied_ = 0;
  std::size_t cold_start_size_ = 0;
};

}  // namespace wikistream::pipeline
