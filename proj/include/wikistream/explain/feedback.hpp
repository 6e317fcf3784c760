// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "wikistream/core/error.hpp"
#include "wikistream/core/feature_vector.hpp"
#include "wikistream/core/time.hpp"

namespace wikistream::explain {

struct FeedbackRecord {
  std::string event_id;
  Label expert_label = Label::kNonDisinformation;
  Label prior_prediction = Label::kNonDisinformation;
  Timestamp timestamp{};
  bool applied = false;

  /// "validated" when the expert agrees with the prediction, else "corrected".
  std::string_view verdict() const noexcept { return expert_label == prior_prediction ? "validated" : "corrected"; }

  friend bool operator==(const FeedbackRecord&, const FeedbackRecord&) = default;
};

inline nlohmann::json to_json(const FeedbackRecord& r) {
  return {{"event_id", r.event_id},
          {"label", to_int(r.expert_label)},
          {"prior_prediction", to_int(r.prior_prediction)},
          {"ts", format_iso8601(r.timestamp)},
          {"applied", r.applied},
          {"verdict", r.verdict()}};
}

/// One immutable record per event. When a path is given, every state change
/// is appended to it as a JSON line.
class FeedbackStore {
 public:
  FeedbackStore() = default;
  explicit FeedbackStore(std::string path) : path_(std::move(path)) {}

  /// Subsequent changes are appended to `path` (empty: not persisted).
  void set_log_path(std::string path) { path_ = std::move(path); }

  bool contains(const std::string& event_id) const { return records_.count(event_id) > 0; }

  const FeedbackRecord* find(const std::string& event_id) const {
    auto it = records_.find(event_id);
    return it == records_.end() ? nullptr : &it->second;
  }

  /// Throws ConflictError when the event already has feedback.
  const FeedbackRecord& record(FeedbackRecord r) {
    if (contains(r.event_id)) throw ConflictError("feedback already recorded for event '" + r.event_id + "'");
    r.applied = false;
    append({{"type", "feedback"}, {"record", to_json(r)}});
    return records_.emplace(r.event_id, std::move(r)).first->second;
  }

  void mark_applied(const std::string& event_id) {
    auto it = records_.find(event_id);
    if (it == records_.end()) throw NotFoundError("no feedback for event '" + event_id + "'");
    if (it->second.applied) throw std::logic_error("feedback for '" + event_id + "' applied twice");
    it->second.applied = true;
    ++applied_;
    append({{"type", "applied"}, {"event_id", event_id}});
  }

  std::size_t size() const noexcept { return records_.size(); }
  std::size_t applied_count() const noexcept { return applied_; }
  const std::map<std::string, FeedbackRecord>& records() const noexcept { return records_; }

 private:
  void append(const nlohmann::json& j) {
    if (path_.empty()) return;
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot append feedback log " + path_);
    out << j.dump() << '\n';
  }

  std::string path_;
  std::map<std::string, FeedbackRecord> records_;
  std::size_t applied_ = 0;
};

}  // namespace wikistream::explain
