// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>

#include <json.hpp>

#include "wikistream/core/error.hpp"
#include "wikistream/core/time.hpp"

namespace wikistream::history {

/// One scalar per base feature 1-19. Multi-valued base features are reduced
/// to a single channel; the reductions are listed next to the channel names.
inline constexpr std::size_t kChannelCount = 19;

inline constexpr std::array<std::string_view, kChannelCount> kChannelNames = {
    "n_chars",           // 1: characters
    "pos_ratio",         // 2: adj+adv+noun+verb ratio (lexical density)
    "reading_time",      // 3
    "flesch",            // 4
    "mcalpine_eflaw",    // 5
    "emotion_load",      // 6: dominant emotion load
    "polarity",          // 7
    "embedding_norm",    // 8: L2 norm of the mean embedding
    "ngram_terms",       // 9: distinct n-gram terms retained
    "bot",               // 10
    "deleted",           // 11
    "new",               // 12
    "revert",            // 13
    "size_diff",         // 14
    "article_stub",      // 15: wp10stub probability
    "edit_damaging",     // 16: damaging_true probability
    "review_grade",      // 17: expected review grade in [0,1] (a=0 .. e=1)
    "article_featured",  // 18: wp10fa probability
    "edit_goodfaith",    // 19: goodfaith_true probability
};

using Channels = std::array<double, kChannelCount>;

struct EntityHistory {
  std::size_t n = 0;
  Channels sum{};
  Channels mean{};
  Channels max{};
  std::optional<Timestamp> first_post_ts;
  std::optional<Timestamp> last_post_ts;
  std::size_t spam_count = 0;

  void update(const Channels& x, Timestamp ts, bool spam) {
    ++n;
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < kChannelCount; ++i) {
      sum[i] += x[i];
      mean[i] += (x[i] - mean[i]) * inv;
      max[i] = n == 1 ? x[i] : std::max(max[i], x[i]);
    }
    if (!first_post_ts) first_post_ts = ts;
    last_post_ts = ts;
    if (spam) ++spam_count;
  }

  friend bool operator==(const EntityHistory&, const EntityHistory&) = default;
};

/// Features 20-23.
struct BehavioralFeatures {
  double post_count = 0.0;
  double spam_tendency = 0.0;
  double antiquity_weeks = 0.0;
  double frequency_per_week = 0.0;
};

/// Posting frequency divides by max(antiquity, 1 week).
inline BehavioralFeatures behavioral_features(const EntityHistory& h, Timestamp now) {
  BehavioralFeatures f;
  if (h.n == 0) return f;
  f.post_count = static_cast<double>(h.n);
  f.spam_tendency = static_cast<double>(h.spam_count) / static_cast<double>(h.n);
  f.antiquity_weeks = std::max(0.0, seconds_between(*h.first_post_ts, now) / kSecondsPerWeek);
  f.frequency_per_week = f.post_count / std::max(f.antiquity_weeks, 1.0);
  return f;
}

/// The 80 historical values of one event, computed from prior history only.
struct HistoricalSnapshot {
  BehavioralFeatures user;
  Channels user_avg{};
  Channels user_max{};
  Channels page_avg{};
  Channels page_max{};

  static constexpr std::size_t kSize = 4 + 4 * kChannelCount;
};

class HistoryStore {
 public:
  /// Captures the snapshot for the current event, then folds the event into
  /// its user's and page's histories. Both updates happen or neither does.
  HistoricalSnapshot snapshot_then_update(const std::string& user_id, const std::string& page_id, const Channels& base,
                                          bool spam, Timestamp ts) {
    auto check = [ts](const auto& table, const std::string& id, const char* kind) {
      auto it = table.find(id);
      if (it != table.end() && it->second.last_post_ts && ts < *it->second.last_post_ts) {
        throw OrderingError(std::string("event for ") + kind + " '" + id + "' at " + format_iso8601(ts) +
                            " precedes " + format_iso8601(*it->second.last_post_ts));
      }
    };
    check(users_, user_id, "user");
    check(pages_, page_id, "page");
    auto& user = users_[user_id];
    auto& page = pages_[page_id];
    HistoricalSnapshot snap;
    snap.user = behavioral_features(user, ts);
    if (user.n > 0) {
      snap.user_avg = user.mean;
      snap.user_max = user.max;
    }
    if (page.n > 0) {
      snap.page_avg = page.mean;
      snap.page_max = page.max;
    }
    user.update(base, ts, spam);
    page.update(base, ts, spam);
    return snap;
  }

  /// Counts one more spam post for the user (expert feedback path).
  void mark_spam(const std::string& user_id) { ++users_[user_id].spam_count; }

  const EntityHistory* user(const std::string& id) const {
    auto it = users_.find(id);
    return it == users_.end() ? nullptr : &it->second;
  }
  const EntityHistory* page(const std::string& id) const {
    auto it = pages_.find(id);
    return it == pages_.end() ? nullptr : &it->second;
  }

  std::size_t user_count() const noexcept { return users_.size(); }
  std::size_t page_count() const noexcept { return pages_.size(); }

  /// JSONL, one record per entity, sorted by (kind, id) for stable diffs.
  void export_jsonl(std::ostream& out) const {
    auto dump = [&out](const char* kind, const auto& table) {
      std::map<std::string, const EntityHistory*> sorted;
      for (const auto& [id, h] : table) sorted.emplace(id, &h);
      for (const auto& [id, h] : sorted) out << to_json(kind, id, *h).dump() << '\n';
    };
    dump("user", users_);
    dump("page", pages_);
  }

  void import_jsonl(std::istream& in) {
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      ++n;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(n, e.what());
      }
      const auto kind = j.at("kind").get<std::string>();
      auto& table = kind == "user" ? users_ : pages_;
      table[j.at("entity_id").get<std::string>()] = from_json(j);
    }
  }

  static nlohmann::json to_json(const char* kind, const std::string& id, const EntityHistory& h) {
    nlohmann::json j;
    j["kind"] = kind;
    j["entity_id"] = id;
    j["n"] = h.n;
    j["sum"] = h.sum;
    j["mean"] = h.mean;
    j["max"] = h.max;
    j["first_post_ts"] = h.first_post_ts ? nlohmann::json(h.first_post_ts->time_since_epoch().count()) : nullptr;
    j["last_post_ts"] = h.last_post_ts ? nlohmann::json(h.last_post_ts->time_since_epoch().count()) : nullptr;
    j["spam_count"] = h.spam_count;
    return j;
  }

  static EntityHistory from_json(const nlohmann::json& j) {
    EntityHistory h;
    h.n = j.at("n").get<std::size_t>();
    h.sum = j.at("sum").get<Channels>();
    h.mean = j.at("mean").get<Channels>();
    h.max = j.at("max").get<Channels>();
    if (!j.at("first_post_ts").is_null()) {
      h.first_post_ts = Timestamp{std::chrono::milliseconds{j.at("first_post_ts").get<std::int64_t>()}};
    }
    if (!j.at("last_post_ts").is_null()) {
      h.last_post_ts = Timestamp{std::chrono::milliseconds{j.at("last_post_ts").get<std::int64_t>()}};
    }
    h.spam_count = j.at("spam_count").get<std::size_t>();
    return h;
  }

 private:
  std::unordered_map<std::string, EntityHistory> users_;
  std::unordered_map<std::string, EntityHistory> pages_;
};

}  // namespace wikistream::history
