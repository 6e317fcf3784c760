// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wikistream/core/error.hpp"
#include "wikistream/core/feature_vector.hpp"
#include "wikistream/core/time.hpp"

namespace wikistream {

inline constexpr std::array<std::string_view, 7> kArticleQualityKeys = {"ok",    "wp10b",     "wp10c",   "wp10fa",
                                                                        "wp10ga", "wp10start", "wp10stub"};
inline constexpr std::array<std::string_view, 4> kEditQualityKeys = {"damaging_false", "damaging_true",
                                                                     "goodfaith_false", "goodfaith_true"};
inline constexpr std::array<std::string_view, 5> kReviewQualityKeys = {"a", "b", "c", "d", "e"};

using ArticleQuality = std::array<double, 7>;
using EditQuality = std::array<double, 4>;
using ReviewQuality = std::array<double, 5>;

struct WikiEvent {
  std::string event_id;
  Timestamp timestamp{};
  std::string user_id;
  std::string page_id;
  std::string content;
  bool bot_flag = false;
  bool deleted_flag = false;
  bool new_flag = false;
  bool revert_flag = false;
  std::int64_t size_diff = 0;
  std::optional<ArticleQuality> article_quality;
  std::optional<EditQuality> edit_quality;
  std::optional<ReviewQuality> review_quality;
  std::optional<Label> label;

  friend bool operator==(const WikiEvent&, const WikiEvent&) = default;
};

namespace detail {

template <std::size_t N>
std::optional<std::array<double, N>> read_quality(const nlohmann::json& record, const char* field,
                                                  const std::array<std::string_view, N>& keys, std::size_t line) {
  if (!record.contains(field) || record.at(field).is_null()) return std::nullopt;
  const auto& obj = record.at(field);
  if (!obj.is_object()) throw ParseError(line, std::string(field) + " must be an object");
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    const std::string key(keys[i]);
    if (!obj.contains(key)) throw ValidationError(std::string(field) + " missing probability '" + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ParseError(line, std::string(field) + "." + key + " must be a number");
    const double p = v.get<double>();
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ValidationError(std::string(field) + "." + key + " = " + std::to_string(p) + " outside [0,1]");
    }
    out[i] = p;
  }
  return out;
}

inline bool read_bool(const nlohmann::json& record, const char* field, std::size_t line) {
  if (!record.contains(field) || record.at(field).is_null()) return false;
  const auto& v = record.at(field);
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer()) return v.get<std::int64_t>() != 0;
  throw ParseError(line, std::string(field) + " must be a boolean");
}

inline std::string read_string(const nlohmann::json& record, const char* field, std::size_t line) {
  if (!record.contains(field) || record.at(field).is_null()) {
    throw ValidationError(std::string("missing required field '") + field + "'");
  }
  const auto& v = record.at(field);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  throw ParseError(line, std::string(field) + " must be a string");
}

}  // namespace detail

/// Builds a WikiEvent from an already-parsed JSON record.
inline WikiEvent event_from_json(const nlohmann::json& record, std::size_t line = 0) {
  if (!record.is_object()) throw ParseError(line, "record is not a JSON object");
  WikiEvent ev;
  ev.event_id = detail::read_string(record, "id", line);
  if (ev.event_id.empty()) throw ValidationError("empty event id");

  const std::string ts = detail::read_string(record, "ts", line);
  const auto parsed = parse_iso8601(ts);
  if (!parsed) throw ValidationError("unparseable timestamp '" + ts + "'");
  ev.timestamp = *parsed;

  ev.user_id = detail::read_string(record, "user", line);
  ev.page_id = detail::read_string(record, "page", line);
  if (record.contains("text") && !record.at("text").is_null()) {
    if (!record.at("text").is_string()) throw ParseError(line, "text must be a string");
    ev.content = record.at("text").get<std::string>();
  }
  ev.bot_flag = detail::read_bool(record, "bot", line);
  ev.deleted_flag = detail::read_bool(record, "deleted", line);
  ev.new_flag = detail::read_bool(record, "new", line);
  ev.revert_flag = detail::read_bool(record, "revert", line);
  if (record.contains("size_diff") && !record.at("size_diff").is_null()) {
    const auto& v = record.at("size_diff");
    if (v.is_number_integer()) {
      ev.size_diff = v.get<std::int64_t>();
    } else if (v.is_number()) {
      ev.size_diff = static_cast<std::int64_t>(std::llround(v.get<double>()));
    } else {
      throw ParseError(line, "size_diff must be an integer");
    }
  }
  ev.article_quality = detail::read_quality(record, "article_quality", kArticleQualityKeys, line);
  ev.edit_quality = detail::read_quality(record, "edit_quality", kEditQualityKeys, line);
  ev.review_quality = detail::read_quality(record, "review_quality", kReviewQualityKeys, line);
  if (ev.article_quality) {
    double total = 0.0;
    for (double p : *ev.article_quality) total += p;
    if (std::abs(total - 1.0) > 1e-6) {
      throw ValidationError("article_quality probabilities sum to " + std::to_string(total));
    }
  }
  if (record.contains("label") && !record.at("label").is_null()) {
    const auto& v = record.at("label");
    if (!v.is_number_integer()) throw ParseError(line, "label must be 0 or 1");
    const auto l = v.get<std::int64_t>();
    if (l != 0 && l != 1) throw ValidationError("label must be 0 or 1, got " + std::to_string(l));
    ev.label = label_from_int(static_cast<int>(l));
  }
  return ev;
}

/// Parses one JSONL line. Malformed JSON raises ParseError carrying `line`;
/// field violations raise ValidationError.
inline WikiEvent parse_event_record(std::string_view text, std::size_t line = 0) {
  nlohmann::json record;
  try {
    record = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(line, e.what());
  }
  return event_from_json(record, line);
}

inline nlohmann::json event_to_json(const WikiEvent& ev) {
  nlohmann::json j;
  j["id"] = ev.event_id;
  j["ts"] = format_iso8601(ev.timestamp);
  j["user"] = ev.user_id;
  j["page"] = ev.page_id;
  j["text"] = ev.content;
  j["bot"] = ev.bot_flag;
  j["deleted"] = ev.deleted_flag;
  j["new"] = ev.new_flag;
  j["revert"] = ev.revert_flag;
  j["size_diff"] = ev.size_diff;
  auto put = [&j](const char* field, const auto& values, const auto& keys) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < keys.size(); ++i) obj[std::string(keys[i])] = values[i];
    j[field] = std::move(obj);
  };
  if (ev.article_quality) put("article_quality", *ev.article_quality, kArticleQualityKeys);
  if (ev.edit_quality) put("edit_quality", *ev.edit_quality, kEditQualityKeys);
  if (ev.review_quality) put("review_quality", *ev.review_quality, kReviewQualityKeys);
  if (ev.label) j["label"] = to_int(*ev.label);
  return j;
}

/// Reads a JSONL stream; blank lines are skipped. Line numbers are 1-based.
inline std::vector<WikiEvent> read_events(std::istream& in) {
  std::vector<WikiEvent> events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    try {
      events.push_back(parse_event_record(line, line_no));
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return events;
}

inline std::vector<WikiEvent> read_events_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open event file " + path);
  return read_events(in);
}

/// Stable sort by (timestamp, event_id).
inline std::vector<WikiEvent> order_stream(std::vector<WikiEvent> events) {
  std::stable_sort(events.begin(), events.end(), [](const WikiEvent& a, const WikiEvent& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.event_id < b.event_id;
  });
  return events;
}

}  // namespace wikistream
