// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wikistream/core/error.hpp"
#include "wikistream/core/random.hpp"
#include "wikistream/ingest/event.hpp"

namespace wikistream {

enum class Scenario : int {
  kClassBlocks = 1,  // first s of each class, one block per class
  kBalanced = 2,     // s minority + s random majority, merged by time
  kDelayed = 3,      // scenario 2 data, training delayed in blocks
};

struct ScenarioConfig {
  Scenario scenario = Scenario::kBalanced;
  std::optional<std::size_t> s;  // defaults to the minority-class count
  std::size_t delay_n = 100;
  std::uint64_t rng_seed = 0;

  void validate() const {
    if (s && *s < 1) throw ValidationError("scenario s must be >= 1");
    if (delay_n < 1) throw ValidationError("scenario delay must be >= 1");
  }
};

namespace detail {

inline bool time_order(const WikiEvent& a, const WikiEvent& b) {
  if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
  return a.event_id < b.event_id;
}

}  // namespace detail

/// Materializes the evaluation stream for a scenario. `events` must already be
/// in stream order (see order_stream); class blocks keep that order.
inline std::vector<WikiEvent> build_scenario(const std::vector<WikiEvent>& events, const ScenarioConfig& cfg) {
  cfg.validate();
  std::vector<const WikiEvent*> by_class[2];
  for (const auto& ev : events) {
    if (!ev.label) throw ValidationError("unlabeled event '" + ev.event_id + "' in scenario input");
    by_class[to_int(*ev.label)].push_back(&ev);
  }
  // Equal counts: class 1 plays the minority role.
  const int minority = by_class[0].size() < by_class[1].size() ? 0 : 1;
  const int majority = 1 - minority;
  const std::size_t s = cfg.s.value_or(by_class[minority].size());
  if (s == 0) throw ValidationError("scenario needs at least one event of each class");
  if (s > by_class[minority].size()) {
    throw ValidationError("s = " + std::to_string(s) + " exceeds minority class count " +
                          std::to_string(by_class[minority].size()));
  }

  std::vector<WikiEvent> out;
  out.reserve(2 * s);
  if (cfg.scenario == Scenario::kClassBlocks) {
    // The block whose first event comes earlier in the source goes first.
    int first = 0;
    if (!by_class[0].empty() && !by_class[1].empty() && detail::time_order(*by_class[1][0], *by_class[0][0])) {
      first = 1;
    }
    for (int c : {first, 1 - first}) {
      for (std::size_t i = 0; i < s; ++i) out.push_back(*by_class[c][i]);
    }
    return out;
  }

  // Uniform sample without replacement: partial Fisher-Yates over indices.
  std::vector<std::size_t> idx(by_class[majority].size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Rng rng(cfg.rng_seed);
  for (std::size_t i = 0; i < s; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(uniform_index(rng, idx.size() - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(s);
  std::sort(idx.begin(), idx.end());

  for (std::size_t i = 0; i < s; ++i) out.push_back(*by_class[minority][i]);
  for (std::size_t i : idx) out.push_back(*by_class[majority][i]);
  std::stable_sort(out.begin(), out.end(), detail::time_order);
  return out;
}

}  // namespace wikistream
