// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wikistream/core/error.hpp"
#include "wikistream/core/random.hpp"
#include "wikistream/ingest/event.hpp"

namespace wikistream {

/// Knobs of the synthetic revision stream. Disinformation events are longer,
/// sit on stub-like articles, draw on a sensational vocabulary and mostly
/// come from a small pool of spam-prone users. `overlap` in [0,1] blends the
/// two classes' generators and so controls difficulty.
struct SynthConfig {
  std::size_t n = 10000;
  std::uint64_t seed = 7;
  double disinformation_fraction = 0.5;
  double overlap = 0.08;
  std::size_t users = 300;
  std::size_t spam_users = 40;
  std::size_t pages = 400;
};

namespace detail {

inline constexpr std::array<std::string_view, 40> kNeutralWords = {
    "the",      "museum",   "station", "river",    "city",     "built",    "century", "located",  "population",
    "district", "railway",  "church",  "bridge",   "school",   "village",  "north",   "south",    "council",
    "history",  "founded",  "opened",  "route",    "hall",     "park",     "market",  "harbor",   "festival",
    "library",  "tower",    "square",  "street",   "valley",   "castle",   "island",  "mountain", "lake",
    "province", "building", "road",    "cathedral"};

inline constexpr std::array<std::string_view, 24> kSensationalWords = {
    "shocking", "secret",   "miracle", "hoax",    "cure",     "conspiracy", "truth",   "banned",
    "amazing",  "hidden",   "scandal", "exposed", "fake",     "lies",       "cover",   "incredible",
    "wow",      "unbelievable", "terrible", "awful", "outrage", "panic",     "danger",  "disaster"};

inline constexpr std::array<std::string_view, 8> kLinkers = {"is", "was", "has", "near", "with", "and", "of", "in"};

inline std::string pick(Rng& rng, std::span<const std::string_view> words) {
  return std::string(words[static_cast<std::size_t>(uniform_index(rng, words.size()))]);
}

inline std::string sentence(Rng& rng, double sensational_share, std::size_t words) {
  std::string s;
  for (std::size_t i = 0; i < words; ++i) {
    std::string w;
    if (i % 3 == 2) {
      w = pick(rng, kLinkers);
    } else if (uniform_real(rng) < sensational_share) {
      w = pick(rng, kSensationalWords);
    } else {
      w = pick(rng, kNeutralWords);
    }
    if (i == 0) w[0] = static_cast<char>(w[0] - 'a' + 'A');
    if (!s.empty()) s.push_back(' ');
    s += w;
  }
  s += uniform_real(rng) < sensational_share ? "!" : ".";
  return s;
}

inline double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

template <std::size_t N>
std::array<double, N> normalized(std::array<double, N> w) {
  double total = 0.0;
  for (double v : w) total += v;
  for (double& v : w) v /= total;
  return w;
}

}  // namespace detail

/// Deterministic labeled stream in time order.
inline std::vector<WikiEvent> synthesize_events(const SynthConfig& cfg) {
  if (cfg.users == 0 || cfg.pages == 0 || cfg.spam_users == 0) throw ConfigurationError("synth pools must be non-empty");
  if (!(cfg.disinformation_fraction > 0.0 && cfg.disinformation_fraction < 1.0)) {
    throw ConfigurationError("disinformation fraction must be in (0, 1)");
  }
  Rng rng(cfg.seed);
  std::vector<WikiEvent> out;
  out.reserve(cfg.n);
  auto ts = Timestamp{std::chrono::milliseconds{1704067200000LL}};  // 2024-01-01T00:00:00Z
  const double mix = detail::clamp01(cfg.overlap);

  for (std::size_t i = 0; i < cfg.n; ++i) {
    WikiEvent ev;
    const bool bad = uniform_real(rng) < cfg.disinformation_fraction;
    // With probability `mix` an event is generated from the other class's profile.
    const bool looks_bad = uniform_real(rng) < mix ? !bad : bad;
    ts += std::chrono::milliseconds{1000 + static_cast<std::int64_t>(uniform_index(rng, 120000))};
    ev.event_id = "ev" + std::to_string(i + 1);
    ev.timestamp = ts;
    const bool spam_user = bad ? uniform_real(rng) < 0.8 : uniform_real(rng) < 0.05;
    ev.user_id = spam_user ? "spam" + std::to_string(uniform_index(rng, cfg.spam_users))
                           : "user" + std::to_string(uniform_index(rng, cfg.users));
    ev.page_id = "page" + std::to_string(uniform_index(rng, cfg.pages));

    const std::size_t sentences = looks_bad ? 3 + uniform_index(rng, 4) : 1 + uniform_index(rng, 3);
    const double share = looks_bad ? 0.35 : 0.03;
    for (std::size_t s = 0; s < sentences; ++s) {
      if (!ev.content.empty()) ev.content.push_back(' ');
      ev.content += detail::sentence(rng, share, 6 + uniform_index(rng, 8));
    }
    if (uniform_real(rng) < (looks_bad ? 0.4 : 0.1)) ev.content += " See https://example.org/p" + std::to_string(i);

    ev.bot_flag = !looks_bad && uniform_real(rng) < 0.05;
    ev.deleted_flag = uniform_real(rng) < (looks_bad ? 0.08 : 0.02);
    ev.new_flag = uniform_real(rng) < 0.1;
    ev.revert_flag = uniform_real(rng) < (looks_bad ? 0.3 : 0.05);
    ev.size_diff = static_cast<std::int64_t>((looks_bad ? 600.0 : 100.0) + standard_normal(rng) * 300.0);

    ArticleQuality aq{};
    for (auto& v : aq) v = 0.05 + uniform_real(rng);
    aq[6] += looks_bad ? 3.0 + 2.0 * uniform_real(rng) : 0.5 * uniform_real(rng);  // wp10stub
    aq[3] += looks_bad ? 0.0 : 1.0 * uniform_real(rng);                           // wp10fa
    ev.article_quality = detail::normalized(aq);

    const double damaging = detail::clamp01((looks_bad ? 0.65 : 0.2) + 0.2 * standard_normal(rng));
    const double goodfaith = detail::clamp01((looks_bad ? 0.35 : 0.85) + 0.15 * standard_normal(rng));
    ev.edit_quality = EditQuality{1.0 - damaging, damaging, 1.0 - goodfaith, goodfaith};

    if (uniform_real(rng) < 0.5) {
      ReviewQuality rq{};
      for (auto& v : rq) v = 0.05 + uniform_real(rng);
      rq[looks_bad ? 4 : 0] += 2.0;
      ev.review_quality = detail::normalized(rq);
    }
    ev.label = bad ? Label::kDisinformation : Label::kNonDisinformation;
    out.push_back(std::move(ev));
  }
  return out;
}

}  // namespace wikistream
