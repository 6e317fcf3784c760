// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <vector>

#include "wikistream/text/lexicons.hpp"
#include "wikistream/text/preprocess.hpp"

namespace wikistream::text {

/// anger, fear, happiness, sadness, surprise
using EmotionLoads = std::array<double, 5>;

struct Affect {
  EmotionLoads emotion{};
  double polarity = 0.0;
};

/// Emotion loads are normalized jointly: each load is the share of matched
/// emotion-tagged terms carrying that emotion. Polarity is the mean of matched
/// term polarities, clipped to [-1, 1].
inline Affect affect(const CleanTextStages& st, const AffectLexicon& lexicon) {
  Affect a;
  std::array<std::size_t, 5> counts{};
  std::size_t emotional = 0;
  double polarity_sum = 0.0;
  std::size_t polar = 0;
  for (const auto& tok : st.content_ready) {
    auto it = lexicon.find(tok);
    if (it == lexicon.end()) continue;
    if (it->second.emotion) {
      ++counts[static_cast<std::size_t>(*it->second.emotion)];
      ++emotional;
    }
    if (it->second.polarity) {
      polarity_sum += *it->second.polarity;
      ++polar;
    }
  }
  if (emotional > 0) {
    for (std::size_t i = 0; i < counts.size(); ++i) {
      a.emotion[i] = static_cast<double>(counts[i]) / static_cast<double>(emotional);
    }
  }
  if (polar > 0) a.polarity = std::clamp(polarity_sum / static_cast<double>(polar), -1.0, 1.0);
  return a;
}

/// Mean vector of in-vocabulary content tokens; zero vector when none match.
inline std::vector<double> embed_average(const CleanTextStages& st, const WordVectorTable& table) {
  std::vector<double> out(kEmbeddingDim, 0.0);
  std::size_t hits = 0;
  for (const auto& tok : st.content_ready) {
    if (const auto* vec = table.find(tok)) {
      for (std::size_t i = 0; i < kEmbeddingDim; ++i) out[i] += (*vec)[i];
      ++hits;
    }
  }
  if (hits > 0) {
    for (auto& v : out) v /= static_cast<double>(hits);
  }
  return out;
}

}  // namespace wikistream::text
