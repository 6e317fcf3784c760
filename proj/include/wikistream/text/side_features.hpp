// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>

#include "wikistream/text/lexicons.hpp"
#include "wikistream/text/preprocess.hpp"

namespace wikistream::text {

struct SideCounts {
  std::size_t n_chars = 0;
  std::size_t n_words = 0;
  std::size_t n_difficult_words = 0;
  std::size_t n_urls = 0;
};

struct Readability {
  double reading_time = 0.0;  // seconds
  double flesch = 0.0;
  double mcalpine_eflaw = 0.0;
};

/// adj, adv, intj, noun, pron, punct, verb
using PosRatios = std::array<double, 7>;

struct SideFeatures {
  SideCounts counts;
  PosRatios pos_ratios{};
  Readability readability;
};

inline constexpr double kReadingMsPerChar = 14.69;

/// Vowel-group heuristic: each run of [aeiouy] is a syllable; a trailing
/// silent `e` (not `le`) is dropped; every word has at least one syllable.
inline std::size_t count_syllables(std::string_view word) {
  const auto w = to_lower_ascii(word);
  auto vowel = [](char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y'; };
  std::size_t groups = 0;
  bool prev = false;
  bool has_letter = false;
  for (char c : w) {
    has_letter = has_letter || is_letter(static_cast<unsigned char>(c));
    const bool v = vowel(c);
    if (v && !prev) ++groups;
    prev = v;
  }
  if (w.size() > 2 && w.back() == 'e' && !vowel(w[w.size() - 2]) && groups > 1 &&
      !(w[w.size() - 2] == 'l' && !vowel(w[w.size() - 3]))) {
    --groups;
  }
  if (!has_letter) return 1;
  return groups == 0 ? 1 : groups;
}

/// Word tokens (letters or digits) of the side text.
inline std::vector<std::string> readability_words(std::string_view side_ready) {
  std::vector<std::string> words;
  for (auto& t : tokenize(side_ready)) {
    if (t.kind != TokenKind::kPunct) words.push_back(std::move(t.text));
  }
  return words;
}

/// Distinct lowercase words of three or more syllables that are not on the
/// easy-word list.
inline std::size_t count_difficult_words(std::string_view side_ready, const WordSet& easy_words) {
  std::unordered_set<std::string> seen;
  for (const auto& t : tokenize(side_ready)) {
    if (t.kind != TokenKind::kWord) continue;
    auto w = to_lower_ascii(t.text);
    if (easy_words.contains(w)) continue;
    if (count_syllables(w) >= 3) seen.insert(std::move(w));
  }
  return seen.size();
}

inline SideCounts side_counts(const CleanTextStages& st, const WordSet& easy_words) {
  SideCounts c;
  c.n_chars = codepoint_count(st.side_ready);
  std::size_t words = 0;
  bool in_word = false;
  for (unsigned char ch : st.side_ready) {
    if (is_space(ch)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++words;
    }
  }
  c.n_words = words;
  c.n_difficult_words = count_difficult_words(st.side_ready, easy_words);
  c.n_urls = st.n_urls;
  return c;
}

class PosTagger {
 public:
  virtual ~PosTagger() = default;
  virtual PosTag tag(const Token& token) const = 0;
};

/// Lexicon lookup with suffix fallbacks; unknown alphabetic words are nouns.
class LexiconTagger final : public PosTagger {
 public:
  explicit LexiconTagger(PosLexicon lexicon = default_pos_lexicon()) : lexicon_(std::move(lexicon)) {}

  PosTag tag(const Token& token) const override {
    if (token.kind == TokenKind::kPunct) return PosTag::kPunct;
    if (token.kind == TokenKind::kNumber) return PosTag::kOther;
    const auto w = to_lower_ascii(token.text);
    if (auto it = lexicon_.find(w); it != lexicon_.end()) return it->second;
    auto ends = [&w](std::string_view s) {
      return w.size() > s.size() + 2 && std::string_view(w).substr(w.size() - s.size()) == s;
    };
    if (ends("ly")) return PosTag::kAdv;
    if (ends("ing") || ends("ed") || ends("ize") || ends("ise") || ends("ify")) return PosTag::kVerb;
    if (ends("ous") || ends("ful") || ends("ive") || ends("able") || ends("ible") || ends("al") || ends("ic") ||
        ends("less") || ends("ish")) {
      return PosTag::kAdj;
    }
    return PosTag::kNoun;
  }

 private:
  PosLexicon lexicon_;
};

/// Ratio of each reported category over all tokens of the side text.
inline PosRatios pos_ratios(const CleanTextStages& st, const PosTagger& tagger) {
  PosRatios r{};
  const auto tokens = tokenize(st.side_ready);
  if (tokens.empty()) return r;
  std::array<std::size_t, 8> counts{};
  for (const auto& t : tokens) ++counts[static_cast<std::size_t>(tagger.tag(t))];
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = static_cast<double>(counts[i]) / static_cast<double>(tokens.size());
  }
  return r;
}

/// Flesch reading ease, McAlpine EFLAW and reading time over the side text.
/// Empty text scores (0, 0, 0).
inline Readability readability(const CleanTextStages& st) {
  Readability r;
  r.reading_time = static_cast<double>(codepoint_count(st.side_ready)) * kReadingMsPerChar / 1000.0;
  const auto words = readability_words(st.side_ready);
  if (words.empty()) return r;
  std::size_t sentences = 0;
  for (const auto s : split_sentences(st.side_ready)) {
    for (const auto& t : tokenize(s)) {
      if (t.kind != TokenKind::kPunct) {
        ++sentences;
        break;
      }
    }
  }
  if (sentences == 0) sentences = 1;
  std::size_t syllables = 0;
  std::size_t mini = 0;
  for (const auto& w : words) {
    syllables += count_syllables(w);
    if (codepoint_count(w) <= 3) ++mini;
  }
  const double nw = static_cast<double>(words.size());
  const double ns = static_cast<double>(sentences);
  r.flesch = 206.835 - 1.015 * (nw / ns) - 84.6 * (static_cast<double>(syllables) / nw);
  r.mcalpine_eflaw = (nw + static_cast<double>(mini)) / ns;
  return r;
}

}  // namespace wikistream::text
