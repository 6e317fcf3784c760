// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wikistream/text/lexicons.hpp"

namespace wikistream::text {

enum class TokenKind : std::uint8_t { kWord, kNumber, kPunct };

struct Token {
  std::string text;
  TokenKind kind = TokenKind::kWord;
};

inline bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
inline bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }
// Bytes >= 0x80 belong to multi-byte UTF-8 sequences and are treated as letters.
inline bool is_letter(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80; }
inline bool is_alnum(unsigned char c) { return is_letter(c) || is_digit(c); }
inline bool is_sentence_end(unsigned char c) { return c == '.' || c == '!' || c == '?'; }

inline std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  return out;
}

/// Number of UTF-8 code points (continuation bytes are not counted).
inline std::size_t codepoint_count(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0U) != 0x80U) ++n;
  }
  return n;
}

/// Splits into alphanumeric runs and punctuation runs; whitespace separates.
inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (is_space(c)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    if (is_alnum(c)) {
      bool has_letter = false;
      while (j < s.size() && is_alnum(static_cast<unsigned char>(s[j]))) {
        has_letter = has_letter || is_letter(static_cast<unsigned char>(s[j]));
        ++j;
      }
      tokens.push_back({std::string(s.substr(i, j - i)), has_letter ? TokenKind::kWord : TokenKind::kNumber});
    } else {
      while (j < s.size() && !is_space(static_cast<unsigned char>(s[j])) && !is_alnum(static_cast<unsigned char>(s[j]))) {
        ++j;
      }
      tokens.push_back({std::string(s.substr(i, j - i)), TokenKind::kPunct});
    }
    i = j;
  }
  return tokens;
}

/// Splits on runs of `.`, `!`, `?` and on newlines. Empty segments are dropped.
inline std::vector<std::string_view> split_sentences(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    const auto seg = s.substr(start, end - start);
    if (seg.find_first_not_of(" \t\r\n") != std::string_view::npos) out.push_back(seg);
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (is_sentence_end(c) || c == '\n') {
      std::size_t j = i;
      while (j + 1 < s.size() && is_sentence_end(static_cast<unsigned char>(s[j + 1]))) ++j;
      flush(j + 1);
      start = j + 1;
      i = j;
    }
  }
  if (start < s.size()) flush(s.size());
  return out;
}

class Lemmatizer {
 public:
  virtual ~Lemmatizer() = default;
  /// Input is a lowercase word token. Must be idempotent.
  virtual std::string lemma(std::string_view word) const = 0;
};

/// Exception table plus plural-suffix rules. Idempotent: every output is a
/// fixed point of the rules.
class RuleLemmatizer final : public Lemmatizer {
 public:
  RuleLemmatizer()
      : exceptions_{{"was", "be"},     {"were", "be"},       {"is", "be"},       {"are", "be"},    {"been", "be"},
                    {"am", "be"},      {"went", "go"},       {"gone", "go"},     {"ran", "run"},   {"children", "child"},
                    {"men", "man"},    {"women", "woman"},   {"people", "person"}, {"mice", "mouse"}, {"feet", "foot"},
                    {"teeth", "tooth"}, {"has", "have"},     {"had", "have"},    {"did", "do"},    {"does", "do"},
                    {"said", "say"},   {"made", "make"},     {"took", "take"},   {"saw", "see"},   {"better", "good"},
                    {"best", "good"},  {"worse", "bad"},     {"worst", "bad"}} {}

  std::string lemma(std::string_view word) const override {
    auto it = exceptions_.find(std::string(word));
    if (it != exceptions_.end()) return it->second;
    std::string w(word);
    if (w.size() <= 3) return w;
    auto ends_with = [&w](std::string_view suf) {
      return w.size() >= suf.size() && std::string_view(w).substr(w.size() - suf.size()) == suf;
    };
    if (ends_with("ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
    if (ends_with("sses")) return w.substr(0, w.size() - 2);
    if (ends_with("ss") || ends_with("us") || ends_with("is")) return w;
    if (ends_with("s")) return w.substr(0, w.size() - 1);
    return w;
  }

 private:
  std::unordered_map<std::string, std::string> exceptions_;
};

struct CleanTextStages {
  std::string raw;
  std::size_t n_urls = 0;
  std::string side_ready;                   // URLs removed, whitespace collapsed
  std::vector<std::string> lemmatized;      // all tokens, words lowercased and lemmatized
  std::vector<std::string> content_ready;   // words only, no numbers/punctuation/stop-words
  std::vector<std::size_t> sentence_ends;   // exclusive end offsets into content_ready
};

namespace detail {

inline bool starts_url(std::string_view s, std::size_t i) {
  auto at = [&](std::string_view p) { return s.substr(i, p.size()).size() == p.size() && to_lower_ascii(s.substr(i, p.size())) == p; };
  return at("http://") || at("https://") || at("www.");
}

}  // namespace detail

/// Counts and removes URLs (`http://`, `https://`, `www.` prefixes up to the
/// next whitespace), then collapses whitespace.
inline std::string strip_urls(std::string_view raw, std::size_t& n_urls) {
  std::string out;
  out.reserve(raw.size());
  n_urls = 0;
  std::size_t i = 0;
  while (i < raw.size()) {
    const bool token_start = i == 0 || is_space(static_cast<unsigned char>(raw[i - 1])) ||
                             raw[i - 1] == '(' || raw[i - 1] == '<' || raw[i - 1] == '[';
    if (token_start && detail::starts_url(raw, i)) {
      ++n_urls;
      while (i < raw.size() && !is_space(static_cast<unsigned char>(raw[i]))) ++i;
      continue;
    }
    out.push_back(raw[i]);
    ++i;
  }
  std::string collapsed;
  collapsed.reserve(out.size());
  bool pending_space = false;
  for (char ch : out) {
    if (is_space(static_cast<unsigned char>(ch))) {
      pending_space = !collapsed.empty();
      continue;
    }
    if (pending_space) collapsed.push_back(' ');
    pending_space = false;
    collapsed.push_back(ch);
  }
  return collapsed;
}

/// Staged cleaning: URL count/removal -> side text -> lemmatization ->
/// number/punctuation/stop-word removal. Stop-words are checked on both the
/// surface form and the lemma.
inline CleanTextStages preprocess(std::string_view raw, const WordSet& stopwords, const Lemmatizer& lemmatizer) {
  CleanTextStages st;
  st.raw = std::string(raw);
  st.side_ready = strip_urls(raw, st.n_urls);
  for (const auto sentence : split_sentences(st.side_ready)) {
    for (auto& tok : tokenize(sentence)) {
      if (tok.kind != TokenKind::kWord) {
        st.lemmatized.push_back(std::move(tok.text));
        continue;
      }
      const auto lower = to_lower_ascii(tok.text);
      auto lem = lemmatizer.lemma(lower);
      const bool has_digit = lem.find_first_of("0123456789") != std::string::npos;
      if (!has_digit && !stopwords.contains(lower) && !stopwords.contains(lem)) st.content_ready.push_back(lem);
      st.lemmatized.push_back(std::move(lem));
    }
    if (st.sentence_ends.empty() || st.sentence_ends.back() != st.content_ready.size()) {
      st.sentence_ends.push_back(st.content_ready.size());
    }
  }
  return st;
}

/// Views over the content sentences of a stage set.
inline std::vector<std::vector<std::string_view>> content_sentences(const CleanTextStages& st) {
  std::vector<std::vector<std::string_view>> out;
  std::size_t begin = 0;
  for (std::size_t end : st.sentence_ends) {
    if (end > begin) {
      std::vector<std::string_view> s;
      for (std::size_t i = begin; i < end; ++i) s.push_back(st.content_ready[i]);
      out.push_back(std::move(s));
    }
    begin = end;
  }
  return out;
}

}  // namespace wikistream::text
