// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wikistream/core/error.hpp"
#include "wikistream/text/preprocess.hpp"

namespace wikistream::text {

/// Sparse term -> count, ordered by term.
using NGramCounts = std::map<std::string, std::size_t>;

/// Online word n-gram counter with a per-sentence cap on retained terms.
/// The vocabulary (accumulated counts) only grows.
class NGramExtractor {
 public:
  explicit NGramExtractor(std::size_t n = 1) : n_(n) {
    if (n_ == 0) throw ConfigurationError("n-gram size must be >= 1");
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t cap() const noexcept { return cap_; }
  bool calibrated() const noexcept { return cap_ > 0; }

  void set_cap(std::size_t cap) {
    if (cap == 0) throw ConfigurationError("n-gram cap must be >= 1");
    cap_ = cap;
  }

  /// Grams of one sentence, joined with `_` when n > 1.
  std::vector<std::string> grams(std::span<const std::string_view> sentence) const {
    std::vector<std::string> out;
    if (sentence.size() < n_) return out;
    for (std::size_t i = 0; i + n_ <= sentence.size(); ++i) {
      std::string g(sentence[i]);
      for (std::size_t k = 1; k < n_; ++k) {
        g.push_back('_');
        g.append(sentence[i + k]);
      }
      out.push_back(std::move(g));
    }
    return out;
  }

  /// Per sentence keeps the `cap` most frequent grams (ties: lexicographic),
  /// sums them into the event's counts and folds those into the vocabulary.
  NGramCounts extract(const CleanTextStages& st) {
    if (!calibrated()) throw std::logic_error("n-gram cap not calibrated");
    NGramCounts event;
    for (const auto& sentence : content_sentences(st)) {
      std::unordered_map<std::string, std::size_t> freq;
      for (auto& g : grams(sentence)) ++freq[std::move(g)];
      std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
      std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
      });
      if (ranked.size() > cap_) ranked.resize(cap_);
      for (auto& [term, count] : ranked) event[term] += count;
    }
    for (const auto& [term, count] : event) vocabulary_[term] += count;
    return event;
  }

  const std::unordered_map<std::string, std::size_t>& vocabulary() const noexcept { return vocabulary_; }

 private:
  std::size_t n_;
  std::size_t cap_ = 0;
  std::unordered_map<std::string, std::size_t> vocabulary_;
};

/// Median (rounded half-up) of per-sentence distinct-gram counts across the
/// cold-start texts. Sentences with no grams are ignored.
inline std::size_t calibrate_ngram_cap(std::span<const CleanTextStages> cold_start, const NGramExtractor& extractor) {
  std::vector<std::size_t> distinct;
  for (const auto& st : cold_start) {
    for (const auto& sentence : content_sentences(st)) {
      auto g = extractor.grams(sentence);
      std::sort(g.begin(), g.end());
      const auto n = static_cast<std::size_t>(std::unique(g.begin(), g.end()) - g.begin());
      if (n > 0) distinct.push_back(n);
    }
  }
  if (distinct.empty()) throw ValidationError("empty cold start: no sentences to calibrate the n-gram cap");
  std::sort(distinct.begin(), distinct.end());
  const std::size_t m = distinct.size();
  if (m % 2 == 1) return std::max<std::size_t>(1, distinct[m / 2]);
  const std::size_t sum = distinct[m / 2 - 1] + distinct[m / 2];
  return std::max<std::size_t>(1, (sum + 1) / 2);
}

}  // namespace wikistream::text
