// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wikistream/core/feature_vector.hpp"
#include "wikistream/history/entity_history.hpp"
#include "wikistream/ingest/event.hpp"
#include "wikistream/text/content_features.hpp"
#include "wikistream/text/lexicons.hpp"
#include "wikistream/text/ngram.hpp"
#include "wikistream/text/preprocess.hpp"
#include "wikistream/text/side_features.hpp"

namespace wikistream::pipeline {

/// Lexical resources used by text featurization. Defaults are the bundled
/// lists; an empty vector table yields zero embeddings.
struct TextResources {
  text::WordSet stopwords = text::default_stopwords();
  text::WordSet easy_words = text::default_easy_words();
  text::PosLexicon pos_lexicon = text::default_pos_lexicon();
  text::AffectLexicon affect_lexicon = text::default_affect_lexicon();
  text::WordVectorTable vectors;
  std::size_t ngram_n = 1;
};

/// Every base feature (1-19) of one event.
struct BaseFeatures {
  text::SideCounts counts;
  text::PosRatios pos{};
  text::Readability readability;
  text::Affect affect;
  std::vector<double> embedding;
  text::NGramCounts ngrams;
  bool bot = false;
  bool deleted = false;
  bool is_new = false;
  bool revert = false;
  double size_diff = 0.0;
  std::optional<ArticleQuality> article_quality;
  std::optional<EditQuality> edit_quality;
  std::optional<ReviewQuality> review_quality;
};

/// Scalar reduction of the base features kept in entity histories.
inline history::Channels to_channels(const BaseFeatures& b) {
  history::Channels c{};
  c[0] = static_cast<double>(b.counts.n_chars);
  c[1] = b.pos[0] + b.pos[1] + b.pos[3] + b.pos[6];
  c[2] = b.readability.reading_time;
  c[3] = b.readability.flesch;
  c[4] = b.readability.mcalpine_eflaw;
  c[5] = *std::max_element(b.affect.emotion.begin(), b.affect.emotion.end());
  c[6] = b.affect.polarity;
  double sq = 0.0;
  for (double v : b.embedding) sq += v * v;
  c[7] = std::sqrt(sq);
  c[8] = static_cast<double>(b.ngrams.size());
  c[9] = b.bot ? 1.0 : 0.0;
  c[10] = b.deleted ? 1.0 : 0.0;
  c[11] = b.is_new ? 1.0 : 0.0;
  c[12] = b.revert ? 1.0 : 0.0;
  c[13] = b.size_diff;
  if (b.article_quality) {
    c[14] = (*b.article_quality)[6];  // wp10stub
    c[17] = (*b.article_quality)[3];  // wp10fa
  }
  if (b.edit_quality) {
    c[15] = (*b.edit_quality)[1];  // damaging_true
    c[18] = (*b.edit_quality)[3];  // goodfaith_true
  }
  if (b.review_quality) {
    double grade = 0.0;
    for (std::size_t i = 0; i < 5; ++i) grade += (*b.review_quality)[i] * static_cast<double>(i) / 4.0;
    c[16] = grade;
  }
  return c;
}

/// Turns events into named sparse vectors. Fixed feature names are interned
/// at construction so their ids are stable; n-gram terms (`ng:<term>`) are
/// appended as they appear.
class Featurizer {
 public:
  explicit Featurizer(TextResources resources = {})
      : res_(std::move(resources)),
        lemmatizer_(std::make_unique<text::RuleLemmatizer>()),
        tagger_(std::make_unique<text::LexiconTagger>(res_.pos_lexicon)),
        ngrams_(res_.ngram_n) {
    intern_fixed();
  }

  FeatureSpace& space() noexcept { return space_; }
  const FeatureSpace& space() const noexcept { return space_; }
  const text::NGramExtractor& ngrams() const noexcept { return ngrams_; }

  text::CleanTextStages stages(const WikiEvent& ev) const {
    return text::preprocess(ev.content, res_.stopwords, *lemmatizer_);
  }

  /// Fixes the n-gram cap from cold-start texts.
  void calibrate(std::span<const WikiEvent> cold_start) {
    std::vector<text::CleanTextStages> st;
    st.reserve(cold_start.size());
    for (const auto& ev : cold_start) st.push_back(stages(ev));
    set_ngram_cap(text::calibrate_ngram_cap(st, ngrams_));
  }

  void set_ngram_cap(std::size_t cap) { ngrams_.set_cap(cap); }

  /// Base features; folds the event's n-grams into the vocabulary.
  BaseFeatures base(const WikiEvent& ev) {
    const auto st = stages(ev);
    BaseFeatures b;
    b.counts = text::side_counts(st, res_.easy_words);
    b.pos = text::pos_ratios(st, *tagger_);
    b.readability = text::readability(st);
    b.affect = text::affect(st, res_.affect_lexicon);
    b.embedding = text::embed_average(st, res_.vectors);
    b.ngrams = ngrams_.extract(st);
    b.bot = ev.bot_flag;
    b.deleted = ev.deleted_flag;
    b.is_new = ev.new_flag;
    b.revert = ev.revert_flag;
    b.size_diff = static_cast<double>(ev.size_diff);
    b.article_quality = ev.article_quality;
    b.edit_quality = ev.edit_quality;
    b.review_quality = ev.review_quality;
    return b;
  }

  /// Full vector: base features followed by the 80 historical values.
  FeatureVector vectorize(const BaseFeatures& b, const history::HistoricalSnapshot& h) {
    FeatureVector v;
    v.reserve(fixed_.size() + b.ngrams.size());
    std::size_t k = 0;
    auto put = [&](double x) { v.set(fixed_[k++], x); };
    put(static_cast<double>(b.counts.n_chars));
    put(static_cast<double>(b.counts.n_words));
    put(static_cast<double>(b.counts.n_difficult_words));
    put(static_cast<double>(b.counts.n_urls));
    for (double r : b.pos) put(r);
    put(b.readability.reading_time);
    put(b.readability.flesch);
    put(b.readability.mcalpine_eflaw);
    for (double e : b.affect.emotion) put(e);
    put(b.affect.polarity);
    for (std::size_t i = 0; i < text::kEmbeddingDim; ++i) put(i < b.embedding.size() ? b.embedding[i] : 0.0);
    put(b.bot ? 1.0 : 0.0);
    put(b.deleted ? 1.0 : 0.0);
    put(b.is_new ? 1.0 : 0.0);
    put(b.revert ? 1.0 : 0.0);
    put(b.size_diff);
    put_optional(v, k, b.article_quality);
    put_optional(v, k, b.edit_quality);
    put_optional(v, k, b.review_quality);
    put(h.user.post_count);
    put(h.user.spam_tendency);
    put(h.user.antiquity_weeks);
    put(h.user.frequency_per_week);
    for (double x : h.user_avg) put(x);
    for (double x : h.user_max) put(x);
    for (double x : h.page_avg) put(x);
    for (double x : h.page_max) put(x);
    for (const auto& [term, count] : b.ngrams) v.set(space_.intern("ng:" + term), static_cast<double>(count));
    return v;
  }

  /// Ids of the quality-score components, the variance calibration probe.
  std::vector<FeatureId> quality_ids() const {
    std::vector<FeatureId> out;
    for (const auto& name : fixed_names()) {
      if (name.rfind("aq_", 0) == 0 || name.rfind("eq_", 0) == 0 || name.rfind("rq_", 0) == 0) {
        out.push_back(*space_.find(name));
      }
    }
    return out;
  }

  /// Base feature (1-19) a vector component belongs to, or nullopt for the
  /// historical features.
  std::optional<std::size_t> base_feature_of(FeatureId id) const {
    if (id.index >= space_.size()) return std::nullopt;
    if (id.index >= fixed_.size()) return 9;  // n-gram term
    return base_of_fixed_[id.index];
  }

  /// The names interned at construction, in id order.
  static std::vector<std::string> fixed_names() {
    std::vector<std::string> n = {"n_chars", "n_words", "n_difficult_words", "n_urls"};
    for (auto p : text::kReportedPosNames) n.push_back("pos_" + std::string(p));
    n.insert(n.end(), {"reading_time", "flesch", "mcalpine_eflaw"});
    for (auto e : text::kEmotionNames) n.push_back("emo_" + std::string(e));
    n.push_back("polarity");
    for (std::size_t i = 0; i < text::kEmbeddingDim; ++i) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "emb_%03zu", i);
      n.emplace_back(buf);
    }
    n.insert(n.end(), {"bot", "deleted", "new", "revert", "size_diff"});
    for (auto k : kArticleQualityKeys) n.push_back("aq_" + std::string(k));
    for (auto k : kEditQualityKeys) n.push_back("eq_" + std::string(k));
    for (auto k : kReviewQualityKeys) n.push_back("rq_" + std::string(k));
    n.insert(n.end(), {"user_post_count", "user_spam_tendency", "user_posting_antiquity_weeks",
                       "user_posting_frequency"});
    for (const char* scope : {"user_avg_", "user_max_", "page_avg_", "page_max_"}) {
      for (auto c : history::kChannelNames) n.push_back(scope + std::string(c));
    }
    return n;
  }

 private:
  template <std::size_t N>
  void put_optional(FeatureVector& v, std::size_t& k, const std::optional<std::array<double, N>>& q) {
    if (q) {
      for (std::size_t i = 0; i < N; ++i) v.set(fixed_[k + i], (*q)[i]);
    }
    k += N;
  }

  void intern_fixed() {
    // Base feature number of each fixed name; 0 marks historical features.
    const std::array<std::pair<std::size_t, std::size_t>, 21> groups = {{
        {1, 4}, {2, 7}, {3, 1}, {4, 1}, {5, 1}, {6, 5}, {7, 1}, {8, text::kEmbeddingDim},
        {10, 1}, {11, 1}, {12, 1}, {13, 1}, {14, 1}, {15, 7}, {16, 4}, {17, 5},
        {0, 4}, {0, history::kChannelCount}, {0, history::kChannelCount}, {0, history::kChannelCount},
        {0, history::kChannelCount},
    }};
    for (const auto& name : fixed_names()) fixed_.push_back(space_.intern(name));
    for (const auto& [base, count] : groups) {
      for (std::size_t i = 0; i < count; ++i) {
        base_of_fixed_.push_back(base == 0 ? std::nullopt : std::optional<std::size_t>(base));
      }
    }
  }

  TextResources res_;
  std::unique_ptr<text::Lemmatizer> lemmatizer_;
  std::unique_ptr<text::PosTagger> tagger_;
  text::NGramExtractor ngrams_;
  FeatureSpace space_;
  std::vector<FeatureId> fixed_;
  std::vector<std::optional<std::size_t>> base_of_fixed_;
};

}  // namespace wikistream::pipeline
