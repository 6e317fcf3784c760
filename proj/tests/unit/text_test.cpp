// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "wikistream/text/content_features.hpp"
#include "wikistream/text/lexicons.hpp"
#include "wikistream/text/ngram.hpp"
#include "wikistream/text/preprocess.hpp"
#include "wikistream/text/side_features.hpp"

using namespace wikistream;
using namespace wikistream::text;

namespace {

CleanTextStages prep(std::string_view s, const WordSet& stop = default_stopwords()) {
  static const RuleLemmatizer lem;
  return preprocess(s, stop, lem);
}

bool has(const std::vector<std::string>& v, std::string_view s) { return std::find(v.begin(), v.end(), s) != v.end(); }

}  // namespace

TEST(Preprocess, StripsUrls) {
  auto st = prep("Visit https://x.io now!!");
  EXPECT_EQ(st.n_urls, 1u);
  EXPECT_EQ(st.side_ready, "Visit now!!");
}

TEST(Preprocess, EmptyText) {
  auto st = prep("");
  EXPECT_EQ(st.n_urls, 0u);
  EXPECT_TRUE(st.side_ready.empty());
  EXPECT_TRUE(st.lemmatized.empty());
  EXPECT_TRUE(st.content_ready.empty());
  auto c = side_counts(st, default_easy_words());
  EXPECT_EQ(c.n_chars + c.n_words + c.n_difficult_words + c.n_urls, 0u);
}

TEST(Preprocess, ContentDropsStopwordsNumbersPunctuation) {
  auto st = prep("The cats 12 ran.");
  EXPECT_FALSE(has(st.content_ready, "the"));
  EXPECT_FALSE(has(st.content_ready, "12"));
  EXPECT_FALSE(has(st.content_ready, "."));
  EXPECT_TRUE(has(st.content_ready, "cat"));
  EXPECT_TRUE(has(st.content_ready, "run"));
  EXPECT_EQ(st.content_ready.size(), 2u);
}

TEST(SideFeatures, CharsAndWords) {
  auto c = side_counts(prep("cat sat"), default_easy_words());
  EXPECT_EQ(c.n_chars, 7u);
  EXPECT_EQ(c.n_words, 2u);
}

TEST(SideFeatures, DifficultWordBySyllables) {
  EXPECT_EQ(count_syllables("encyclopedia"), 5u);
  EXPECT_EQ(side_counts(prep("encyclopedia"), default_easy_words()).n_difficult_words, 1u);
  EXPECT_EQ(side_counts(prep("cat"), default_easy_words()).n_difficult_words, 0u);
}

TEST(SideFeatures, LexiconAdjRatio) {
  LexiconTagger tagger(PosLexicon{{"red", PosTag::kAdj}});
  auto r = pos_ratios(prep("red red red"), tagger);
  EXPECT_DOUBLE_EQ(r[static_cast<std::size_t>(PosTag::kAdj)], 1.0);
  auto empty = pos_ratios(prep(""), tagger);
  for (double x : empty) EXPECT_EQ(x, 0.0);
}

TEST(SideFeatures, RatiosSumAtMostOne) {
  LexiconTagger tagger;
  auto r = pos_ratios(prep("the quick fox runs"), tagger);
  double sum = 0.0;
  for (double x : r) sum += x;
  EXPECT_LE(sum, 1.0 + 1e-12);
}

TEST(Readability, CatOnTheMat) {
  auto r = readability(prep("The cat sat on the mat."));
  const double words = 6, sentences = 1, syllables = 6, mini = 6;
  EXPECT_NEAR(r.flesch, 206.835 - 1.015 * (words / sentences) - 84.6 * (syllables / words), 1e-9);
  EXPECT_NEAR(r.flesch, 116.145, 1e-9);
  EXPECT_NEAR(r.mcalpine_eflaw, (words + mini) / sentences, 1e-12);
  EXPECT_NEAR(r.mcalpine_eflaw, 12.0, 1e-12);
}

TEST(Readability, EmptyIsZero) {
  auto r = readability(prep(""));
  EXPECT_EQ(r.reading_time, 0.0);
  EXPECT_EQ(r.flesch, 0.0);
  EXPECT_EQ(r.mcalpine_eflaw, 0.0);
}

TEST(Affect, SingleFearTerm) {
  AffectLexicon lex{{"ghost", AffectEntry{Emotion::kFear, std::nullopt}}};
  auto a = affect(prep("ghost"), lex);
  EXPECT_EQ(a.emotion[static_cast<std::size_t>(Emotion::kFear)], 1.0);
  EXPECT_EQ(a.emotion[0] + a.emotion[2] + a.emotion[3] + a.emotion[4], 0.0);
}

TEST(Affect, NoTermsMeansNeutral) {
  auto a = affect(prep("table chair"), AffectLexicon{});
  for (double e : a.emotion) EXPECT_EQ(e, 0.0);
  EXPECT_EQ(a.polarity, 0.0);
}

TEST(Affect, PolarityIsMean) {
  AffectLexicon lex{{"good", AffectEntry{std::nullopt, 1.0}}, {"bad", AffectEntry{std::nullopt, -1.0}}};
  auto a = affect(prep("good good bad"), lex);
  EXPECT_NEAR(a.polarity, (1.0 + 1.0 - 1.0) / 3.0, 1e-12);
}

TEST(Embedding, MeanOfVectors) {
  WordVectorTable t;
  std::vector<double> v1(kEmbeddingDim), v2(kEmbeddingDim);
  for (std::size_t i = 0; i < kEmbeddingDim; ++i) {
    v1[i] = static_cast<double>(i);
    v2[i] = 1.0 - static_cast<double>(i) * 0.5;
  }
  t.add("cat", v1);
  t.add("dog", v2);
  EXPECT_EQ(embed_average(prep("cat"), t), v1);
  auto m = embed_average(prep("cat dog"), t);
  for (std::size_t i = 0; i < kEmbeddingDim; ++i) EXPECT_DOUBLE_EQ(m[i], (v1[i] + v2[i]) / 2.0);
  auto z = embed_average(prep("zebra"), t);
  for (double x : z) EXPECT_EQ(x, 0.0);
}

TEST(NGram, CapIsMedianOfDistinctCounts) {
  const WordSet none;
  std::vector<CleanTextStages> cold = {prep("aa bb.", none), prep("aa bb cc dd.", none),
                                       prep("aa bb cc dd ee ff gg hh.", none)};
  NGramExtractor ex;
  EXPECT_EQ(calibrate_ngram_cap(cold, ex), 4u);
}

TEST(NGram, ConstantDistinctCount) {
  const WordSet none;
  std::vector<CleanTextStages> cold = {prep("q w e r t y.", none), prep("a s d f g h. z x c v b n.", none)};
  EXPECT_EQ(calibrate_ngram_cap(cold, NGramExtractor{}), 6u);
}

TEST(NGram, EmptyColdStartThrows) {
  std::vector<CleanTextStages> cold = {prep("")};
  EXPECT_THROW(calibrate_ngram_cap(cold, NGramExtractor{}), ValidationError);
}

TEST(NGram, CountsWithinCap) {
  const WordSet none;
  NGramExtractor ex;
  ex.set_cap(4);
  EXPECT_EQ(ex.extract(prep("aa aa bb", none)), (NGramCounts{{"aa", 2}, {"bb", 1}}));
  NGramExtractor one;
  one.set_cap(1);
  EXPECT_EQ(one.extract(prep("xx yy yy", none)), (NGramCounts{{"yy", 2}}));
}

TEST(NGram, VocabularyAccumulates) {
  const WordSet none;
  NGramExtractor ex;
  ex.set_cap(4);
  auto first = ex.extract(prep("aa aa bb", none));
  ex.extract(prep("aa aa bb", none));
  for (const auto& [term, count] : first) EXPECT_EQ(ex.vocabulary().at(term), 2 * count);
}

TEST(NGram, Bigrams) {
  const WordSet none;
  NGramExtractor ex(2);
  ex.set_cap(10);
  EXPECT_EQ(ex.extract(prep("xx yy zz", none)), (NGramCounts{{"xx_yy", 1}, {"yy_zz", 1}}));
}

TEST(Lexicons, ParseAffectLexicon) {
  std::istringstream in("good\thappiness\t1.0\n");
  auto lex = parse_affect_lexicon(in);
  ASSERT_TRUE(lex.count("good"));
}
