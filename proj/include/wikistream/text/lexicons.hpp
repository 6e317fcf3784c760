// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wikistream/core/error.hpp"

namespace wikistream::text {

using WordSet = std::unordered_set<std::string>;

enum class PosTag : std::uint8_t { kAdj, kAdv, kIntj, kNoun, kPron, kPunct, kVerb, kOther };

inline constexpr std::array<std::string_view, 7> kReportedPosNames = {"adj", "adv", "intj", "noun",
                                                                      "pron", "punct", "verb"};

enum class Emotion : std::uint8_t { kAnger, kFear, kHappiness, kSadness, kSurprise };

inline constexpr std::array<std::string_view, 5> kEmotionNames = {"anger", "fear", "happiness", "sadness",
                                                                  "surprise"};

inline constexpr std::size_t kEmbeddingDim = 300;

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find('\t', start);
    parts.push_back(trim(std::string_view(line).substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

inline std::ifstream open_or_throw(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError(std::string("cannot open ") + what + " file '" + path + "'");
  return in;
}

// Bundled defaults. Small, English-only, and meant as stand-ins for the
// pretrained analyzers a production deployment would plug in.
inline constexpr std::string_view kDefaultStopwords = R"(a about above after again against all am an and any are aren as at
be because been before being below between both but by can cannot could couldn did didn do does doesn doing don down during
each few for from further had hadn has hasn have haven having he her here hers herself him himself his how i if in into is isn
it its itself just ll me more most mustn my myself no nor not now o of off on once only or other our ours ourselves out over own
re s same shan she should shouldn so some such t than that the their theirs them themselves then there these they this those
through to too under until up ve very was wasn we were weren what when where which while who whom why will with won would
wouldn y you your yours yourself yourselves)";

// Common words of three or more syllables that readers do not find difficult.
inline constexpr std::string_view kDefaultEasyWords = R"(already animal another anybody anyone anything area banana beautiful
believe bicycle business camera company computer continue couldnt different everybody everyone everything family favorite
finally general government hamburger holiday however idea important interesting library media memory natural nobody
open piano potato radio really several seventeen seventy strawberry telephone television tomato tomorrow together
understand usually vacation video yesterday animals another's anywhere elephant umbrella)";

inline constexpr std::string_view kDefaultPosLexicon = R"(i	PRON
you	PRON
he	PRON
she	PRON
it	PRON
we	PRON
they	PRON
me	PRON
him	PRON
her	PRON
us	PRON
them	PRON
my	PRON
your	PRON
his	PRON
its	PRON
our	PRON
their	PRON
this	PRON
that	PRON
these	PRON
those	PRON
who	PRON
what	PRON
someone	PRON
everyone	PRON
nothing	PRON
something	PRON
oh	INTJ
wow	INTJ
hey	INTJ
hello	INTJ
ouch	INTJ
alas	INTJ
hooray	INTJ
oops	INTJ
yes	INTJ
no	INTJ
ah	INTJ
very	ADV
not	ADV
never	ADV
always	ADV
often	ADV
now	ADV
then	ADV
here	ADV
there	ADV
soon	ADV
too	ADV
also	ADV
still	ADV
just	ADV
again	ADV
almost	ADV
quite	ADV
rather	ADV
good	ADJ
bad	ADJ
new	ADJ
old	ADJ
great	ADJ
big	ADJ
small	ADJ
red	ADJ
blue	ADJ
green	ADJ
quick	ADJ
slow	ADJ
high	ADJ
low	ADJ
best	ADJ
worst	ADJ
true	ADJ
false	ADJ
fake	ADJ
real	ADJ
free	ADJ
secret	ADJ
huge	ADJ
nice	ADJ
beautiful	ADJ
famous	ADJ
local	ADJ
main	ADJ
is	VERB
are	VERB
was	VERB
were	VERB
be	VERB
been	VERB
am	VERB
has	VERB
have	VERB
had	VERB
do	VERB
does	VERB
did	VERB
go	VERB
goes	VERB
went	VERB
run	VERB
runs	VERB
ran	VERB
sat	VERB
sit	VERB
see	VERB
saw	VERB
say	VERB
says	VERB
said	VERB
make	VERB
made	VERB
get	VERB
got	VERB
take	VERB
took	VERB
visit	VERB
know	VERB
think	VERB
believe	VERB
want	VERB
click	VERB
buy	VERB
the	DET
a	DET
an	DET
and	CCONJ
or	CCONJ
but	CCONJ
of	ADP
in	ADP
on	ADP
at	ADP
to	ADP
for	ADP
with	ADP
from	ADP
by	ADP
)";

// term <TAB> emotion (or -) <TAB> polarity
inline constexpr std::string_view kDefaultAffectLexicon = R"(good	happiness	1.0
great	happiness	0.8
happy	happiness	0.8
love	happiness	0.5
wonderful	happiness	1.0
excellent	happiness	1.0
beautiful	happiness	0.85
nice	happiness	0.6
enjoy	happiness	0.4
best	happiness	1.0
joy	happiness	0.8
bad	sadness	-0.7
sad	sadness	-0.5
sorry	sadness	-0.5
lose	sadness	-0.4
loss	sadness	-0.4
cry	sadness	-0.5
tragic	sadness	-0.75
poor	sadness	-0.4
angry	anger	-0.5
hate	anger	-0.8
furious	anger	-1.0
outrage	anger	-0.7
corrupt	anger	-0.5
scandal	anger	-0.5
liar	anger	-0.8
stupid	anger	-0.8
attack	anger	-0.4
afraid	fear	-0.6
fear	fear	-0.5
danger	fear	-0.6
dangerous	fear	-0.6
threat	fear	-0.5
panic	fear	-0.6
risk	fear	-0.3
deadly	fear	-0.8
terrible	fear	-1.0
warning	fear	-0.3
shock	surprise	-0.3
shocking	surprise	-0.5
surprise	surprise	0.2
amazing	surprise	0.6
unbelievable	surprise	-0.2
incredible	surprise	0.9
sudden	surprise	0.0
secret	surprise	-0.2
miracle	surprise	0.5
true	-	0.35
false	-	-0.4
fake	-	-0.5
wrong	-	-0.5
right	-	0.3
worst	-	-1.0
)";

inline std::vector<std::string> split_words(std::string_view data) {
  std::vector<std::string> words;
  std::istringstream in{std::string(data)};
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

}  // namespace detail

inline WordSet parse_word_set(std::istream& in) {
  WordSet words;
  std::string line;
  while (std::getline(in, line)) {
    auto w = detail::trim(line);
    if (!w.empty() && w[0] != '#') words.insert(std::move(w));
  }
  return words;
}

/// One word per line; blank lines and `#` comments ignored.
inline WordSet load_word_set(const std::string& path) {
  auto in = detail::open_or_throw(path, "word list");
  return parse_word_set(in);
}

inline WordSet default_stopwords() {
  WordSet out;
  for (auto& w : detail::split_words(detail::kDefaultStopwords)) out.insert(std::move(w));
  return out;
}

inline WordSet default_easy_words() {
  WordSet out;
  for (auto& w : detail::split_words(detail::kDefaultEasyWords)) out.insert(std::move(w));
  return out;
}

inline std::optional<PosTag> parse_pos_tag(std::string_view tag) {
  if (tag == "ADJ") return PosTag::kAdj;
  if (tag == "ADV") return PosTag::kAdv;
  if (tag == "INTJ") return PosTag::kIntj;
  if (tag == "NOUN" || tag == "PROPN") return PosTag::kNoun;
  if (tag == "PRON") return PosTag::kPron;
  if (tag == "PUNCT") return PosTag::kPunct;
  if (tag == "VERB" || tag == "AUX") return PosTag::kVerb;
  if (!tag.empty()) return PosTag::kOther;
  return std::nullopt;
}

using PosLexicon = std::unordered_map<std::string, PosTag>;

/// `term<TAB>TAG` per line, universal POS tag names.
inline PosLexicon parse_pos_lexicon(std::istream& in) {
  PosLexicon lex;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (detail::trim(line).empty() || line[0] == '#') continue;
    const auto parts = detail::split_tabs(line);
    if (parts.size() < 2) throw ConfigurationError("POS lexicon line " + std::to_string(n) + ": expected term<TAB>tag");
    const auto tag = parse_pos_tag(parts[1]);
    if (!tag) throw ConfigurationError("POS lexicon line " + std::to_string(n) + ": empty tag");
    lex[parts[0]] = *tag;
  }
  return lex;
}

inline PosLexicon load_pos_lexicon(const std::string& path) {
  auto in = detail::open_or_throw(path, "POS lexicon");
  return parse_pos_lexicon(in);
}

inline PosLexicon default_pos_lexicon() {
  std::istringstream in{std::string(detail::kDefaultPosLexicon)};
  return parse_pos_lexicon(in);
}

struct AffectEntry {
  std::optional<Emotion> emotion;
  std::optional<double> polarity;
};

using AffectLexicon = std::unordered_map<std::string, AffectEntry>;

inline std::optional<Emotion> parse_emotion(std::string_view name) {
  for (std::size_t i = 0; i < kEmotionNames.size(); ++i) {
    if (kEmotionNames[i] == name) return static_cast<Emotion>(i);
  }
  return std::nullopt;
}

/// `term<TAB>emotion|-<TAB>polarity` per line. Either column may be `-`.
inline AffectLexicon parse_affect_lexicon(std::istream& in) {
  AffectLexicon lex;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (detail::trim(line).empty() || line[0] == '#') continue;
    const auto parts = detail::split_tabs(line);
    if (parts.size() < 2) {
      throw ConfigurationError("affect lexicon line " + std::to_string(n) + ": expected term<TAB>emotion<TAB>polarity");
    }
    AffectEntry entry;
    if (parts[1] != "-") {
      entry.emotion = parse_emotion(parts[1]);
      if (!entry.emotion) {
        throw ConfigurationError("affect lexicon line " + std::to_string(n) + ": unknown emotion '" + parts[1] + "'");
      }
    }
    if (parts.size() >= 3 && parts[2] != "-" && !parts[2].empty()) {
      try {
        entry.polarity = std::stod(parts[2]);
      } catch (const std::exception&) {
        throw ConfigurationError("affect lexicon line " + std::to_string(n) + ": bad polarity '" + parts[2] + "'");
      }
    }
    lex[parts[0]] = entry;
  }
  return lex;
}

inline AffectLexicon load_affect_lexicon(const std::string& path) {
  auto in = detail::open_or_throw(path, "affect lexicon");
  return parse_affect_lexicon(in);
}

inline AffectLexicon default_affect_lexicon() {
  std::istringstream in{std::string(detail::kDefaultAffectLexicon)};
  return parse_affect_lexicon(in);
}

/// word -> 300-dimensional vector.
class WordVectorTable {
 public:
  void add(std::string word, std::vector<double> vec) {
    if (vec.size() != kEmbeddingDim) {
      throw ConfigurationError("word vector for '" + word + "' has dimension " + std::to_string(vec.size()) +
                               ", expected " + std::to_string(kEmbeddingDim));
    }
    table_[std::move(word)] = std::move(vec);
  }

  const std::vector<double>* find(const std::string& word) const {
    auto it = table_.find(word);
    return it == table_.end() ? nullptr : &it->second;
  }

  std::size_t size() const noexcept { return table_.size(); }
  bool empty() const noexcept { return table_.empty(); }

 private:
  std::unordered_map<std::string, std::vector<double>> table_;
};

/// `word v1 ... v300` space-separated per line.
inline WordVectorTable parse_word_vectors(std::istream& in) {
  WordVectorTable table;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    std::vector<double> vec;
    vec.reserve(kEmbeddingDim);
    double v = 0.0;
    while (ls >> v) vec.push_back(v);
    table.add(std::move(word), std::move(vec));
  }
  return table;
}

inline WordVectorTable load_word_vectors(const std::string& path) {
  auto in = detail::open_or_throw(path, "word vector");
  return parse_word_vectors(in);
}

}  // namespace wikistream::text
