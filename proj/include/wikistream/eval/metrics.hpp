// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>

#include <json.hpp>

#include "wikistream/core/feature_vector.hpp"

namespace wikistream::eval {

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct MetricsSnapshot {
  std::size_t sample_index = 0;
  double accuracy = 0.0;
  std::array<ClassMetrics, 2> per_class{};
  ClassMetrics macro;
  ClassMetrics micro;
  double seconds = 0.0;
};

/// Zero denominators give 0.
inline double safe_ratio(double num, double den) noexcept { return den > 0.0 ? num / den : 0.0; }

inline double f1_score(double p, double r) noexcept { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

/// Confusion counts indexed [truth][predicted].
class MetricsAccumulator {
 public:
  void add(Label truth, Label predicted) {
    ++counts_[static_cast<std::size_t>(to_int(truth))][static_cast<std::size_t>(to_int(predicted))];
    ++n_;
  }

  std::size_t count() const noexcept { return n_; }
  std::size_t cell(Label truth, Label predicted) const {
    return counts_[static_cast<std::size_t>(to_int(truth))][static_cast<std::size_t>(to_int(predicted))];
  }

  MetricsSnapshot snapshot(double seconds = 0.0) const {
    MetricsSnapshot s;
    s.sample_index = n_;
    s.seconds = seconds;
    const double n = static_cast<double>(n_);
    const double correct = static_cast<double>(counts_[0][0] + counts_[1][1]);
    s.accuracy = safe_ratio(correct, n);
    for (std::size_t c = 0; c < 2; ++c) {
      const double hit = static_cast<double>(counts_[c][c]);
      const double predicted = static_cast<double>(counts_[0][c] + counts_[1][c]);
      const double actual = static_cast<double>(counts_[c][0] + counts_[c][1]);
      auto& m = s.per_class[c];
      m.precision = safe_ratio(hit, predicted);
      m.recall = safe_ratio(hit, actual);
      m.f1 = f1_score(m.precision, m.recall);
    }
    s.macro.precision = (s.per_class[0].precision + s.per_class[1].precision) / 2.0;
    s.macro.recall = (s.per_class[0].recall + s.per_class[1].recall) / 2.0;
    s.macro.f1 = (s.per_class[0].f1 + s.per_class[1].f1) / 2.0;
    // Pooled over both classes every error is one FP and one FN.
    s.micro.precision = s.accuracy;
    s.micro.recall = s.accuracy;
    s.micro.f1 = s.accuracy;
    return s;
  }

 private:
  std::array<std::array<std::size_t, 2>, 2> counts_{};
  std::size_t n_ = 0;
};

inline nlohmann::json to_json(const ClassMetrics& m) {
  return {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
}

inline nlohmann::json to_json(const MetricsSnapshot& s) {
  return {{"sample_index", s.sample_index},
          {"accuracy", s.accuracy},
          {"class_0", to_json(s.per_class[0])},
          {"class_1", to_json(s.per_class[1])},
          {"macro", to_json(s.macro)},
          {"micro", to_json(s.micro)},
          {"seconds", s.seconds}};
}

}  // namespace wikistream::eval
