// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string_view>
#include <vector>

#include "wikistream/core/error.hpp"
#include "wikistream/history/entity_history.hpp"

namespace wikistream::explain {

enum class QuartileColor : std::uint8_t { kNone, kGreen, kYellow, kRed };

inline std::string_view color_name(QuartileColor c) noexcept {
  switch (c) {
    case QuartileColor::kGreen:
      return "green";
    case QuartileColor::kYellow:
      return "yellow";
    case QuartileColor::kRed:
      return "red";
    case QuartileColor::kNone:
      break;
  }
  return "none";
}

struct Quartiles {
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;
};

/// Red above Q3, yellow above Q2, green above Q1, otherwise uncolored.
inline QuartileColor quartile_color(double value, const Quartiles& q) noexcept {
  if (value > q.q3) return QuartileColor::kRed;
  if (value > q.q2) return QuartileColor::kYellow;
  if (value > q.q1) return QuartileColor::kGreen;
  return QuartileColor::kNone;
}

/// Linear interpolation between closest ranks: position p (n - 1).
inline double interpolated_quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw ValidationError("quantile of an empty population");
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

/// Source of population quartiles for one scalar feature.
class QuantileEstimator {
 public:
  virtual ~QuantileEstimator() = default;
  virtual void add(double x) = 0;
  virtual std::size_t count() const = 0;
  virtual Quartiles quartiles() const = 0;
};

/// Exact estimator over the full retained history.
class ExactQuantiles final : public QuantileEstimator {
 public:
  void add(double x) override { values_.push_back(x); }
  std::size_t count() const override { return values_.size(); }
  Quartiles quartiles() const override {
    sort_pending();
    return {interpolated_quantile(values_, 0.25), interpolated_quantile(values_, 0.5),
            interpolated_quantile(values_, 0.75)};
  }

 private:
  // Values past `sorted_` were appended since the last query.
  void sort_pending() const {
    if (sorted_ == values_.size()) return;
    const auto mid = values_.begin() + static_cast<std::ptrdiff_t>(sorted_);
    std::sort(mid, values_.end());
    std::inplace_merge(values_.begin(), mid, values_.end());
    sorted_ = values_.size();
  }

  mutable std::vector<double> values_;
  mutable std::size_t sorted_ = 0;
};

/// Population history for the 19 base features. An empty population colors
/// nothing.
class PopulationStore {
 public:
  void add(const history::Channels& c) {
    for (std::size_t i = 0; i < history::kChannelCount; ++i) channels_[i].add(c[i]);
  }

  std::size_t count() const { return channels_[0].count(); }

  QuartileColor color(std::size_t channel, double value) const {
    const auto& est = channels_.at(channel);
    if (est.count() == 0) return QuartileColor::kNone;
    return quartile_color(value, est.quartiles());
  }

  Quartiles quartiles(std::size_t channel) const { return channels_.at(channel).quartiles(); }

 private:
  std::array<ExactQuantiles, history::kChannelCount> channels_;
};

}  // namespace wikistream::explain
