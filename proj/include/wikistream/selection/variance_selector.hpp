// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "wikistream/core/error.hpp"
#include "wikistream/core/feature_vector.hpp"

namespace wikistream::selection {

/// Welford running moments. Variance is the population variance M2/count.
struct RunningMoments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void update(double x) {
    count += 1.0;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }

  double variance() const noexcept { return count > 0.0 ? std::max(0.0, m2 / count) : 0.0; }
};

/// Per-feature moments, indexed by FeatureId. New ids start fresh on first
/// sight; earlier samples are not back-filled with zeros.
class VarianceTracker {
 public:
  void update(const FeatureVector& v) {
    for (const auto& e : v) {
      if (e.id.index >= moments_.size()) moments_.resize(e.id.index + 1);
      moments_[e.id.index].update(e.value);
    }
  }

  double variance(FeatureId id) const {
    return id.index < moments_.size() ? moments_[id.index].variance() : 0.0;
  }

  bool observed(FeatureId id) const { return id.index < moments_.size() && moments_[id.index].count > 0.0; }

  const RunningMoments* moments(FeatureId id) const {
    return observed(id) ? &moments_[id.index] : nullptr;
  }

  std::size_t dimension() const noexcept { return moments_.size(); }

 private:
  std::vector<RunningMoments> moments_;
};

/// Nearest-rank percentile: the value at 1-based rank ceil(p/100 * n) of the
/// sorted sample.
inline double nearest_rank_percentile(std::vector<double> values, double p) {
  if (values.empty()) throw ValidationError("percentile of an empty set");
  if (!(p > 0.0 && p <= 100.0)) throw ValidationError("percentile must be in (0, 100]");
  std::sort(values.begin(), values.end());
  // Rounding guard so that e.g. 0.9 * 10 lands on rank 9, not 10.
  const double exact = p / 100.0 * static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(exact - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

/// 90th percentile (nearest rank) of the probe features' population
/// variances over the cold-start window. Probe ids never observed in the
/// window are skipped.
inline double calibrate_threshold(std::span<const FeatureVector> cold_start, std::span<const FeatureId> probe,
                                  double percentile = 90.0) {
  if (cold_start.empty()) throw ValidationError("empty cold start: cannot calibrate variance threshold");
  VarianceTracker tracker;
  for (const auto& v : cold_start) tracker.update(v);
  std::vector<double> variances;
  for (FeatureId id : probe) {
    if (tracker.observed(id)) variances.push_back(tracker.variance(id));
  }
  if (variances.empty()) throw ValidationError("no probe feature observed in the cold start");
  return nearest_rank_percentile(std::move(variances), percentile);
}

/// Variance-threshold selector with a threshold that is fixed once.
class VarianceSelector {
 public:
  VarianceSelector() = default;
  explicit VarianceSelector(double threshold) { set_threshold(threshold); }

  void set_threshold(double threshold) {
    if (threshold_) throw std::logic_error("variance threshold already calibrated");
    if (!(threshold >= 0.0)) throw ValidationError("variance threshold must be >= 0");
    threshold_ = threshold;
  }

  bool calibrated() const noexcept { return threshold_.has_value(); }
  double threshold() const {
    if (!threshold_) throw std::logic_error("variance threshold not calibrated");
    return *threshold_;
  }

  /// Updates the tracker with `v`, then keeps the features whose current
  /// variance is at or above the threshold.
  FeatureVector update_and_select(const FeatureVector& v) {
    const double t = threshold();
    tracker_.update(v);
    FeatureVector out;
    out.reserve(v.size());
    for (const auto& e : v) {
      if (tracker_.variance(e.id) >= t) out.push(e.id, e.value);
    }
    return out;
  }

  /// Selection without updating the tracker.
  FeatureVector select(const FeatureVector& v) const {
    const double t = threshold();
    FeatureVector out;
    for (const auto& e : v) {
      if (tracker_.variance(e.id) >= t) out.push(e.id, e.value);
    }
    return out;
  }

  const VarianceTracker& tracker() const noexcept { return tracker_; }

  /// `feature_id,name,variance,selected` rows for every tracked feature.
  void export_csv(std::ostream& out, const FeatureSpace& space) const {
    out << "feature_id,name,variance,selected\n";
    const double t = threshold_.value_or(0.0);
    for (std::uint32_t i = 0; i < tracker_.dimension(); ++i) {
      const FeatureId id{i};
      if (!tracker_.observed(id)) continue;
      const double var = tracker_.variance(id);
      std::string name = i < space.size() ? space.name(id) : std::string{};
      if (name.find_first_of(",\"") != std::string::npos) {
        std::string quoted = "\"";
        for (char c : name) {
          if (c == '"') quoted.push_back('"');
          quoted.push_back(c);
        }
        name = quoted + "\"";
      }
      out << i << ',' << name << ',' << var << ',' << (var >= t ? 1 : 0) << '\n';
    }
  }

 private:
  std::optional<double> threshold_;
  VarianceTracker tracker_;
};

}  // namespace wikistream::selection
