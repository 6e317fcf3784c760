// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace wikistream::model {

/// Pluggable drift detector over a stream of reals (here 0/1 errors).
class DriftDetector {
 public:
  virtual ~DriftDetector() = default;
  /// Returns true when a change is detected at this update.
  virtual bool update(double value) = 0;
  virtual double estimation() const = 0;
  virtual std::size_t width() const = 0;
};

/// Adaptive windowing (ADWIN2) with an exponential histogram of buckets.
/// Row i holds buckets summarizing 2^i values; newest buckets are at the
/// front of each row. Cut checks run every `clock` updates.
class Adwin final : public DriftDetector {
 public:
  explicit Adwin(double delta = 0.002, std::size_t clock = 32, std::size_t max_buckets = 5,
                 std::size_t min_window_length = 10, std::size_t min_sub_window = 5)
      : delta_(delta),
        clock_(clock),
        max_buckets_(max_buckets),
        min_window_length_(min_window_length),
        min_sub_window_(min_sub_window) {}

  bool update(double value) override {
    insert(value);
    ++ticks_;
    if (ticks_ % clock_ != 0 || width_ <= min_window_length_) return false;
    bool changed = false;
    bool reduce = true;
    while (reduce) {
      reduce = false;
      double n0 = 0.0;
      double n1 = static_cast<double>(width_);
      double u0 = 0.0;
      double u1 = total_;
      bool stop = false;
      // Oldest to newest.
      for (std::size_t r = rows_.size(); r-- > 0 && !stop;) {
        const auto& row = rows_[r];
        const double size = static_cast<double>(std::size_t{1} << r);
        for (std::size_t b = row.size(); b-- > 0;) {
          if (r == 0 && b == 0) {
            stop = true;
            break;
          }
          n0 += size;
          n1 -= size;
          u0 += row[b].total;
          u1 -= row[b].total;
          if (n1 > static_cast<double>(min_sub_window_) && n0 > static_cast<double>(min_sub_window_) &&
              cut(n0, n1, u0, u1)) {
            reduce = true;
            changed = true;
            if (width_ > 0) delete_oldest();
            stop = true;
            break;
          }
        }
      }
    }
    return changed;
  }

  double estimation() const override { return width_ > 0 ? total_ / static_cast<double>(width_) : 0.0; }
  std::size_t width() const override { return width_; }
  double variance() const noexcept { return width_ > 0 ? variance_ / static_cast<double>(width_) : 0.0; }
  double total() const noexcept { return total_; }

  std::size_t bucket_count() const noexcept {
    std::size_t n = 0;
    for (const auto& row : rows_) n += row.size();
    return n;
  }

 private:
  struct Bucket {
    double total = 0.0;
    double variance = 0.0;
  };

  void insert(double value) {
    ++width_;
    if (rows_.empty()) rows_.emplace_back();
    rows_[0].insert(rows_[0].begin(), Bucket{value, 0.0});
    if (width_ > 1) {
      const double w = static_cast<double>(width_);
      const double d = value - total_ / (w - 1.0);
      variance_ += (w - 1.0) * d * d / w;
    }
    total_ += value;
    compress();
  }

  void compress() {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].size() <= max_buckets_) break;
      auto& row = rows_[r];
      const Bucket b2 = row.back();
      row.pop_back();
      const Bucket b1 = row.back();
      row.pop_back();
      const double n = static_cast<double>(std::size_t{1} << r);
      const double diff = b1.total / n - b2.total / n;
      const Bucket merged{b1.total + b2.total, b1.variance + b2.variance + n * n * diff * diff / (2.0 * n)};
      if (r + 1 == rows_.size()) rows_.emplace_back();
      rows_[r + 1].insert(rows_[r + 1].begin(), merged);
    }
  }

  void delete_oldest() {
    std::size_t r = rows_.size();
    while (r > 0 && rows_[r - 1].empty()) --r;
    if (r == 0) return;
    auto& row = rows_[r - 1];
    const Bucket b = row.back();
    row.pop_back();
    const double n1 = static_cast<double>(std::size_t{1} << (r - 1));
    width_ -= std::size_t{1} << (r - 1);
    total_ -= b.total;
    if (width_ == 0) {
      total_ = 0.0;
      variance_ = 0.0;
    } else {
      const double w = static_cast<double>(width_);
      const double u1 = b.total / n1;
      const double d = u1 - total_ / w;
      variance_ -= b.variance + n1 * w * d * d / (n1 + w);
      if (variance_ < 0.0) variance_ = 0.0;
    }
    while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
  }

  bool cut(double n0, double n1, double u0, double u1) const {
    const double n = static_cast<double>(width_);
    const double diff = u0 / n0 - u1 / n1;
    const double v = variance_ / n;
    const double dd = std::log(2.0 * std::log(n) / delta_);
    const double mw = static_cast<double>(min_sub_window_);
    const double m = 1.0 / (n0 - mw + 1.0) + 1.0 / (n1 - mw + 1.0);
    const double eps = std::sqrt(2.0 * m * v * dd) + 2.0 / 3.0 * dd * m;
    return std::abs(diff) > eps;
  }

  double delta_;
  std::size_t clock_;
  std::size_t max_buckets_;
  std::size_t min_window_length_;
  std::size_t min_sub_window_;

  std::vector<std::vector<Bucket>> rows_;
  double total_ = 0.0;
  double variance_ = 0.0;
  std::size_t width_ = 0;
  std::size_t ticks_ = 0;
};

}  // namespace wikistream::model
