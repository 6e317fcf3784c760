// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wikistream/core/random.hpp"
#include "wikistream/model/adwin.hpp"
#include "wikistream/model/classifier.hpp"
#include "wikistream/model/tree_dump.hpp"

namespace wikistream::model {

/// Number of features a leaf may consider for splitting.
struct SubspaceSize {
  enum class Kind : std::uint8_t { kAll, kSqrt, kCount };
  Kind kind = Kind::kAll;
  std::size_t count = 0;

  static SubspaceSize all() { return {}; }
  static SubspaceSize sqrt() { return {Kind::kSqrt, 0}; }
  static SubspaceSize fixed(std::size_t n) { return {Kind::kCount, n}; }

  /// Sizes larger than what is available clamp to everything.
  std::size_t resolve(std::size_t available) const {
    switch (kind) {
      case Kind::kAll:
        return available;
      case Kind::kSqrt:
        return std::min(available, std::max<std::size_t>(1, static_cast<std::size_t>(
                                                                 std::llround(std::sqrt(static_cast<double>(available))))));
      case Kind::kCount:
        return std::min(available, count);
    }
    return available;
  }

  friend bool operator==(const SubspaceSize&, const SubspaceSize&) = default;
};

struct TreeParams {
  std::optional<std::size_t> max_depth = 200;  // nullopt: unbounded
  double tie_threshold = 0.005;
  double max_size_mb = 200.0;
  std::size_t grace_period = 200;
  double split_confidence = 1e-7;
  double drift_delta = 0.002;
  std::size_t split_points = 10;
  double min_branch_fraction = 0.01;
  std::size_t drift_window_threshold = 300;
  double switch_significance = 0.05;
  SubspaceSize subspace = SubspaceSize::all();
};

/// sqrt(R^2 ln(1/delta) / (2n)).
inline double hoeffding_bound(double range, double delta, double n) {
  if (!(n > 0.0)) throw std::invalid_argument("hoeffding_bound: n must be >= 1");
  return std::sqrt(range * range * std::log(1.0 / delta) / (2.0 * n));
}

/// Weighted running Gaussian with observed range.
struct GaussianEstimator {
  double weight = 0.0;
  double mean = 0.0;
  double m2 = 0.0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();

  void update(double x, double w) {
    weight += w;
    const double delta = x - mean;
    mean += w * delta / weight;
    m2 += w * delta * (x - mean);
    min = std::min(min, x);
    max = std::max(max, x);
  }

  double variance() const noexcept { return weight > 0.0 ? std::max(0.0, m2 / weight) : 0.0; }

  double cdf(double x) const {
    const double sd = std::sqrt(variance());
    if (sd <= 0.0) return x >= mean ? 1.0 : 0.0;
    return 0.5 * (1.0 + std::erf((x - mean) / (sd * 1.4142135623730950488)));
  }
};

inline double entropy(const ClassDistribution& d) {
  const double total = d[0] + d[1];
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (double c : d) {
    if (c > 0.0) {
      const double p = c / total;
      h -= p * std::log2(p);
    }
  }
  return h;
}

/// Information gain of a binary partition; -inf when fewer than two branches
/// hold at least `min_branch_fraction` of the weight.
inline double information_gain(const ClassDistribution& pre, const ClassDistribution& left,
                               const ClassDistribution& right, double min_branch_fraction) {
  const double wl = left[0] + left[1];
  const double wr = right[0] + right[1];
  const double total = wl + wr;
  if (total <= 0.0) return -std::numeric_limits<double>::infinity();
  int big = 0;
  if (wl / total >= min_branch_fraction) ++big;
  if (wr / total >= min_branch_fraction) ++big;
  if (big < 2) return -std::numeric_limits<double>::infinity();
  return entropy(pre) - (wl / total) * entropy(left) - (wr / total) * entropy(right);
}

/// Hoeffding adaptive tree for binary classification.
///
/// Leaves keep per-class Gaussian estimators per feature and evaluate
/// `split_points` evenly spaced thresholds between the observed extremes.
/// Every node tracks its own 0/1 error with ADWIN; a detected error increase
/// at a split node starts an alternate subtree that replaces the node once it
/// is significantly better over windows of at least
/// `drift_window_threshold` arrivals.
///
/// Sample weights scale the sufficient statistics, the grace period and the
/// Hoeffding bound's n alike. Ties between splits go to the smaller feature
/// id.
class HoeffdingAdaptiveTree final : public Classifier {
 public:
  struct Observer {
    FeatureId id;
    std::array<GaussianEstimator, 2> per_class;
  };

  struct Node {
    ClassDistribution stats{};
    std::size_t depth = 0;
    Adwin detector;

    // Leaf state.
    std::vector<Observer> observers;
    std::optional<std::vector<FeatureId>> subspace;
    double arrivals = 0.0;  // weight seen
    double last_attempt = 0.0;

    // Split state.
    bool split = false;
    FeatureId feature{};
    double threshold = 0.0;
    std::array<std::unique_ptr<Node>, 2> children;
    std::array<double, 2> branch_weight{};
    std::unique_ptr<Node> alternate;

    explicit Node(double drift_delta) : detector(drift_delta) {}

    int majority_branch() const noexcept { return branch_weight[1] > branch_weight[0] ? 1 : 0; }

    int route(const FeatureVector& x) const {
      const auto v = x.get(feature);
      if (!v) return majority_branch();
      return *v <= threshold ? 0 : 1;
    }
  };

  struct Counters {
    std::size_t splits = 0;
    std::size_t alternates_started = 0;
    std::size_t alternates_swapped = 0;
    std::size_t alternates_pruned = 0;
  };

  explicit HoeffdingAdaptiveTree(TreeParams params = {}, std::uint64_t seed = 0)
      : params_(params), rng_(seed), root_(make_leaf(0, {})) {
    if (params_.grace_period == 0) throw std::invalid_argument("grace period must be >= 1");
    if (params_.split_points == 0) throw std::invalid_argument("split points must be >= 1");
  }

  void learn_one(const FeatureVector& x, Label y) override { learn_weighted(x, y, 1.0); }

  void learn_weighted(const FeatureVector& x, Label y, double weight) {
    if (weight <= 0.0) return;
    learn_node(root_, x, y, weight);
  }

  ClassDistribution predict_proba_one(const FeatureVector& x) const override {
    return normalize(leaf_for(*root_, x).stats);
  }

  std::string_view kind() const noexcept override { return "hatc"; }

  const Node& root() const noexcept { return *root_; }
  const Counters& counters() const noexcept { return counters_; }
  const TreeParams& params() const noexcept { return params_; }

  std::size_t depth() const { return depth_of(*root_); }
  std::size_t node_count() const { return count_nodes(*root_); }
  std::size_t leaf_count() const { return count_leaves(*root_); }

  /// Approximate bytes held by the tree, alternates included.
  std::size_t memory_bytes() const { return memory_of(*root_); }

  /// Main tree only (alternates are not used for prediction).
  TreeDump dump(const FeatureSpace* space = nullptr) const {
    TreeDump out;
    dump_node(*root_, out, space);
    return out;
  }

 private:
  std::unique_ptr<Node> make_leaf(std::size_t depth, ClassDistribution stats) const {
    auto n = std::make_unique<Node>(params_.drift_delta);
    n->depth = depth;
    n->stats = stats;
    return n;
  }

  static const Node& leaf_for(const Node& start, const FeatureVector& x) {
    const Node* n = &start;
    while (n->split) n = n->children[static_cast<std::size_t>(n->route(x))].get();
    return *n;
  }

  void learn_node(std::unique_ptr<Node>& slot, const FeatureVector& x, Label y, double w) {
    Node& node = *slot;
    const Label predicted = argmax(normalize(leaf_for(node, x).stats));
    const double old_error = node.detector.estimation();
    bool change = node.detector.update(predicted != y ? 1.0 : 0.0);
    if (change && old_error > node.detector.estimation()) change = false;

    if (!node.split) {
      learn_leaf(node, x, y, w);
      return;
    }

    if (change) {
      node.alternate = make_leaf(node.depth, {});
      ++counters_.alternates_started;
    } else if (node.alternate && node.alternate->detector.width() > 0) {
      const auto old_width = static_cast<double>(node.detector.width());
      const auto alt_width = static_cast<double>(node.alternate->detector.width());
      const auto threshold = static_cast<double>(params_.drift_window_threshold);
      if (old_width > threshold && alt_width > threshold) {
        const double old_rate = node.detector.estimation();
        const double alt_rate = node.alternate->detector.estimation();
        const double fn = 1.0 / alt_width + 1.0 / old_width;
        const double bound =
            std::sqrt(2.0 * old_rate * (1.0 - old_rate) * std::log(2.0 / params_.switch_significance) * fn);
        if (bound < old_rate - alt_rate) {
          std::unique_ptr<Node> replacement = std::move(node.alternate);
          slot = std::move(replacement);  // destroys the old subtree
          ++counters_.alternates_swapped;
          learn_node(slot, x, y, w);
          return;
        }
        if (bound < alt_rate - old_rate) {
          node.alternate.reset();
          ++counters_.alternates_pruned;
        }
      }
    }
    if (node.alternate) learn_node(node.alternate, x, y, w);

    node.stats[static_cast<std::size_t>(to_int(y))] += w;
    const int branch = node.route(x);
    node.branch_weight[static_cast<std::size_t>(branch)] += w;
    learn_node(node.children[static_cast<std::size_t>(branch)], x, y, w);
  }

  void learn_leaf(Node& leaf, const FeatureVector& x, Label y, double w) {
    const auto c = static_cast<std::size_t>(to_int(y));
    leaf.stats[c] += w;
    if (!leaf.subspace && params_.subspace.kind != SubspaceSize::Kind::kAll && !x.empty()) {
      leaf.subspace = sample_subspace(x);
      leaf.observers.reserve(leaf.subspace->size());
      for (FeatureId id : *leaf.subspace) leaf.observers.push_back(Observer{id, {}});
    }
    update_observers(leaf, x, c, w);
    leaf.arrivals += w;
    if (leaf.arrivals - leaf.last_attempt >= static_cast<double>(params_.grace_period)) {
      attempt_split(leaf);
      leaf.last_attempt = leaf.arrivals;
    }
  }

  std::vector<FeatureId> sample_subspace(const FeatureVector& x) {
    std::vector<FeatureId> ids;
    ids.reserve(x.size());
    for (const auto& e : x) ids.push_back(e.id);
    const std::size_t k = params_.subspace.resolve(ids.size());
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(uniform_index(rng_, ids.size() - i));
      std::swap(ids[i], ids[j]);
    }
    ids.resize(k);
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  void update_observers(Node& leaf, const FeatureVector& x, std::size_t c, double w) {
    auto& obs = leaf.observers;
    const auto entries = x.entries();
    if (leaf.subspace) {
      // Fixed observer set: only intersecting ids are updated.
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < obs.size() && j < entries.size()) {
        if (obs[i].id < entries[j].id) {
          ++i;
        } else if (entries[j].id < obs[i].id) {
          ++j;
        } else {
          obs[i].per_class[c].update(entries[j].value, w);
          ++i;
          ++j;
        }
      }
      return;
    }
    std::vector<Observer> merged;
    bool rebuilt = false;
    std::size_t i = 0;
    for (const auto& e : entries) {
      while (i < obs.size() && obs[i].id < e.id) {
        if (rebuilt) merged.push_back(std::move(obs[i]));
        ++i;
      }
      if (i < obs.size() && obs[i].id == e.id) {
        obs[i].per_class[c].update(e.value, w);
        if (rebuilt) merged.push_back(std::move(obs[i]));
        ++i;
        continue;
      }
      if (!rebuilt) {
        rebuilt = true;
        merged.reserve(obs.size() + entries.size());
        for (std::size_t k = 0; k < i; ++k) merged.push_back(std::move(obs[k]));
      }
      Observer fresh{e.id, {}};
      fresh.per_class[c].update(e.value, w);
      merged.push_back(std::move(fresh));
    }
    if (rebuilt) {
      for (; i < obs.size(); ++i) merged.push_back(std::move(obs[i]));
      obs = std::move(merged);
    }
  }

  struct Candidate {
    double merit = -std::numeric_limits<double>::infinity();
    bool null_split = false;
    FeatureId feature{};
    double threshold = 0.0;
    ClassDistribution left{};
    ClassDistribution right{};
  };

  /// Gain over the samples where the feature was present, scaled by the
  /// share of the leaf's weight they carry.
  Candidate best_for(const Observer& o, double leaf_weight) const {
    Candidate best;
    best.feature = o.id;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    ClassDistribution pre{};
    for (std::size_t c = 0; c < 2; ++c) {
      const auto& g = o.per_class[c];
      if (g.weight <= 0.0) continue;
      lo = std::min(lo, g.min);
      hi = std::max(hi, g.max);
      pre[c] = g.weight;
    }
    if (!(lo < hi)) return best;
    const double observed_share = leaf_weight > 0.0 ? std::min(1.0, (pre[0] + pre[1]) / leaf_weight) : 0.0;
    const auto steps = static_cast<double>(params_.split_points + 1);
    for (std::size_t i = 1; i <= params_.split_points; ++i) {
      const double t = lo + (hi - lo) * static_cast<double>(i) / steps;
      ClassDistribution left{};
      ClassDistribution right{};
      for (std::size_t c = 0; c < 2; ++c) {
        const auto& g = o.per_class[c];
        if (g.weight <= 0.0) continue;
        if (t < g.min) {
          right[c] = g.weight;
        } else if (t >= g.max) {
          left[c] = g.weight;
        } else {
          left[c] = std::clamp(g.cdf(t), 0.0, 1.0) * g.weight;
          right[c] = g.weight - left[c];
        }
      }
      const double merit = observed_share * information_gain(pre, left, right, params_.min_branch_fraction);
      if (merit > best.merit) {
        best.merit = merit;
        best.threshold = t;
        best.left = left;
        best.right = right;
      }
    }
    return best;
  }

  /// Same split up to swapping the branches.
  static bool same_partition(const Candidate& a, const Candidate& b) {
    auto close = [](double x, double y) { return std::abs(x - y) <= 1e-9 * std::max({1.0, std::abs(x), std::abs(y)}); };
    auto equal = [&](const ClassDistribution& p, const ClassDistribution& q) {
      return close(p[0], q[0]) && close(p[1], q[1]);
    };
    return (equal(a.left, b.left) && equal(a.right, b.right)) || (equal(a.left, b.right) && equal(a.right, b.left));
  }

  void attempt_split(Node& leaf) {
    if (params_.max_depth && leaf.depth >= *params_.max_depth) return;
    if (leaf.stats[0] <= 0.0 || leaf.stats[1] <= 0.0) return;
    if (static_cast<double>(memory_bytes()) >= params_.max_size_mb * 1024.0 * 1024.0) return;

    std::vector<Candidate> candidates;
    candidates.reserve(leaf.observers.size() + 1);
    for (const auto& o : leaf.observers) {
      auto c = best_for(o, leaf.stats[0] + leaf.stats[1]);
      if (std::isfinite(c.merit)) candidates.push_back(c);
    }
    Candidate null_split;
    null_split.merit = 0.0;
    null_split.null_split = true;
    candidates.push_back(null_split);
    std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      if (a.merit != b.merit) return a.merit > b.merit;
      if (a.null_split != b.null_split) return !a.null_split;
      return a.feature < b.feature;
    });
    const Candidate& best = candidates[0];
    if (best.null_split || candidates.size() < 2) return;
    // The runner-up must partition the data differently; exact copies of the
    // best split (e.g. affinely related features) would otherwise tie forever.
    const Candidate* second = &candidates.back();
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      if (candidates[i].null_split || !same_partition(best, candidates[i])) {
        second = &candidates[i];
        break;
      }
    }
    const double eps = hoeffding_bound(1.0, params_.split_confidence, leaf.arrivals);
    if (!(best.merit - second->merit > eps || eps < params_.tie_threshold)) return;

    leaf.split = true;
    leaf.feature = best.feature;
    leaf.threshold = best.threshold;
    leaf.children[0] = make_leaf(leaf.depth + 1, best.left);
    leaf.children[1] = make_leaf(leaf.depth + 1, best.right);
    leaf.branch_weight = {best.left[0] + best.left[1], best.right[0] + best.right[1]};
    leaf.observers.clear();
    leaf.observers.shrink_to_fit();
    leaf.subspace.reset();
    leaf.detector = Adwin(params_.drift_delta);
    ++counters_.splits;
  }

  static std::size_t depth_of(const Node& n) {
    if (!n.split) return n.depth;
    return std::max(depth_of(*n.children[0]), depth_of(*n.children[1]));
  }

  static std::size_t count_nodes(const Node& n) {
    if (!n.split) return 1;
    return 1 + count_nodes(*n.children[0]) + count_nodes(*n.children[1]);
  }

  static std::size_t count_leaves(const Node& n) {
    if (!n.split) return 1;
    return count_leaves(*n.children[0]) + count_leaves(*n.children[1]);
  }

  static std::size_t memory_of(const Node& n) {
    std::size_t bytes = sizeof(Node) + n.observers.capacity() * sizeof(Observer) +
                        n.detector.bucket_count() * 2 * sizeof(double);
    if (n.subspace) bytes += n.subspace->capacity() * sizeof(FeatureId);
    if (n.alternate) bytes += memory_of(*n.alternate);
    if (n.split) bytes += memory_of(*n.children[0]) + memory_of(*n.children[1]);
    return bytes;
  }

  static std::int32_t dump_node(const Node& n, TreeDump& out, const FeatureSpace* space) {
    const auto index = static_cast<std::int32_t>(out.nodes.size());
    out.nodes.emplace_back();
    {
      auto& d = out.nodes.back();
      d.leaf = !n.split;
      d.class_counts = n.stats;
      d.depth = n.depth;
      if (n.split) {
        d.feature = n.feature;
        d.threshold = n.threshold;
        d.majority_branch = n.majority_branch();
        if (space && n.feature.index < space->size()) d.feature_name = space->name(n.feature);
      }
    }
    if (n.split) {
      const auto left = dump_node(*n.children[0], out, space);
      const auto right = dump_node(*n.children[1], out, space);
      out.nodes[static_cast<std::size_t>(index)].left = left;
      out.nodes[static_cast<std::size_t>(index)].right = right;
    }
    return index;
  }

  TreeParams params_;
  Rng rng_;
  std::unique_ptr<Node> root_;
  Counters counters_;
};

}  // namespace wikistream::model
