// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "wikistream/core/error.hpp"
#include "wikistream/model/tree_dump.hpp"

namespace wikistream::explain {

struct PathStep {
  FeatureId feature{};
  std::string feature_name;
  double threshold = 0.0;
  int branch = 0;  // 0: value <= threshold (or absent and majority left), 1: right
  bool feature_present = true;
};

struct DecisionPath {
  std::size_t tree_id = 0;
  std::vector<PathStep> steps;
  Label prediction = Label::kNonDisinformation;
  model::ClassDistribution distribution{0.5, 0.5};
};

/// Replays one tree's routing of `x`.
inline DecisionPath trace_tree(const model::TreeDump& tree, const FeatureVector& x, std::size_t tree_id = 0) {
  DecisionPath p;
  p.tree_id = tree_id;
  std::size_t i = 0;
  while (!tree.nodes.at(i).leaf) {
    const auto& n = tree.nodes[i];
    PathStep s{n.feature, n.feature_name, n.threshold, n.majority_branch, false};
    if (const auto v = x.get(n.feature)) {
      s.feature_present = true;
      s.branch = *v <= n.threshold ? 0 : 1;
    }
    p.steps.push_back(std::move(s));
    i = static_cast<std::size_t>(p.steps.back().branch == 0 ? n.left : n.right);
  }
  p.distribution = model::normalize(tree.nodes[i].class_counts);
  p.prediction = model::argmax(p.distribution);
  return p;
}

/// One path per tree of a tree-based model dump.
inline std::vector<DecisionPath> extract_paths(const model::ModelDump& dump, const FeatureVector& x) {
  if (!dump.tree_based()) {
    throw UnsupportedModelError("decision paths need a tree model, got '" + dump.model + "'");
  }
  std::vector<DecisionPath> out;
  out.reserve(dump.trees.size());
  for (std::size_t t = 0; t < dump.trees.size(); ++t) out.push_back(trace_tree(dump.trees[t], x, t));
  return out;
}

struct FilteredPaths {
  Label majority = Label::kNonDisinformation;
  std::vector<DecisionPath> retained;
  std::size_t total = 0;

  /// Share of trees agreeing with the majority.
  double confidence() const noexcept {
    return total == 0 ? 0.0 : static_cast<double>(retained.size()) / static_cast<double>(total);
  }
};

/// Majority vote over the paths (ties to class 0); keeps the agreeing ones.
inline FilteredPaths filter_minority_trees(std::vector<DecisionPath> paths) {
  if (paths.empty()) throw ValidationError("no decision paths to filter");
  std::size_t ones = 0;
  for (const auto& p : paths) ones += p.prediction == Label::kDisinformation ? 1 : 0;
  FilteredPaths f;
  f.total = paths.size();
  f.majority = ones * 2 > paths.size() ? Label::kDisinformation : Label::kNonDisinformation;
  for (auto& p : paths) {
    if (p.prediction == f.majority) f.retained.push_back(std::move(p));
  }
  return f;
}

inline nlohmann::json to_json(const DecisionPath& p) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : p.steps) {
    steps.push_back({{"feature", s.feature.index},
                     {"feature_name", s.feature_name},
                     {"threshold", s.threshold},
                     {"branch", s.branch == 0 ? "left" : "right"},
                     {"feature_present", s.feature_present}});
  }
  return {{"tree_id", p.tree_id},
          {"steps", std::move(steps)},
          {"prediction", to_int(p.prediction)},
          {"distribution", {p.distribution[0], p.distribution[1]}}};
}

}  // namespace wikistream::explain
