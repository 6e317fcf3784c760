// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wikistream/core/error.hpp"
#include "wikistream/core/feature_vector.hpp"
#include "wikistream/model/classifier.hpp"

namespace wikistream::model {

/// Flattened tree node. Children are indices into TreeDump::nodes; a split
/// routes `value <= threshold` left (branch 0) and otherwise right (branch 1).
/// Absent features follow `majority_branch`.
struct DumpNode {
  bool leaf = true;
  FeatureId feature{};
  std::string feature_name;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  int majority_branch = 0;
  ClassDistribution class_counts{};
  std::size_t depth = 0;
};

/// Node 0 is the root.
struct TreeDump {
  std::vector<DumpNode> nodes;
};

/// Versioned checkpoint of a model. Tree models carry one dump per member;
/// the other models carry their parameters in `params`.
struct ModelDump {
  static constexpr int kVersion = 1;
  std::string model;  // gnb | alma | hatc | arfc
  std::vector<TreeDump> trees;
  nlohmann::json params = nlohmann::json::object();

  bool tree_based() const noexcept { return model == "hatc" || model == "arfc"; }
};

inline nlohmann::json to_json(const TreeDump& t) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const auto& n = t.nodes[i];
    nlohmann::json j;
    j["id"] = i;
    j["depth"] = n.depth;
    j["class_counts"] = {n.class_counts[0], n.class_counts[1]};
    if (!n.leaf) {
      j["feature"] = n.feature.index;
      j["feature_name"] = n.feature_name;
      j["threshold"] = n.threshold;
      j["children"] = {n.left, n.right};
      j["majority_branch"] = n.majority_branch;
    }
    nodes.push_back(std::move(j));
  }
  return nlohmann::json{{"nodes", std::move(nodes)}};
}

inline TreeDump tree_from_json(const nlohmann::json& j) {
  TreeDump t;
  for (const auto& jn : j.at("nodes")) {
    DumpNode n;
    n.depth = jn.value("depth", std::size_t{0});
    const auto& cc = jn.at("class_counts");
    n.class_counts = {cc.at(0).get<double>(), cc.at(1).get<double>()};
    if (jn.contains("feature")) {
      n.leaf = false;
      n.feature = FeatureId{jn.at("feature").get<std::uint32_t>()};
      n.feature_name = jn.value("feature_name", std::string{});
      n.threshold = jn.at("threshold").get<double>();
      n.left = jn.at("children").at(0).get<std::int32_t>();
      n.right = jn.at("children").at(1).get<std::int32_t>();
      n.majority_branch = jn.value("majority_branch", 0);
    }
    t.nodes.push_back(std::move(n));
  }
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const auto& n = t.nodes[i];
    if (n.leaf) continue;
    auto bad = [&](std::int32_t c) { return c <= static_cast<std::int32_t>(i) || c >= static_cast<std::int32_t>(t.nodes.size()); };
    if (bad(n.left) || bad(n.right)) throw ValidationError("tree dump node " + std::to_string(i) + " has invalid children");
  }
  if (t.nodes.empty()) throw ValidationError("tree dump without nodes");
  return t;
}

inline nlohmann::json to_json(const ModelDump& m) {
  nlohmann::json j;
  j["format"] = "wikistream-model";
  j["version"] = ModelDump::kVersion;
  j["model"] = m.model;
  j["params"] = m.params;
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& t : m.trees) trees.push_back(to_json(t));
  j["trees"] = std::move(trees);
  return j;
}

inline ModelDump model_dump_from_json(const nlohmann::json& j) {
  if (j.value("format", std::string{}) != "wikistream-model") throw ValidationError("not a wikistream model dump");
  if (j.value("version", 0) != ModelDump::kVersion) {
    throw ValidationError("unsupported model dump version " + std::to_string(j.value("version", 0)));
  }
  ModelDump m;
  m.model = j.at("model").get<std::string>();
  m.params = j.value("params", nlohmann::json::object());
  for (const auto& t : j.at("trees")) m.trees.push_back(tree_from_json(t));
  return m;
}

inline void write_model_dump(const ModelDump& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model dump " + path);
  out << to_json(m).dump(1) << '\n';
}

inline ModelDump read_model_dump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read model dump " + path);
  return model_dump_from_json(nlohmann::json::parse(in));
}

}  // namespace wikistream::model
