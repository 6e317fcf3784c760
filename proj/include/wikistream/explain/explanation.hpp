// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wikistream/explain/llm_client.hpp"
#include "wikistream/explain/paths.hpp"
#include "wikistream/explain/prompt.hpp"
#include "wikistream/pipeline/pipeline.hpp"

namespace wikistream::explain {

struct Explanation {
  std::string event_id;
  Label predicted = Label::kNonDisinformation;
  double confidence = 0.0;
  bool paths_available = false;
  std::size_t total_trees = 0;
  std::vector<DecisionPath> retained_paths;
  std::vector<pipeline::TopFeature> top_features;
  std::string prompt;
  std::string text;
  std::string generator;  // empty until generated
};

/// Distinct feature names along the paths, in order of first use.
inline std::vector<std::string> path_feature_names(const std::vector<DecisionPath>& paths) {
  std::vector<std::string> out;
  for (const auto& p : paths) {
    for (const auto& s : p.steps) {
      const auto& name = s.feature_name.empty() ? std::to_string(s.feature.index) : s.feature_name;
      if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    }
  }
  return out;
}

/// Everything except the generated text. Tree dumps give decision paths;
/// other models explain through features and confidence only.
inline Explanation explain_prediction(const pipeline::PredictionRecord& r, const model::ModelDump* dump) {
  Explanation e;
  e.event_id = r.event_id;
  e.predicted = r.predicted;
  e.confidence = r.confidence;
  e.top_features = r.top_features;
  if (dump && dump->tree_based()) {
    auto filtered = filter_minority_trees(extract_paths(*dump, r.selected));
    e.paths_available = true;
    e.total_trees = filtered.total;
    e.retained_paths = std::move(filtered.retained);
  }
  std::vector<std::string> features;
  for (const auto& t : e.top_features) features.push_back(t.name);
  for (auto& n : path_feature_names(e.retained_paths)) {
    if (std::find(features.begin(), features.end(), n) == features.end()) features.push_back(std::move(n));
  }
  e.prompt = build_prompt(r.content, class_name(r.predicted), r.confidence, features);
  return e;
}

inline std::string fallback_for(const Explanation& e) {
  std::vector<std::string> top;
  for (const auto& t : e.top_features) top.push_back(t.name);
  return fallback_text(class_name(e.predicted), e.confidence, top, path_feature_names(e.retained_paths));
}

inline void generate(Explanation& e, TextGenerator* generator) {
  auto g = generate_text(generator, e.prompt, fallback_for(e));
  e.text = std::move(g.text);
  e.generator = std::move(g.generator);
}

inline nlohmann::json to_json(const pipeline::TopFeature& t) {
  return {{"feature", t.base_feature},
          {"name", t.name},
          {"value", t.value},
          {"variance", t.variance},
          {"color", color_name(t.color)}};
}

inline nlohmann::json to_json(const Explanation& e) {
  nlohmann::json paths = nlohmann::json::array();
  for (const auto& p : e.retained_paths) paths.push_back(to_json(p));
  nlohmann::json top = nlohmann::json::array();
  for (const auto& t : e.top_features) top.push_back(to_json(t));
  nlohmann::json j = {{"event_id", e.event_id},
                      {"predicted", to_int(e.predicted)},
                      {"category", class_name(e.predicted)},
                      {"confidence", e.confidence},
                      {"paths_available", e.paths_available},
                      {"total_trees", e.total_trees},
                      {"retained_paths", std::move(paths)},
                      {"top_features", std::move(top)},
                      {"prompt", e.prompt}};
  if (e.generator.empty()) {
    j["status"] = "pending";
  } else {
    j["status"] = "ready";
    j["text"] = e.text;
    j["generator"] = e.generator;
  }
  return j;
}

}  // namespace wikistream::explain
