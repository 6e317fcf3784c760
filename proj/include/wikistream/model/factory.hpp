// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <json.hpp>

#include "wikistream/core/error.hpp"
#include "wikistream/model/adaptive_forest.hpp"
#include "wikistream/model/alma.hpp"
#include "wikistream/model/gaussian_nb.hpp"
#include "wikistream/model/hoeffding_tree.hpp"
#include "wikistream/model/tree_dump.hpp"

namespace wikistream::model {

enum class ModelKind : std::uint8_t { kGnb, kAlma, kHatc, kArfc };

inline std::string_view model_name(ModelKind k) noexcept {
  switch (k) {
    case ModelKind::kGnb:
      return "gnb";
    case ModelKind::kAlma:
      return "alma";
    case ModelKind::kHatc:
      return "hatc";
    case ModelKind::kArfc:
      return "arfc";
  }
  return "?";
}

inline ModelKind parse_model_kind(std::string_view s) {
  if (s == "gnb") return ModelKind::kGnb;
  if (s == "alma") return ModelKind::kAlma;
  if (s == "hatc") return ModelKind::kHatc;
  if (s == "arfc") return ModelKind::kArfc;
  throw UnsupportedModelError("unsupported model '" + std::string(s) + "' (expected gnb, alma, hatc or arfc)");
}

inline std::string subspace_name(const SubspaceSize& s) {
  switch (s.kind) {
    case SubspaceSize::Kind::kAll:
      return "all";
    case SubspaceSize::Kind::kSqrt:
      return "sqrt";
    case SubspaceSize::Kind::kCount:
      return std::to_string(s.count);
  }
  return "all";
}

inline SubspaceSize parse_subspace(std::string_view s) {
  if (s == "all") return SubspaceSize::all();
  if (s == "sqrt") return SubspaceSize::sqrt();
  std::size_t n = 0;
  try {
    std::size_t used = 0;
    n = std::stoul(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw ConfigurationError("invalid feature subset size '" + std::string(s) + "'");
  }
  if (n == 0) throw ConfigurationError("feature subset size must be >= 1");
  return SubspaceSize::fixed(n);
}

/// Model choice plus hyperparameters of every kind; only the active kind's
/// block is used.
struct ModelConfig {
  ModelKind kind = ModelKind::kArfc;
  GaussianNBParams gnb{};
  AlmaParams alma{};
  TreeParams hatc{};
  ForestParams arfc{};
  std::uint64_t seed = 0;
};

inline std::unique_ptr<Classifier> make_classifier(const ModelConfig& c) {
  switch (c.kind) {
    case ModelKind::kGnb:
      return std::make_unique<GaussianNB>(c.gnb);
    case ModelKind::kAlma:
      return std::make_unique<Alma>(c.alma);
    case ModelKind::kHatc:
      return std::make_unique<HoeffdingAdaptiveTree>(c.hatc, c.seed);
    case ModelKind::kArfc:
      return std::make_unique<AdaptiveRandomForest>(c.arfc, c.seed);
  }
  throw UnsupportedModelError("unknown model kind");
}

/// Hyperparameters of the active kind only.
inline nlohmann::json params_to_json(const ModelConfig& c) {
  nlohmann::json j = nlohmann::json::object();
  auto depth = [](const TreeParams& t) {
    return t.max_depth ? nlohmann::json(*t.max_depth) : nlohmann::json(nullptr);
  };
  switch (c.kind) {
    case ModelKind::kGnb:
      j["var_floor"] = c.gnb.var_floor;
      break;
    case ModelKind::kAlma:
      j["alpha"] = c.alma.alpha;
      j["B"] = c.alma.B;
      j["C"] = c.alma.C;
      break;
    case ModelKind::kHatc:
      j["depth"] = depth(c.hatc);
      j["tiethreshold"] = c.hatc.tie_threshold;
      j["maxsize"] = c.hatc.max_size_mb;
      j["seed"] = c.seed;
      break;
    case ModelKind::kArfc:
      j["models"] = c.arfc.models;
      j["features"] = subspace_name(c.arfc.features);
      j["lambda"] = c.arfc.lambda;
      j["depth"] = depth(c.arfc.tree);
      j["tiethreshold"] = c.arfc.tree.tie_threshold;
      j["maxsize"] = c.arfc.tree.max_size_mb;
      j["seed"] = c.seed;
      break;
  }
  return j;
}

/// Checkpoint of a trained model. Tree structure is included for tree kinds.
inline ModelDump dump_model(const Classifier& m, const ModelConfig& c, const FeatureSpace* space = nullptr) {
  ModelDump d;
  d.model = std::string(model_name(c.kind));
  d.params = params_to_json(c);
  if (const auto* t = dynamic_cast<const HoeffdingAdaptiveTree*>(&m)) {
    d.trees.push_back(t->dump(space));
  } else if (const auto* f = dynamic_cast<const AdaptiveRandomForest*>(&m)) {
    for (const auto& t : f->trees()) d.trees.push_back(t.dump(space));
  } else if (const auto* a = dynamic_cast<const Alma*>(&m)) {
    d.params["updates"] = a->updates();
  }
  return d;
}

}  // namespace wikistream::model
