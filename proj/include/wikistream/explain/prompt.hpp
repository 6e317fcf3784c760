// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace wikistream::explain {

/// Confidence in [0,1] as a percentage with two decimals: 0.667 -> "66.67".
inline std::string format_percent(double confidence) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", confidence * 100.0);
  return buf;
}

/// "[a, b, c]"; "[]" when empty.
inline std::string format_feature_list(const std::vector<std::string>& features) {
  std::string out = "[";
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (i > 0) out += ", ";
    out += features[i];
  }
  return out + "]";
}

inline std::string build_prompt(std::string_view text, std::string_view category, double confidence,
                                const std::vector<std::string>& features) {
  std::string p = "Our Machine Learning model has predicted that this text ";
  p += text;
  p += " is classified as ";
  p += category;
  p += " with a confidence of ";
  p += format_percent(confidence);
  p += "%. The most relevant path features are: ";
  p += format_feature_list(features);
  p += ".\nGenerate a human-explainable text that summarizes the decision made by the classifier.";
  return p;
}

/// Deterministic summary used when no language model answers.
inline std::string fallback_text(std::string_view category, double confidence,
                                 const std::vector<std::string>& top_features,
                                 const std::vector<std::string>& path_features) {
  std::string t = "The classifier labeled this contribution as ";
  t += category;
  t += " with a confidence of ";
  t += format_percent(confidence);
  t += "%.";
  if (!top_features.empty()) t += " Most relevant features: " + format_feature_list(top_features) + ".";
  if (!path_features.empty()) t += " Features on the decision path: " + format_feature_list(path_features) + ".";
  return t;
}

}  // namespace wikistream::explain
