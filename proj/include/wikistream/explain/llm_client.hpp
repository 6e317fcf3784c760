// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>

#include <httplib.h>
#include <json.hpp>

#include "wikistream/core/error.hpp"

namespace wikistream::explain {

struct LlmConfig {
  std::string endpoint;  // full URL of a chat-completions route; empty disables the client
  std::string api_key;
  std::string model = "gpt-3.5-turbo";
  std::chrono::milliseconds timeout{15000};

  /// Reads LLM_ENDPOINT, LLM_API_KEY and LLM_MODEL.
  static LlmConfig from_env() {
    LlmConfig c;
    if (const char* v = std::getenv("LLM_ENDPOINT")) c.endpoint = v;
    if (const char* v = std::getenv("LLM_API_KEY")) c.api_key = v;
    if (const char* v = std::getenv("LLM_MODEL"); v && *v) c.model = v;
    return c;
  }
};

/// Produces text for a prompt; nullopt on any failure.
class TextGenerator {
 public:
  virtual ~TextGenerator() = default;
  virtual std::optional<std::string> complete(const std::string& prompt) = 0;
};

struct UrlParts {
  std::string scheme_host_port;  // "http://host:port"
  std::string path;              // "/v1/chat/completions"
};

inline UrlParts split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigurationError("endpoint must be an absolute URL: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

/// OpenAI-style chat-completions client.
class HttpChatClient final : public TextGenerator {
 public:
  explicit HttpChatClient(LlmConfig config) : config_(std::move(config)), url_(split_url(config_.endpoint)) {}

  std::optional<std::string> complete(const std::string& prompt) override {
    httplib::Client cli(url_.scheme_host_port);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - secs);
    cli.set_connection_timeout(secs.count(), usecs.count());
    cli.set_read_timeout(secs.count(), usecs.count());
    httplib::Headers headers;
    if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);
    const nlohmann::json body = {{"model", config_.model},
                                 {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})}};
    auto res = cli.Post(url_.path, headers, body.dump(), "application/json");
    if (!res) {
      std::cerr << "llm: request failed: " << httplib::to_string(res.error()) << '\n';
      return std::nullopt;
    }
    if (res->status != 200) {
      std::cerr << "llm: HTTP " << res->status << '\n';
      return std::nullopt;
    }
    try {
      const auto j = nlohmann::json::parse(res->body);
      return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const std::exception& e) {
      std::cerr << "llm: malformed response: " << e.what() << '\n';
      return std::nullopt;
    }
  }

 private:
  LlmConfig config_;
  UrlParts url_;
};

/// Replays recorded completions: JSONL records {"prompt": ..., "response": ...}.
/// Unknown prompts fail, so callers fall back deterministically.
class RecordedResponses final : public TextGenerator {
 public:
  RecordedResponses() = default;

  static RecordedResponses load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigurationError("cannot open recorded responses " + path);
    RecordedResponses r;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      ++n;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        const auto j = nlohmann::json::parse(line);
        r.add(j.at("prompt").get<std::string>(), j.at("response").get<std::string>());
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(n, e.what());
      }
    }
    return r;
  }

  void add(std::string prompt, std::string response) { responses_[std::move(prompt)] = std::move(response); }

  std::optional<std::string> complete(const std::string& prompt) override {
    auto it = responses_.find(prompt);
    if (it == responses_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::unordered_map<std::string, std::string> responses_;
};

/// HTTP client when an endpoint is configured, otherwise none.
inline std::unique_ptr<TextGenerator> make_generator(const LlmConfig& c) {
  if (c.endpoint.empty()) return nullptr;
  return std::make_unique<HttpChatClient>(c);
}

struct GeneratedText {
  std::string text;
  std::string generator;  // "llm" | "template-fallback"
};

inline GeneratedText generate_text(TextGenerator* generator, const std::string& prompt, const std::string& fallback) {
  if (generator) {
    if (auto t = generator->complete(prompt)) return {std::move(*t), "llm"};
  }
  return {fallback, "template-fallback"};
}

}  // namespace wikistream::explain
