// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <thread>

#include <httplib.h>

#include "wikistream/explain/explanation.hpp"
#include "wikistream/explain/feedback.hpp"
#include "wikistream/explain/llm_client.hpp"
#include "wikistream/explain/paths.hpp"
#include "wikistream/explain/prompt.hpp"
#include "wikistream/explain/quartiles.hpp"
#include "wikistream/model/factory.hpp"

using namespace wikistream;
using namespace wikistream::explain;

namespace {

struct ParsedPrompt {
  std::string text, category;
  double percent = 0;
  std::vector<std::string> features;
};

/// Inverse of the prompt template.
std::optional<ParsedPrompt> parse_prompt(const std::string& p) {
  static const std::regex re(
      R"(^Our Machine Learning model has predicted that this text ([\s\S]*) is classified as (.+) with a confidence of ([0-9]+\.[0-9]{2})%\. The most relevant path features are: \[(.*)\]\.\nGenerate a human-explainable text that summarizes the decision made by the classifier\.$)");
  std::smatch m;
  if (!std::regex_match(p, m, re)) return std::nullopt;
  ParsedPrompt out{m[1], m[2], std::stod(m[3]), {}};
  const std::string list = m[4];
  std::size_t start = 0;
  while (!list.empty() && start <= list.size()) {
    const auto comma = list.find(", ", start);
    out.features.push_back(list.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 2;
  }
  return out;
}

DecisionPath voting(Label l) {
  DecisionPath p;
  p.prediction = l;
  return p;
}

model::DumpNode leaf(double c0, double c1, std::size_t depth) {
  model::DumpNode n;
  n.class_counts = {c0, c1};
  n.depth = depth;
  return n;
}

model::DumpNode split(std::uint32_t f, const char* name, double thr, int l, int r, std::size_t depth) {
  model::DumpNode n;
  n.leaf = false;
  n.feature = FeatureId{f};
  n.feature_name = name;
  n.threshold = thr;
  n.left = l;
  n.right = r;
  n.depth = depth;
  return n;
}

}  // namespace

TEST(Quartiles, HundredValues) {
  ExactQuantiles q;
  for (int i = 100; i >= 1; --i) q.add(i);
  const auto qs = q.quartiles();
  // position p*(n-1) over 1..100
  EXPECT_DOUBLE_EQ(qs.q1, 1 + 0.25 * 99);
  EXPECT_DOUBLE_EQ(qs.q2, 50.5);
  EXPECT_DOUBLE_EQ(qs.q3, 75.25);
  EXPECT_EQ(quartile_color(55, qs), QuartileColor::kYellow);
  EXPECT_EQ(quartile_color(80, qs), QuartileColor::kRed);
  EXPECT_EQ(quartile_color(1, qs), QuartileColor::kNone);
  EXPECT_EQ(quartile_color(30, qs), QuartileColor::kGreen);
}

TEST(Quartiles, ColorIsMonotoneInValue) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> z;
  ExactQuantiles q;
  for (int i = 0; i < 500; ++i) q.add(z(rng));
  const auto qs = q.quartiles();
  auto rank = [](QuartileColor c) { return static_cast<int>(c); };
  int prev = 0;
  for (double v = -4; v <= 4; v += 0.01) {
    const int r = rank(quartile_color(v, qs));
    EXPECT_GE(r, prev);
    prev = r;
  }
}

TEST(Quartiles, InterleavedAddsStaySorted) {
  ExactQuantiles q;
  for (int i = 0; i < 10; ++i) q.add(10 - i);
  q.quartiles();
  for (int i = 0; i < 10; ++i) q.add(-i);
  EXPECT_DOUBLE_EQ(q.quartiles().q2, 0.5);
}

TEST(Quartiles, EmptyPopulationColorsNothing) {
  PopulationStore p;
  EXPECT_EQ(p.color(0, 1e9), QuartileColor::kNone);
}

TEST(Paths, SingleLeafTree) {
  model::TreeDump t;
  t.nodes.push_back(leaf(1, 3, 0));
  auto p = trace_tree(t, FeatureVector{});
  EXPECT_TRUE(p.steps.empty());
  EXPECT_EQ(p.prediction, Label::kDisinformation);
}

TEST(Paths, DepthTwoHandBuiltTree) {
  model::TreeDump t;
  t.nodes = {split(0, "a", 0.5, 1, 2, 0), leaf(9, 1, 1), split(1, "b", 10.0, 3, 4, 1), leaf(2, 8, 2),
             leaf(7, 3, 2)};
  FeatureVector x;
  x.set(FeatureId{0}, 0.9);
  x.set(FeatureId{1}, 4.0);
  auto p = trace_tree(t, x, 3);
  ASSERT_EQ(p.steps.size(), 2u);
  EXPECT_EQ(p.steps[0].feature_name, "a");
  EXPECT_EQ(p.steps[0].branch, 1);
  EXPECT_EQ(p.steps[1].feature_name, "b");
  EXPECT_EQ(p.steps[1].branch, 0);
  EXPECT_EQ(p.prediction, Label::kDisinformation);
  EXPECT_EQ(p.tree_id, 3u);
}

TEST(Paths, AbsentFeatureTakesMajorityBranch) {
  model::TreeDump t;
  t.nodes = {split(0, "a", 0.5, 1, 2, 0), leaf(9, 1, 1), leaf(1, 9, 1)};
  t.nodes[0].majority_branch = 1;
  auto p = trace_tree(t, FeatureVector{});
  ASSERT_EQ(p.steps.size(), 1u);
  EXPECT_FALSE(p.steps[0].feature_present);
  EXPECT_EQ(p.steps[0].branch, 1);
}

TEST(Paths, MinorityFiltering) {
  auto f = filter_minority_trees({voting(Label::kDisinformation), voting(Label::kDisinformation),
                                  voting(Label::kNonDisinformation)});
  EXPECT_EQ(f.majority, Label::kDisinformation);
  EXPECT_EQ(f.retained.size(), 2u);
  EXPECT_DOUBLE_EQ(f.confidence(), 2.0 / 3.0);
  auto u = filter_minority_trees({voting(Label::kNonDisinformation), voting(Label::kNonDisinformation)});
  EXPECT_EQ(u.retained.size(), 2u);
  auto tie = filter_minority_trees({voting(Label::kDisinformation), voting(Label::kNonDisinformation)});
  EXPECT_EQ(tie.majority, Label::kNonDisinformation);
  EXPECT_THROW(filter_minority_trees({}), ValidationError);
}

TEST(Paths, ForestYieldsOnePathPerTree) {
  model::ModelConfig c;
  auto m = model::make_classifier(c);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u;
  FeatureVector x;
  for (int i = 0; i < 200; ++i) {
    FeatureVector s;
    s.set(FeatureId{0}, u(rng));
    m->learn_one(s, s.get(FeatureId{0}) > 0.5 ? Label::kDisinformation : Label::kNonDisinformation);
    x = s;
  }
  const auto dump = model::dump_model(*m, c);
  EXPECT_EQ(extract_paths(dump, x).size(), 75u);
  model::ModelConfig g;
  g.kind = model::ModelKind::kGnb;
  EXPECT_THROW(extract_paths(model::dump_model(*model::make_classifier(g), g), x), UnsupportedModelError);
}

TEST(Prompt, Substitution) {
  const auto p = build_prompt("Some text", "disinformation", 0.66667, {"n_chars"});
  EXPECT_NE(p.find("with a confidence of 66.67%"), std::string::npos);
  EXPECT_NE(build_prompt("t", "x", 0.5, {}).find("features are: []."), std::string::npos);
}

TEST(Prompt, RoundTrip) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.5, 1.0);
  const std::vector<std::string> pool = {"n_chars", "flesch", "article_stub", "ng:breaking", "size_diff"};
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> features;
    for (const auto& f : pool) {
      if (u(rng) > 0.75) features.push_back(f);
    }
    const std::string text = i % 3 == 0 ? "multi\nline text, with [brackets]" : "plain text " + std::to_string(i);
    const std::string category = i % 2 ? "disinformation" : "non-disinformation";
    const double conf = u(rng);
    auto parsed = parse_prompt(build_prompt(text, category, conf, features));
    ASSERT_TRUE(parsed);
    EXPECT_EQ(parsed->text, text);
    EXPECT_EQ(parsed->category, category);
    EXPECT_EQ(parsed->features, features);
    EXPECT_NEAR(parsed->percent, conf * 100, 0.005 + 1e-9);
  }
}

TEST(Generation, NoEndpointFallsBack) {
  LlmConfig c;
  EXPECT_EQ(make_generator(c), nullptr);
  auto g = generate_text(nullptr, "p", "fallback");
  EXPECT_EQ(g.text, "fallback");
  EXPECT_EQ(g.generator, "template-fallback");
}

TEST(Generation, MockEndpoint) {
  httplib::Server srv;
  std::string seen_model;
  srv.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    seen_model = nlohmann::json::parse(req.body).at("model");
    res.set_content(R"({"choices":[{"message":{"role":"assistant","content":"ok"}}]})", "application/json");
  });
  const int port = srv.bind_to_any_port("127.0.0.1");
  std::thread th([&] { srv.listen_after_bind(); });
  srv.wait_until_ready();
  LlmConfig c;
  c.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
  auto gen = make_generator(c);
  auto g = generate_text(gen.get(), "prompt", "fallback");
  srv.stop();
  th.join();
  EXPECT_EQ(g.text, "ok");
  EXPECT_EQ(g.generator, "llm");
  EXPECT_EQ(seen_model, "gpt-3.5-turbo");
}

TEST(Generation, UnreachableEndpointFallsBack) {
  LlmConfig c;
  c.endpoint = "http://127.0.0.1:1/v1/chat/completions";
  c.timeout = std::chrono::milliseconds(300);
  auto gen = make_generator(c);
  EXPECT_EQ(generate_text(gen.get(), "p", "fb").generator, "template-fallback");
}

TEST(Generation, RecordedResponses) {
  RecordedResponses r;
  r.add("p", "recorded");
  EXPECT_EQ(generate_text(&r, "p", "fb").text, "recorded");
  EXPECT_EQ(generate_text(&r, "q", "fb").text, "fb");
}

TEST(Explanation, FallbackNamesClassAndTopFeatures) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    pipeline::PredictionRecord r;
    r.event_id = "e" + std::to_string(i);
    r.predicted = rng() % 2 ? Label::kDisinformation : Label::kNonDisinformation;
    r.confidence = 0.5 + static_cast<double>(rng() % 50) / 100.0;
    for (int k = 0; k < 3; ++k) {
      pipeline::TopFeature t;
      t.base_feature = 1 + rng() % 19;
      t.name = std::string(history::kChannelNames[t.base_feature - 1]);
      r.top_features.push_back(t);
    }
    auto e = explain_prediction(r, nullptr);
    generate(e, nullptr);
    EXPECT_EQ(e.generator, "template-fallback");
    EXPECT_NE(e.text.find(class_name(r.predicted)), std::string::npos);
    for (const auto& t : r.top_features) EXPECT_NE(e.text.find(t.name), std::string::npos);
    EXPECT_EQ(to_json(e).at("status"), "ready");
  }
}

TEST(Feedback, RecordsOnceAndLogs) {
  const auto path = std::filesystem::temp_directory_path() / "wikistream_feedback_test.jsonl";
  std::filesystem::remove(path);
  FeedbackStore store(path.string());
  FeedbackRecord r;
  r.event_id = "e1";
  r.expert_label = Label::kDisinformation;
  r.prior_prediction = Label::kDisinformation;
  store.record(r);
  EXPECT_EQ(store.find("e1")->verdict(), "validated");
  EXPECT_THROW(store.record(r), ConflictError);
  store.mark_applied("e1");
  EXPECT_THROW(store.mark_applied("e1"), std::logic_error);
  EXPECT_THROW(store.mark_applied("e2"), NotFoundError);
  EXPECT_EQ(store.applied_count(), 1u);
  r.event_id = "e2";
  r.prior_prediction = Label::kNonDisinformation;
  EXPECT_EQ(store.record(r).verdict(), "corrected");
  std::ifstream in(path);
  std::size_t lines = 0;
  for (std::string l; std::getline(in, l);) ++lines;
  EXPECT_EQ(lines, 3u);
  std::filesystem::remove(path);
}
