#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

#include "implicature/pipeline.hpp"
#include "implicature/render.hpp"
#include "oracle.hpp"

using namespace implicature;

namespace {

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

int run_cli(const std::string& args, std::string* out = nullptr) {
  const std::string tmp = ::testing::TempDir() + "opinfer_out.txt";
  std::string cmd = std::string(OPINFER_EXE) + " " + args + " > " + tmp + " 2>&1";
  int status = std::system(cmd.c_str());
  if (out) *out = oracle::slurp(tmp);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Pipeline, JsonRoundTrip) {
  for (const char* f : {"moveon.ann", "virus.ann", "deprive.ann", "taxes.ann", "tree_didnt.ann"}) {
    auto r = oracle::run_file(f);
    auto j = to_json(r);
    EXPECT_EQ(j["format_version"], 1);
    const auto& gj = j["sentences"][0]["graph"];
    Graph back = graph_from_json(gj);
    EXPECT_EQ(to_json(back).dump(), gj.dump()) << f;
    EXPECT_EQ(render_graph(back), render_graph(r.at(0).result.graph)) << f;
    EXPECT_EQ(root_facts(back), root_facts(r.at(0).result.graph)) << f;
  }
}

TEST(Pipeline, MalformedJsonRejected) {
  auto j = to_json(oracle::run_file("moveon.ann"))["sentences"][0]["graph"];
  j["top"].push_back(9999);
  EXPECT_THROW(graph_from_json(j), EngineError);
}

TEST(Pipeline, DisplayIdsContinueAcrossSentences) {
  auto doc = parse_document(oracle::slurp(oracle::corpus("moveon.ann")) + "\n" +
                                oracle::slurp(oracle::corpus("tree.ann")),
                            "two");
  auto r = analyze(doc, oracle::corpus_lexicon());
  ASSERT_EQ(r.size(), 2u);
  int last = 0;
  for (NodeRef n : r[0].result.graph.all()) last = std::max(last, r[0].result.graph.node(n).display_id);
  for (NodeRef n : r[1].result.graph.all()) EXPECT_GT(r[1].result.graph.node(n).display_id, last);
}

TEST(Pipeline, WhatIf) {
  auto doc = parse_document(oracle::slurp(oracle::corpus("tree.ann")), "tree.ann");
  EXPECT_THROW(with_polarity(doc, "E1", Polarity::Negative), InputError);
  EXPECT_THROW(with_polarity(doc, "S9", Polarity::Negative), InputError);
  auto flipped = with_polarity(doc, "S1", Polarity::Positive);
  const auto& lex = oracle::corpus_lexicon();
  auto diff = diff_root_facts(analyze(doc, lex), analyze(flipped, lex));
  auto text = render_diff(diff);
  EXPECT_TRUE(contains(text, "\"Mother is upset that the tree fell on the boy\"\n")) << text;
  EXPECT_TRUE(contains(text, "\n- ")) << text;
  EXPECT_TRUE(contains(text, "\n+ ")) << text;
  EXPECT_EQ(render_diff(diff_root_facts(analyze(doc, lex), analyze(doc, lex))), "");
}

TEST(Pipeline, Rendering) {
  auto m = oracle::run_file("moveon.ann");
  auto text = render_graph(m.at(0).result.graph);
  EXPECT_TRUE(contains(text, "writer positive believesTrue\n    3 MoveOn attack Senator McCain\n")) << text;
  EXPECT_TRUE(contains(text, "writer disagrees with MoveOn that\n")) << text;
  EXPECT_TRUE(contains(text, "\n23 writer negative sentiment\n    2 MoveOn\n")) << text;

  auto v = render_graph(oracle::run_file("virus.ann").at(0).result.graph);
  EXPECT_TRUE(contains(v, "There is evidence that the following is not intentional:\n    9 the tech staff goodFor the virus"));
  EXPECT_TRUE(contains(v, "There is evidence that the following is substantial\n"));

  auto t = oracle::run_file("tree.ann");
  auto spaces = render_by_spaces(t.at(0).result);
  EXPECT_TRUE(contains(spaces, "writer +B mother -S]\n2 the tree\n")) << spaces;
  EXPECT_TRUE(contains(spaces, "From Input: [")) << spaces;
  auto trace = render_trace(t.at(0).result);
  EXPECT_TRUE(contains(trace, "[rule1]  (pass 1)\n")) << trace;
  EXPECT_TRUE(contains(trace, "==> Infer Node:\n")) << trace;
}

TEST(Pipeline, CliExitCodes) {
  std::string out;
  EXPECT_EQ(run_cli("--input " + oracle::corpus("moveon.ann"), &out), 0);
  EXPECT_TRUE(contains(out, "\"Is it no surprise then that MoveOn would attack Senator McCain.!?\"\n")) << out;

  EXPECT_EQ(run_cli("--input " + oracle::corpus("empty.ann"), &out), 0);
  EXPECT_EQ(out, "");

  EXPECT_EQ(run_cli("--input " + oracle::corpus("tree.ann") + " --json " + ::testing::TempDir() + "tree.json", &out), 0);
  auto j = nlohmann::ordered_json::parse(oracle::slurp(::testing::TempDir() + "tree.json"));
  EXPECT_EQ(j["format_version"], 1);

  const std::string bad = ::testing::TempDir() + "bad_input.ann";
  std::ofstream(bad) << "\"s\"\nE1 gfbf <Ann, badFor (hit), Bob>\nS1 subjectivity <writer, negative sentiment (x), E7>\n";
  EXPECT_EQ(run_cli("--input " + bad, &out), 1);
  EXPECT_TRUE(contains(out, "bad_input.ann:3: DanglingReference")) << out;

  EXPECT_EQ(run_cli("--input " + oracle::corpus("tree.ann") + " --rule-order rule1,rule99", &out), 1);
  EXPECT_EQ(run_cli("--input " + oracle::corpus("moveon.ann") + " --max-iterations 1", &out), 2);
  EXPECT_TRUE(contains(out, "IterationLimitExceeded")) << out;

  EXPECT_EQ(run_cli("--input " + oracle::corpus("tree.ann") + " --what-if S1=positive", &out), 0);
  EXPECT_TRUE(contains(out, "\n+ ")) << out;
}
