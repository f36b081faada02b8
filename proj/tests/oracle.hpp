#pragma once
// Test-side reading of the JSON export. Facts and spaces here are computed
// from the exported node table alone, without the library's own renderers or
// space enumeration, so tests can compare the two.
#include <json.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "implicature/engine.hpp"
#include "implicature/pipeline.hpp"

namespace oracle {

struct JNode {
  int id = 0;
  std::string type, att, pol, prop, infl, name;
  bool from_input = false, top = false, excluded = false;
  std::map<std::string, int> kids;
};

struct JEvidence {
  int holder = 0;  // 0: none
  std::string att, pol;
  bool substantial = false;
  int target = 0;
};

struct JGraph {
  std::map<int, JNode> nodes;
  std::vector<JEvidence> evidence;
  std::map<int, std::vector<int>> ps_parents;  // node -> private states targeting it
  std::string text;
  nlohmann::ordered_json sentence;             // the whole exported sentence
};

JGraph load(const nlohmann::ordered_json& sentence);

/// Structural description, e.g. "{writer +B <MoveOn badFor Senator McCain>}".
std::string fact(const JGraph& g, int id);
/// Facts of the non-excluded top nodes.
std::set<std::string> top_facts(const JGraph& g);
/// All nodes whose fact equals f.
std::vector<int> find(const JGraph& g, const std::string& f);
bool has(const JGraph& g, const std::string& f);

/// Step lists ("writer +B MoveOn -S") of every belief/sentiment space holding
/// id, found by walking private-state parents up to a top node. "" is top.
std::set<std::string> spaces(const JGraph& g, int id);

/// Pairs of opposite-polarity private states sharing a space, source,
/// attitude and target. Empty when the graph is consistent.
std::vector<std::string> contradictions(const JGraph& g);

std::string corpus(const std::string& file);
std::string slurp(const std::string& path);
implicature::Lexicon corpus_lexicon();
std::vector<implicature::SentenceResult> run_file(const std::string& file, const implicature::Config& cfg = {});
std::vector<JGraph> export_all(const std::vector<implicature::SentenceResult>& r);
std::vector<JGraph> run_and_export(const std::string& file, const implicature::Config& cfg = {});

}  // namespace oracle
