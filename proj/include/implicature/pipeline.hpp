#pragma once

#include <string>
#include <vector>

#include "implicature/annotation.hpp"
#include "implicature/engine.hpp"
#include "implicature/lexicon.hpp"

#include <json.hpp>

namespace implicature {

struct SentenceResult {
  SentenceAnnotation sentence;
  InferenceResult result;
};

/// Runs every sentence independently. Display ids keep counting across
/// sentences so numbers are unique within one run.
std::vector<SentenceResult> analyze(const AnnotationDoc& doc, const Lexicon& lex, const Config& cfg = {});

/// Copy of doc with the polarity of line `id` set to `polarity` in every
/// sentence that has it. Throws InputError when no sentence has a polar line
/// with that id.
AnnotationDoc with_polarity(const AnnotationDoc& doc, const std::string& id, Polarity polarity);

/// Descriptions of the top-level facts, sorted.
std::vector<std::string> root_facts(const Graph& g);

struct FactDiff {
  std::string sentence;
  std::vector<std::string> only_before;
  std::vector<std::string> only_after;
};

std::vector<FactDiff> diff_root_facts(const std::vector<SentenceResult>& before,
                                      const std::vector<SentenceResult>& after);
std::string render_diff(const std::vector<FactDiff>& diff);

nlohmann::ordered_json to_json(const std::vector<SentenceResult>& results);
nlohmann::ordered_json to_json(const Graph& g);
/// Rebuilds a graph from the "graph" object written by to_json.
Graph graph_from_json(const nlohmann::ordered_json& j);

}  // namespace implicature
