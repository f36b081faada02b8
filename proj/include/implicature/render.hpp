#pragma once

#include <string>

#include "implicature/engine.hpp"

namespace implicature {

/// Indented child-per-line rendering, four spaces per level.
std::string render_node(const Graph& g, NodeRef n, int indent = 0);
std::string render_evidence(const Graph& g, const EvidenceFact& e, int indent = 0);
/// Top-level nodes followed by evidence.
std::string render_graph(const Graph& g);
std::string render_trace(const InferenceResult& r);
/// Space lines then the node, for every non-belief, non-sentiment node
/// that is in at least one space.
std::string render_by_spaces(const InferenceResult& r);

/// One-line structural description, e.g. "writer -S (MoveOn badFor Senator McCain)".
std::string describe(const Graph& g, NodeRef n);

}  // namespace implicature
