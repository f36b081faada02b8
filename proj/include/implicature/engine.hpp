#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "implicature/composition.hpp"
#include "implicature/graph.hpp"
#include "implicature/lexicon.hpp"
#include "implicature/spaces.hpp"

namespace implicature {

struct Config {
  std::vector<std::string> rule_order;  // empty: the default order
  bool fire_once = true;                // rule5source / rule5agent
  bool extended_belief_spaces = false;
  int max_iterations = 50;
};

/// One way a rule's preconditions matched.
struct Binding {
  std::string rule;
  std::vector<NodeRef> ps;
  std::vector<Term> as;
  std::vector<Term> qs;
  /// Fixed placement instead of the common contexts of ps (rule10).
  std::optional<std::vector<Context>> contexts;
  /// The precondition itself stands as the basis of every assumption.
  bool grounded = false;
  std::string key;
};

struct Rule {
  std::string name;
  std::vector<std::string> preconditions;  // display schema
  std::vector<std::string> assumptions;
  std::vector<std::string> conclusions;
  bool input_only = false;
  bool fire_once = false;
  std::function<std::vector<Binding>(const Graph&, const Lexicon&)> matcher;
};

/// The rules in their default order.
const std::vector<Rule>& rule_catalog();
const Rule& rule_named(const std::string& name);
std::vector<std::string> default_rule_order();

struct BlockReport {
  std::string rule;
  std::vector<NodeRef> binding;
  BlockCause cause;
  std::string context;  // rendered step list; empty for firing-wide causes
  std::string detail;

  auto key() const { return std::tie(rule, binding, cause, context, detail); }
  bool operator==(const BlockReport& o) const { return key() == o.key(); }
};

struct TraceEvent {
  int pass = 0;
  std::string rule;
  std::vector<NodeRef> preconditions;
  std::vector<NodeRef> assumptions;
  std::vector<NodeRef> conclusions;
  std::vector<NodeRef> created;
  std::vector<NodeRef> existing;
  std::vector<BlockReport> blocks;
  /// First display id allocated after the firing began; older nodes existed at the time.
  int id_floor = 0;
};

struct FireResult {
  std::vector<NodeRef> created;
  std::vector<NodeRef> existing;
  std::vector<NodeRef> assumptions;
  std::vector<NodeRef> conclusions;
  std::vector<BlockReport> blocks;
};

std::vector<Binding> match(const Rule& rule, const Graph& g, const Lexicon& lex);

/// A basis for assuming prop in context c, or none.
std::optional<NodeRef> assumption_basis(const Graph& g, const Term& prop, const Context& c);

/// The evidence fact that rules out prop, if any.
std::optional<EvidenceFact> blocked_by_evidence(const Graph& g, const Term& prop);

FireResult fire(const Rule& rule, const Binding& b, Graph& g, const Config& cfg);

struct InferenceResult {
  Graph graph;
  Composition composition;
  std::vector<NodeRef> extra_roles;
  std::vector<TraceEvent> trace;
  std::vector<BlockReport> blocks;
  int passes = 0;
};

/// Ordered passes of every rule until a pass changes nothing. Throws
/// EngineError("IterationLimitExceeded") after cfg.max_iterations passes.
InferenceResult run_to_fixpoint(Graph g, const Lexicon& lex, const Config& cfg = {});

/// Composition followed by inference.
InferenceResult infer(Graph g, const Lexicon& lex, const Config& cfg = {});

}  // namespace implicature
