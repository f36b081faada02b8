#pragma once

#include <optional>
#include <string>
#include <vector>

#include "implicature/graph.hpp"

namespace implicature {

struct SpaceStep {
  NodeRef source;
  Attitude attitude;
  Polarity polarity;

  auto operator<=>(const SpaceStep&) const = default;
};

/// A step list. The empty list is the outermost (writer) level.
using Context = std::vector<SpaceStep>;

struct SpaceDescriptor {
  Context steps;
  std::vector<NodeRef> defining_path;  // root first; the last node's target is the member
  bool from_input = false;             // every node on the defining path came from the input

  bool operator==(const SpaceDescriptor& o) const { return steps == o.steps; }
};

SpaceStep step_of(const Graph& g, NodeRef private_state);
bool has_negative_belief(const Context& c);
bool has_sentiment(const Context& c);
/// Every sentiment step replaced by a positive belief of the same source.
Context belief_variant(const Context& c);

/// e.g. "writer +B MoveOn -S"
std::string render_steps(const Graph& g, const Context& c);

/// Spaces the node is a member of, sorted by step list. Root nodes define
/// spaces but are in none.
std::vector<SpaceDescriptor> spaces_of(const Graph& g, NodeRef node);
/// spaces_of plus the empty context when the node sits at the top level.
std::vector<Context> contexts_of(const Graph& g, NodeRef node);
bool in_context(const Graph& g, NodeRef node, const Context& c);

/// Wraps node in the chain named by c and records the outermost node at
/// the top level. Returns the outermost node.
NodeRef wrap(Graph& g, const Context& c, NodeRef node);

/// Adding prop to c would clash: either the innermost step is a negative
/// belief over prop, or an opposite-polarity attitude of the same source,
/// type and target is already in c. Checked at every nesting level of the
/// wrapping, since each intermediate node lands in a shorter context.
bool would_contradict(const Graph& g, const Context& c, const Term& prop);

enum class BlockCause { Evidence, SpaceContradiction, NegativeBeliefPath, NoAssumptionBasis };
std::string_view to_string(BlockCause c);

struct ExtensionBlock {
  Context context;
  BlockCause cause;
  std::string detail;
};

struct Extension {
  bool had_common_space = false;
  std::vector<Context> placed;  // contexts the As and Qs were added to
  std::vector<NodeRef> created; // nodes that did not exist before
  std::vector<NodeRef> existing;
  std::vector<ExtensionBlock> blocked;
};

struct ExtendOptions {
  bool extended_belief_spaces = false;
  /// Explicit contexts instead of the common contexts of ps.
  std::optional<std::vector<Context>> contexts;
};

/// Places as (first) and qs into every context common to ps and into the
/// belief variant of each such context that has a sentiment step; ps go to
/// the variant too. Contexts with a negative belief are skipped and so are
/// contexts where any addition would contradict.
Extension extend_spaces(Graph& g, const std::vector<NodeRef>& ps, const std::vector<Term>& as,
                        const std::vector<Term>& qs, const ExtendOptions& opts = {});

struct Contradiction {
  Context context;
  NodeRef a;
  NodeRef b;
};

/// All pairs violating the no-opposite-polarity invariant, over every space.
std::vector<Contradiction> find_contradictions(const Graph& g);

}  // namespace implicature
