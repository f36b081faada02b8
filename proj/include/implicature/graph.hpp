#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "implicature/types.hpp"

namespace implicature {

/// Errors that indicate a bug or a malformed graph rather than bad user input.
class EngineError : public std::runtime_error {
 public:
  EngineError(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct NodeRef {
  std::uint32_t index = UINT32_MAX;

  bool valid() const { return index != UINT32_MAX; }
  auto operator<=>(const NodeRef&) const = default;
};

enum class NodeType : std::uint8_t {
  Anim,
  Thing,
  State,
  Event,
  Gfbf,
  Influencer,
  IdeaOf,
  PX,
  Agreement,
  PrivateState,
};

enum class Property : std::uint8_t {
  None,
  IsBad,
  IsGood,
  IsTrue,
  IsFalse,
  Should,
  ShouldNot,
  Substantial,
};

enum class EdgeLabel : std::uint8_t {
  Source,
  Target,
  Agent,
  Object,
  GoodFor,
  BadFor,
  IdeaObject,
  WithWhom,
  Experiencer,
  X,
};

std::string_view to_string(NodeType t);
std::string_view to_string(Property p);
std::string_view to_string(EdgeLabel l);
std::optional<NodeType> parse_node_type(std::string_view s);
std::optional<Property> parse_property(std::string_view s);
std::optional<EdgeLabel> parse_edge_label(std::string_view s);

struct Edge {
  EdgeLabel label;
  NodeRef to;
  auto operator<=>(const Edge&) const = default;
};

/// Everything needed to intern a node. anchor and lex_key are display data
/// and do not take part in identity.
struct NodeSpec {
  NodeType type = NodeType::Anim;
  std::optional<Attitude> attitude;
  std::optional<Polarity> polarity;
  Property property = Property::None;
  std::optional<Influence> influence;
  std::string name;  // entities only
  std::vector<Edge> children;

  std::string anchor;
  std::string lex_key;

  static NodeSpec entity(std::string name, bool thing, std::string lex_key = {});
  static NodeSpec gfbf(NodeRef agent, Effect effect, NodeRef object, std::string anchor = {},
                       std::string lex_key = {});
  static NodeSpec influencer(NodeRef agent, Influence kind, NodeRef target, std::string anchor = {},
                             std::string lex_key = {});
  static NodeSpec idea_of(NodeRef gfbf);
  static NodeSpec px(Property property, NodeRef x);
  static NodeSpec agreement(NodeRef source, Polarity polarity, NodeRef with_whom, NodeRef target);
  static NodeSpec private_state(NodeRef source, Attitude attitude, Polarity polarity, NodeRef target,
                                Property property = Property::None, std::string anchor = {});
};

/// Identity of a node: type, attributes and labeled children. Children are
/// already interned, so comparing their refs compares their structure.
struct Signature {
  NodeType type;
  std::int8_t attitude;
  std::int8_t polarity;
  Property property;
  std::int8_t influence;
  std::string name;
  std::vector<Edge> children;  // sorted by label

  bool operator==(const Signature&) const = default;
};

struct SignatureHash {
  std::size_t operator()(const Signature& s) const;
};

Signature make_signature(const NodeSpec& spec);

struct Node {
  NodeSpec spec;
  int display_id = 0;
  bool from_input = false;

  NodeType type() const { return spec.type; }
  std::optional<NodeRef> child(EdgeLabel label) const;
  NodeRef source() const { return *child(EdgeLabel::Source); }
  NodeRef target() const { return *child(EdgeLabel::Target); }
  NodeRef agent() const { return *child(EdgeLabel::Agent); }
  NodeRef object() const { return *child(EdgeLabel::Object); }
  Effect effect() const { return child(EdgeLabel::GoodFor) ? Effect::GoodFor : Effect::BadFor; }
  bool is_entity() const { return spec.type == NodeType::Anim || spec.type == NodeType::Thing; }
  bool is_private_state() const { return spec.type == NodeType::PrivateState; }
  /// believesTrue or sentiment private state: the kinds that define spaces.
  bool is_space_step() const;
};

/// Out-of-space blocker. Never a member of any space.
struct EvidenceFact {
  int display_id = 0;
  std::optional<NodeRef> holder;
  Attitude attitude = Attitude::Intends;
  Polarity polarity = Polarity::Positive;
  bool substantial = false;  // believesTrue evidence always speaks about substantial
  NodeRef target;            // gfbf, or ideaOf(gfbf) for sentiment evidence
  bool synthesized = false;

  bool same_fact(const EvidenceFact& o) const {
    return holder == o.holder && attitude == o.attitude && polarity == o.polarity &&
           substantial == o.substantial && target == o.target;
  }
};

/// A node template whose children may themselves be templates. Used by
/// rules to ask whether a conclusion already exists without creating it.
struct Term {
  NodeSpec head;
  std::vector<EdgeLabel> arg_labels;
  std::vector<Term> args;

  Term() = default;
  Term(NodeSpec spec) : head(std::move(spec)) {}  // NOLINT(implicit)
  Term& with(EdgeLabel label, Term arg);
};

class Graph {
 public:
  explicit Graph(int first_display_id = 1) : next_id_(first_display_id) {}

  /// Returns the existing node with this structure or creates one. Throws
  /// EngineError("IllFormedNode") when the spec breaks a type invariant.
  NodeRef intern(const NodeSpec& spec, bool from_input = false);
  std::optional<NodeRef> find(const NodeSpec& spec) const;

  std::optional<NodeRef> lookup(const Term& t) const;
  NodeRef realize(const Term& t, bool from_input = false);

  NodeRef entity(const std::string& name, bool thing = false) {
    return intern(NodeSpec::entity(name, thing));
  }
  std::optional<NodeRef> find_entity(const std::string& name) const;

  const Node& node(NodeRef r) const { return nodes_.at(r.index); }
  Node& mutable_node(NodeRef r) { return nodes_.at(r.index); }
  std::size_t size() const { return nodes_.size(); }
  std::vector<NodeRef> all() const;
  const std::vector<Edge>& parents(NodeRef r) const { return parents_.at(r.index); }

  /// Nodes placed at the outermost level: writer beliefs and sentiments
  /// plus writer agreements concluded there. Monotone during inference.
  bool place_top(NodeRef r);
  bool is_top(NodeRef r) const { return top_set_.contains(r); }
  const std::vector<NodeRef>& top() const { return top_; }
  /// Top-level writer believesTrue/sentiment nodes that are not excluded.
  std::vector<NodeRef> roots() const;

  /// Keeps fact.display_id when it is already set; duplicates collapse.
  const EvidenceFact& add_evidence(EvidenceFact fact);
  const std::vector<EvidenceFact>& evidence() const { return evidence_; }

  /// Excluded nodes (resolved influencer chains and their old wrappers) are
  /// invisible to matching and to space computation.
  void exclude(NodeRef r) { excluded_.insert(r); }
  bool excluded(NodeRef r) const { return excluded_.contains(r); }
  const std::set<NodeRef>& excluded_nodes() const { return excluded_; }

  /// Second-role gfbf derived from a lexicon entry. Display only.
  void set_extra_role(NodeRef gfbf, NodeRef derived) { extra_roles_[gfbf] = derived; }
  std::optional<NodeRef> extra_role(NodeRef gfbf) const;
  const std::map<NodeRef, NodeRef>& extra_roles() const { return extra_roles_; }
  /// Second-role filler waiting for expansion (from the 4th element of a gfbf line).
  void set_role_filler(NodeRef gfbf, NodeRef filler) { fillers_[gfbf] = filler; }
  const std::map<NodeRef, NodeRef>& role_fillers() const { return fillers_; }

  int next_display_id() const { return next_id_; }
  int allocate_display_id() { return next_id_++; }
  void set_next_display_id(int id) { next_id_ = id; }

  /// Bumped on every structural change (new node or new top placement).
  std::uint64_t generation() const { return generation_; }

  /// Permits believesTrue toward entities and ideas (extended belief spaces).
  void set_extended_belief_targets(bool on) { extended_targets_ = on; }

 private:
  void validate(const NodeSpec& spec) const;

  std::vector<Node> nodes_;
  std::vector<std::vector<Edge>> parents_;
  std::unordered_map<Signature, NodeRef, SignatureHash> table_;
  std::vector<NodeRef> top_;
  std::set<NodeRef> top_set_;
  std::vector<EvidenceFact> evidence_;
  std::set<NodeRef> excluded_;
  std::map<NodeRef, NodeRef> extra_roles_;
  std::map<NodeRef, NodeRef> fillers_;
  int next_id_;
  std::uint64_t generation_ = 0;
  bool extended_targets_ = false;
};

/// Structural identity within one graph.
Signature structural_signature(const Graph& g, NodeRef n);

/// Graph-independent structural rendering, e.g.
/// "ps(B,+,anim(writer),gfbf(bad,anim(MoveOn),anim(McCain)))". Equal strings
/// iff the nodes are structurally equal, even across graphs.
std::string canonical(const Graph& g, NodeRef n);
std::string canonical(const Graph& g, const EvidenceFact& e);

struct SentenceAnnotation;
struct Lexicon;

/// Input nodes are marked from_input; lines not targeted by another line
/// become top-level roots.
struct InputGraph {
  Graph graph;
  std::map<std::string, NodeRef> line_nodes;  // annotation id -> node
  std::map<std::string, int> evidence_ids;    // annotation id -> evidence display id
};

InputGraph build_input_graph(const SentenceAnnotation& sent, const Lexicon& lex,
                             int first_display_id = 1);

}  // namespace implicature

template <>
struct std::hash<implicature::NodeRef> {
  std::size_t operator()(const implicature::NodeRef& r) const noexcept { return r.index; }
};
