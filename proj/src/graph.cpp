#include "implicature/graph.hpp"

#include <algorithm>
#include <sstream>

#include "implicature/annotation.hpp"
#include "implicature/lexicon.hpp"

namespace implicature {

std::string_view to_string(NodeType t) {
  switch (t) {
    case NodeType::Anim: return "anim";
    case NodeType::Thing: return "thing";
    case NodeType::State: return "state";
    case NodeType::Event: return "event";
    case NodeType::Gfbf: return "gfbf";
    case NodeType::Influencer: return "influencer";
    case NodeType::IdeaOf: return "ideaOf";
    case NodeType::PX: return "p_x";
    case NodeType::Agreement: return "agreement";
    case NodeType::PrivateState: return "privateState";
  }
  return "?";
}

std::string_view to_string(Property p) {
  switch (p) {
    case Property::None: return "none";
    case Property::IsBad: return "isBad";
    case Property::IsGood: return "isGood";
    case Property::IsTrue: return "isTrue";
    case Property::IsFalse: return "isFalse";
    case Property::Should: return "should";
    case Property::ShouldNot: return "shouldNot";
    case Property::Substantial: return "substantial";
  }
  return "?";
}

std::string_view to_string(EdgeLabel l) {
  switch (l) {
    case EdgeLabel::Source: return "source";
    case EdgeLabel::Target: return "target";
    case EdgeLabel::Agent: return "agent";
    case EdgeLabel::Object: return "object";
    case EdgeLabel::GoodFor: return "goodFor";
    case EdgeLabel::BadFor: return "badFor";
    case EdgeLabel::IdeaObject: return "ideaObject";
    case EdgeLabel::WithWhom: return "withWhom";
    case EdgeLabel::Experiencer: return "experiencer";
    case EdgeLabel::X: return "x";
  }
  return "?";
}

namespace {

template <class E, std::size_t N>
std::optional<E> parse_enum(std::string_view s, const E (&values)[N]) {
  for (E v : values)
    if (to_string(v) == s) return v;
  return std::nullopt;
}

}  // namespace

std::optional<NodeType> parse_node_type(std::string_view s) {
  static constexpr NodeType all[] = {NodeType::Anim,   NodeType::Thing,      NodeType::State,
                                     NodeType::Event,  NodeType::Gfbf,       NodeType::Influencer,
                                     NodeType::IdeaOf, NodeType::PX,         NodeType::Agreement,
                                     NodeType::PrivateState};
  return parse_enum(s, all);
}

std::optional<Property> parse_property(std::string_view s) {
  static constexpr Property all[] = {Property::None,    Property::IsBad,  Property::IsGood,
                                     Property::IsTrue,  Property::IsFalse, Property::Should,
                                     Property::ShouldNot, Property::Substantial};
  return parse_enum(s, all);
}

std::optional<EdgeLabel> parse_edge_label(std::string_view s) {
  static constexpr EdgeLabel all[] = {EdgeLabel::Source,     EdgeLabel::Target,   EdgeLabel::Agent,
                                      EdgeLabel::Object,     EdgeLabel::GoodFor,  EdgeLabel::BadFor,
                                      EdgeLabel::IdeaObject, EdgeLabel::WithWhom, EdgeLabel::Experiencer,
                                      EdgeLabel::X};
  return parse_enum(s, all);
}

// ---- specs ----

NodeSpec NodeSpec::entity(std::string name, bool thing, std::string lex_key) {
  NodeSpec s;
  s.type = thing ? NodeType::Thing : NodeType::Anim;
  s.name = std::move(name);
  s.lex_key = std::move(lex_key);
  return s;
}

NodeSpec NodeSpec::gfbf(NodeRef agent, Effect effect, NodeRef object, std::string anchor,
                        std::string lex_key) {
  NodeSpec s;
  s.type = NodeType::Gfbf;
  s.children = {{EdgeLabel::Agent, agent},
                {EdgeLabel::Object, object},
                {effect == Effect::GoodFor ? EdgeLabel::GoodFor : EdgeLabel::BadFor, object}};
  s.anchor = std::move(anchor);
  s.lex_key = std::move(lex_key);
  return s;
}

NodeSpec NodeSpec::influencer(NodeRef agent, Influence kind, NodeRef target, std::string anchor,
                              std::string lex_key) {
  NodeSpec s;
  s.type = NodeType::Influencer;
  s.influence = kind;
  s.children = {{EdgeLabel::Agent, agent}, {EdgeLabel::Target, target}};
  s.anchor = std::move(anchor);
  s.lex_key = std::move(lex_key);
  return s;
}

NodeSpec NodeSpec::idea_of(NodeRef gfbf) {
  NodeSpec s;
  s.type = NodeType::IdeaOf;
  s.children = {{EdgeLabel::IdeaObject, gfbf}};
  return s;
}

NodeSpec NodeSpec::px(Property property, NodeRef x) {
  NodeSpec s;
  s.type = NodeType::PX;
  s.property = property;
  s.children = {{EdgeLabel::X, x}};
  return s;
}

NodeSpec NodeSpec::agreement(NodeRef source, Polarity polarity, NodeRef with_whom, NodeRef target) {
  NodeSpec s;
  s.type = NodeType::Agreement;
  s.polarity = polarity;
  s.children = {{EdgeLabel::Source, source}, {EdgeLabel::WithWhom, with_whom}, {EdgeLabel::Target, target}};
  return s;
}

NodeSpec NodeSpec::private_state(NodeRef source, Attitude attitude, Polarity polarity, NodeRef target,
                                 Property property, std::string anchor) {
  NodeSpec s;
  s.type = NodeType::PrivateState;
  s.attitude = attitude;
  s.polarity = polarity;
  s.property = property;
  s.children = {{EdgeLabel::Source, source}, {EdgeLabel::Target, target}};
  s.anchor = std::move(anchor);
  return s;
}

Signature make_signature(const NodeSpec& spec) {
  Signature sig{spec.type,
                static_cast<std::int8_t>(spec.attitude ? static_cast<int>(*spec.attitude) : -1),
                static_cast<std::int8_t>(spec.polarity ? static_cast<int>(*spec.polarity) : -1),
                spec.property,
                static_cast<std::int8_t>(spec.influence ? static_cast<int>(*spec.influence) : -1),
                spec.type == NodeType::Anim || spec.type == NodeType::Thing ? spec.name : std::string(),
                spec.children};
  std::sort(sig.children.begin(), sig.children.end());
  return sig;
}

std::size_t SignatureHash::operator()(const Signature& s) const {
  std::size_t h = std::hash<std::string>{}(s.name);
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(static_cast<std::size_t>(s.type));
  mix(static_cast<std::size_t>(s.attitude + 2));
  mix(static_cast<std::size_t>(s.polarity + 2));
  mix(static_cast<std::size_t>(s.property));
  mix(static_cast<std::size_t>(s.influence + 2));
  for (const auto& e : s.children) {
    mix(static_cast<std::size_t>(e.label));
    mix(e.to.index);
  }
  return h;
}

std::optional<NodeRef> Node::child(EdgeLabel label) const {
  for (const auto& e : spec.children)
    if (e.label == label) return e.to;
  return std::nullopt;
}

bool Node::is_space_step() const {
  return spec.type == NodeType::PrivateState &&
         (spec.attitude == Attitude::BelievesTrue || spec.attitude == Attitude::Sentiment);
}

Term& Term::with(EdgeLabel label, Term arg) {
  arg_labels.push_back(label);
  args.push_back(std::move(arg));
  return *this;
}

// ---- graph ----

void Graph::validate(const NodeSpec& s) const {
  auto fail = [&](const std::string& why) {
    throw EngineError("IllFormedNode", std::string(to_string(s.type)) + ": " + why);
  };
  std::map<EdgeLabel, NodeRef> kids;
  for (const auto& e : s.children) {
    if (e.to.index >= nodes_.size()) fail("child refers to an unknown node");
    if (!kids.emplace(e.label, e.to).second) fail("duplicate edge label " + std::string(to_string(e.label)));
  }
  auto type_of = [&](EdgeLabel l) -> std::optional<NodeType> {
    auto it = kids.find(l);
    if (it == kids.end()) return std::nullopt;
    return nodes_[it->second.index].spec.type;
  };
  auto require = [&](EdgeLabel l, std::initializer_list<NodeType> allowed) {
    auto t = type_of(l);
    if (!t) fail("missing " + std::string(to_string(l)) + " child");
    if (std::find(allowed.begin(), allowed.end(), *t) == allowed.end())
      fail(std::string(to_string(l)) + " child may not be " + std::string(to_string(*t)));
  };
  auto only = [&](std::initializer_list<EdgeLabel> labels) {
    for (const auto& [l, _] : kids)
      if (std::find(labels.begin(), labels.end(), l) == labels.end())
        fail("unexpected " + std::string(to_string(l)) + " child");
  };
  const bool has_attrs = s.attitude || s.polarity || s.influence || s.property != Property::None;
  const auto entity = {NodeType::Anim, NodeType::Thing};

  switch (s.type) {
    case NodeType::Anim:
    case NodeType::Thing:
      if (!kids.empty() || has_attrs) fail("entities have no children or attributes");
      if (s.name.empty()) fail("entity without a name");
      break;
    case NodeType::State:
      only({EdgeLabel::Experiencer, EdgeLabel::Object});
      require(EdgeLabel::Experiencer, entity);
      require(EdgeLabel::Object, entity);
      if (has_attrs) fail("states have no attributes");
      break;
    case NodeType::Event:
      only({EdgeLabel::Agent, EdgeLabel::Object});
      require(EdgeLabel::Agent, entity);
      require(EdgeLabel::Object, entity);
      if (has_attrs) fail("events have no attributes");
      break;
    case NodeType::Gfbf: {
      only({EdgeLabel::Agent, EdgeLabel::Object, EdgeLabel::GoodFor, EdgeLabel::BadFor});
      require(EdgeLabel::Agent, entity);
      require(EdgeLabel::Object, entity);
      const bool gf = kids.contains(EdgeLabel::GoodFor), bf = kids.contains(EdgeLabel::BadFor);
      if (gf == bf) fail("exactly one of goodFor/badFor is required");
      if (kids.at(gf ? EdgeLabel::GoodFor : EdgeLabel::BadFor) != kids.at(EdgeLabel::Object))
        fail("goodFor/badFor edge must alias the object");
      if (has_attrs) fail("gfbfs have no attributes");
      break;
    }
    case NodeType::Influencer:
      only({EdgeLabel::Agent, EdgeLabel::Target});
      require(EdgeLabel::Agent, entity);
      require(EdgeLabel::Target, {NodeType::Gfbf, NodeType::Influencer});
      if (!s.influence || s.attitude || s.polarity || s.property != Property::None)
        fail("influencers carry only retain/reverse");
      break;
    case NodeType::IdeaOf:
      only({EdgeLabel::IdeaObject});
      require(EdgeLabel::IdeaObject, {NodeType::Gfbf});
      if (has_attrs) fail("ideaOf has no attributes");
      break;
    case NodeType::PX:
      only({EdgeLabel::X});
      require(EdgeLabel::X, {NodeType::Anim, NodeType::Thing, NodeType::IdeaOf, NodeType::Agreement,
                             NodeType::PrivateState, NodeType::Gfbf});
      if (s.property == Property::None || s.property == Property::Substantial)
        fail("p(x) needs one of isBad/isGood/isTrue/isFalse/should/shouldNot");
      if (s.attitude || s.polarity || s.influence) fail("p(x) carries only a property");
      break;
    case NodeType::Agreement:
      only({EdgeLabel::Source, EdgeLabel::WithWhom, EdgeLabel::Target});
      require(EdgeLabel::Source, {NodeType::Anim});
      require(EdgeLabel::WithWhom, {NodeType::Anim});
      require(EdgeLabel::Target, {NodeType::PX});
      if (!s.polarity || s.attitude || s.influence || s.property != Property::None)
        fail("agreements carry only a polarity");
      break;
    case NodeType::PrivateState: {
      only({EdgeLabel::Source, EdgeLabel::Target});
      if (!s.attitude || !s.polarity || s.influence) fail("private states need attType and polarity");
      require(EdgeLabel::Source, {NodeType::Anim});
      if (s.property != Property::None &&
          !(s.property == Property::Substantial && s.attitude == Attitude::BelievesTrue))
        fail("only believesTrue may be substantial");
      switch (*s.attitude) {
        case Attitude::BelievesTrue:
          if (extended_targets_)
            require(EdgeLabel::Target, {NodeType::PrivateState, NodeType::Agreement, NodeType::PX,
                                        NodeType::Gfbf, NodeType::Influencer, NodeType::Anim,
                                        NodeType::Thing, NodeType::IdeaOf});
          else
            require(EdgeLabel::Target, {NodeType::PrivateState, NodeType::Agreement, NodeType::PX,
                                        NodeType::Gfbf, NodeType::Influencer});
          break;
        case Attitude::Sentiment:
          require(EdgeLabel::Target, {NodeType::Gfbf, NodeType::PX, NodeType::PrivateState,
                                      NodeType::Anim, NodeType::Thing, NodeType::Agreement,
                                      NodeType::IdeaOf, NodeType::Influencer});
          break;
        case Attitude::Intends:
        case Attitude::BelievesShould:
          require(EdgeLabel::Target, {NodeType::Gfbf});
          break;
      }
      break;
    }
  }
}

NodeRef Graph::intern(const NodeSpec& spec, bool from_input) {
  Signature sig = make_signature(spec);
  if (auto it = table_.find(sig); it != table_.end()) {
    if (from_input) nodes_[it->second.index].from_input = true;
    return it->second;
  }
  validate(spec);
  NodeRef ref{static_cast<std::uint32_t>(nodes_.size())};
  nodes_.push_back(Node{spec, next_id_++, from_input});
  parents_.emplace_back();
  for (const auto& e : spec.children) parents_[e.to.index].push_back({e.label, ref});
  table_.emplace(std::move(sig), ref);
  ++generation_;
  return ref;
}

std::optional<NodeRef> Graph::find(const NodeSpec& spec) const {
  if (auto it = table_.find(make_signature(spec)); it != table_.end()) return it->second;
  return std::nullopt;
}

std::optional<NodeRef> Graph::lookup(const Term& t) const {
  NodeSpec head = t.head;
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    auto c = lookup(t.args[i]);
    if (!c) return std::nullopt;
    head.children.push_back({t.arg_labels[i], *c});
  }
  return find(head);
}

NodeRef Graph::realize(const Term& t, bool from_input) {
  NodeSpec head = t.head;
  for (std::size_t i = 0; i < t.args.size(); ++i)
    head.children.push_back({t.arg_labels[i], realize(t.args[i], from_input)});
  return intern(head, from_input);
}

std::optional<NodeRef> Graph::find_entity(const std::string& name) const {
  if (auto r = find(NodeSpec::entity(name, false))) return r;
  return find(NodeSpec::entity(name, true));
}

std::vector<NodeRef> Graph::all() const {
  std::vector<NodeRef> out;
  out.reserve(nodes_.size());
  for (std::uint32_t i = 0; i < nodes_.size(); ++i) out.push_back({i});
  return out;
}

bool Graph::place_top(NodeRef r) {
  if (!top_set_.insert(r).second) return false;
  top_.push_back(r);
  ++generation_;
  return true;
}

std::vector<NodeRef> Graph::roots() const {
  std::vector<NodeRef> out;
  for (NodeRef r : top_) {
    const Node& n = node(r);
    if (excluded(r) || !n.is_space_step()) continue;
    if (node(n.source()).spec.name != kWriter) continue;
    out.push_back(r);
  }
  return out;
}

const EvidenceFact& Graph::add_evidence(EvidenceFact fact) {
  for (const auto& e : evidence_)
    if (e.same_fact(fact)) return e;
  if (fact.display_id == 0) fact.display_id = next_id_++;
  evidence_.push_back(fact);
  return evidence_.back();
}

std::optional<NodeRef> Graph::extra_role(NodeRef gfbf) const {
  if (auto it = extra_roles_.find(gfbf); it != extra_roles_.end()) return it->second;
  return std::nullopt;
}

Signature structural_signature(const Graph& g, NodeRef n) { return make_signature(g.node(n).spec); }

std::string canonical(const Graph& g, NodeRef ref) {
  const Node& n = g.node(ref);
  const NodeSpec& s = n.spec;
  auto c = [&](EdgeLabel l) { return canonical(g, *n.child(l)); };
  std::string out;
  switch (s.type) {
    case NodeType::Anim:
    case NodeType::Thing:
      return std::string(to_string(s.type)) + "(" + s.name + ")";
    case NodeType::Gfbf:
      return "gfbf(" + std::string(to_string(n.effect())) + "," + c(EdgeLabel::Agent) + "," +
             c(EdgeLabel::Object) + ")";
    case NodeType::Influencer:
      return "infl(" + std::string(to_string(*s.influence)) + "," + c(EdgeLabel::Agent) + "," +
             c(EdgeLabel::Target) + ")";
    case NodeType::IdeaOf:
      return "idea(" + c(EdgeLabel::IdeaObject) + ")";
    case NodeType::PX:
      return "p(" + std::string(to_string(s.property)) + "," + c(EdgeLabel::X) + ")";
    case NodeType::Agreement:
      return "agree(" + std::string(sign_char(*s.polarity)) + "," + c(EdgeLabel::Source) + "," +
             c(EdgeLabel::WithWhom) + "," + c(EdgeLabel::Target) + ")";
    case NodeType::PrivateState:
      out = "ps(" + std::string(abbreviation(*s.attitude)) + "," + std::string(sign_char(*s.polarity));
      if (s.property == Property::Substantial) out += ",substantial";
      return out + "," + c(EdgeLabel::Source) + "," + c(EdgeLabel::Target) + ")";
    case NodeType::State:
    case NodeType::Event: {
      out = std::string(to_string(s.type)) + "(";
      auto kids = make_signature(s).children;
      for (std::size_t i = 0; i < kids.size(); ++i)
        out += (i ? "," : "") + std::string(to_string(kids[i].label)) + "=" + canonical(g, kids[i].to);
      return out + ")";
    }
  }
  return "?";
}

std::string canonical(const Graph& g, const EvidenceFact& e) {
  std::string out = "evidence(";
  out += e.holder ? canonical(g, *e.holder) : "none";
  out += "," + std::string(abbreviation(e.attitude)) + "," + std::string(sign_char(e.polarity));
  if (e.substantial) out += ",substantial";
  return out + "," + canonical(g, e.target) + ")";
}

// ---- input ----

InputGraph build_input_graph(const SentenceAnnotation& sent, const Lexicon& /*lex*/, int first_display_id) {
  InputGraph in{Graph(first_display_id), {}, {}};
  Graph& g = in.graph;

  std::set<std::string> substantial, targeted;
  for (const auto& l : sent.lines) {
    if (l.kind == LineKind::Prop) substantial.insert(l.target_id);
    else if (l.kind != LineKind::Evidence && !l.target_id.empty()) targeted.insert(l.target_id);
  }

  auto entity = [&](const EntityRef& e) {
    return g.intern(NodeSpec::entity(e.name, e.thing, e.lex_key), true);
  };
  auto line_ref = [&](const AnnotationLine& l) {
    auto it = in.line_nodes.find(l.target_id);
    if (it == in.line_nodes.end())
      throw EngineError("IllFormedNode", "unresolved reference '" + l.target_id + "'");
    return it->second;
  };

  for (const auto& l : sent.lines) {
    switch (l.kind) {
      case LineKind::Prop:
        break;
      case LineKind::Gfbf: {
        NodeRef gfbf = g.intern(NodeSpec::gfbf(entity(*l.actor), *l.effect, entity(*l.target_entity),
                                               l.anchor.text, l.anchor.lex_key),
                                true);
        if (l.extra_filler) g.set_role_filler(gfbf, entity(*l.extra_filler));
        in.line_nodes[l.id] = gfbf;
        break;
      }
      case LineKind::Influencer:
        in.line_nodes[l.id] = g.intern(
            NodeSpec::influencer(entity(*l.actor), *l.influence, line_ref(l), l.anchor.text, l.anchor.lex_key),
            true);
        break;
      case LineKind::Subjectivity:
      case LineKind::PrivateState: {
        NodeRef target = l.target_entity ? entity(*l.target_entity) : line_ref(l);
        Property prop = substantial.contains(l.id) ? Property::Substantial : Property::None;
        in.line_nodes[l.id] = g.intern(
            NodeSpec::private_state(entity(*l.actor), *l.attitude, *l.polarity, target, prop, l.anchor.text),
            true);
        break;
      }
      case LineKind::Evidence: {
        EvidenceFact e;
        if (l.actor) e.holder = entity(*l.actor);
        e.attitude = *l.attitude;
        e.polarity = *l.polarity;
        e.substantial = e.attitude == Attitude::BelievesTrue;
        e.target = line_ref(l);
        if (e.attitude == Attitude::Sentiment) e.target = g.intern(NodeSpec::idea_of(e.target), true);
        in.evidence_ids[l.id] = g.add_evidence(e).display_id;
        break;
      }
    }
  }
  for (const auto& l : sent.lines)
    if (l.kind != LineKind::Evidence && l.kind != LineKind::Prop && !targeted.contains(l.id))
      g.place_top(in.line_nodes.at(l.id));
  return in;
}

}  // namespace implicature
