#include "implicature/engine.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "implicature/annotation.hpp"

namespace implicature {

namespace {

NodeSpec ps_head(NodeRef src, Attitude a, Polarity p, Property prop = Property::None) {
  NodeSpec s;
  s.type = NodeType::PrivateState;
  s.attitude = a;
  s.polarity = p;
  s.property = prop;
  s.children = {{EdgeLabel::Source, src}};
  return s;
}

Term ps(NodeRef src, Attitude a, Polarity p, Term target, Property prop = Property::None) {
  Term t(ps_head(src, a, p, prop));
  t.with(EdgeLabel::Target, std::move(target));
  return t;
}

Term existing(const Graph& g, NodeRef r) { return Term(g.node(r).spec); }

Term idea_of(NodeRef gfbf) { return Term(NodeSpec::idea_of(gfbf)); }

Term agreement(NodeRef s1, Polarity pol, NodeRef s2, Property prop, Term z) {
  NodeSpec head;
  head.type = NodeType::Agreement;
  head.polarity = pol;
  head.children = {{EdgeLabel::Source, s1}, {EdgeLabel::WithWhom, s2}};
  NodeSpec px;
  px.type = NodeType::PX;
  px.property = prop;
  Term p(px);
  p.with(EdgeLabel::X, std::move(z));
  Term t(head);
  t.with(EdgeLabel::Target, std::move(p));
  return t;
}

// Nodes a rule may match: not excluded and reachable from the top level.
struct View {
  const Graph& g;
  std::vector<char> placed;

  explicit View(const Graph& graph) : g(graph), placed(graph.size(), 0) {
    for (NodeRef r : g.all()) placed[r.index] = !g.excluded(r) && !contexts_of(g, r).empty();
  }
  bool ok(NodeRef r) const { return placed[r.index] != 0; }
  const Node& n(NodeRef r) const { return g.node(r); }
  bool is(NodeRef r, NodeType t) const { return n(r).type() == t; }
  bool ps_of(NodeRef r, Attitude a) const { return n(r).is_private_state() && n(r).spec.attitude == a; }
};

std::string binding_key(const Graph& g, const std::string& rule, const std::vector<NodeRef>& refs) {
  std::string k = rule;
  for (NodeRef r : refs) k += ":" + std::to_string(g.node(r).display_id);
  return k;
}

Binding make(const Graph& g, std::string rule, std::vector<NodeRef> ps, std::vector<Term> as,
             std::vector<Term> qs, std::vector<NodeRef> extra = {}) {
  Binding b;
  b.rule = std::move(rule);
  b.ps = std::move(ps);
  b.as = std::move(as);
  b.qs = std::move(qs);
  std::vector<NodeRef> keyed = b.ps;
  keyed.insert(keyed.end(), extra.begin(), extra.end());
  b.key = binding_key(g, b.rule, keyed);
  return b;
}

std::vector<Binding> match_rule8(const Graph& g, const Lexicon&) {
  View v(g);
  std::vector<Binding> out;
  for (NodeRef x : g.all()) {
    if (!v.ok(x) || !v.ps_of(x, Attitude::BelievesTrue) || v.n(x).spec.polarity != Polarity::Positive) continue;
    NodeRef e = v.n(x).target();
    if (!v.is(e, NodeType::Gfbf) || g.excluded(e)) continue;
    NodeRef s = v.n(x).source(), t = v.n(e).object();
    for (Polarity pol : {Polarity::Positive, Polarity::Negative}) {
      auto p2 = g.find(NodeSpec::private_state(s, Attitude::Sentiment, pol, t));
      if (!p2 || !v.ok(*p2)) continue;
      out.push_back(make(g, "rule8", {x, *p2}, {}, {ps(s, Attitude::Sentiment, pol * v.n(e).effect(), existing(g, e))}));
    }
  }
  return out;
}

std::vector<Binding> match_rule1(const Graph& g, const Lexicon&) {
  View v(g);
  std::vector<Binding> out;
  for (NodeRef x : g.all()) {
    if (!v.ok(x) || !v.ps_of(x, Attitude::Sentiment)) continue;
    NodeRef e = v.n(x).target();
    if (!v.is(e, NodeType::Gfbf) || g.excluded(e)) continue;
    out.push_back(make(g, "rule1", {x}, {}, {ps(v.n(x).source(), Attitude::Sentiment, *v.n(x).spec.polarity, idea_of(e))}));
  }
  return out;
}

std::vector<Binding> match_rule2(const Graph& g, const Lexicon&) {
  View v(g);
  std::vector<Binding> out;
  for (NodeRef x : g.all()) {
    if (!v.ok(x) || !v.ps_of(x, Attitude::Sentiment)) continue;
    NodeRef idea = v.n(x).target();
    if (!v.is(idea, NodeType::IdeaOf)) continue;
    NodeRef e = *v.n(idea).child(EdgeLabel::IdeaObject);
    if (g.excluded(e)) continue;
    Polarity pol = *v.n(x).spec.polarity * v.n(e).effect();
    out.push_back(make(g, "rule2", {x}, {}, {ps(v.n(x).source(), Attitude::Sentiment, pol, existing(g, v.n(e).object()))}));
  }
  return out;
}

// rule3.1, rule3.2 and rule3.3 differ only in the inner attitude.
std::vector<Binding> match_rule3(const Graph& g, const std::string& name, Attitude inner_att, bool substantial,
                                 Property yes, Property no) {
  View v(g);
  std::vector<Binding> out;
  for (NodeRef x : g.all()) {
    if (!v.ok(x) || !v.ps_of(x, Attitude::Sentiment)) continue;
    NodeRef y = v.n(x).target();
    if (!v.ps_of(y, inner_att)) continue;
    if ((v.n(y).spec.property == Property::Substantial) != substantial) continue;
    NodeRef s1 = v.n(x).source(), s2 = v.n(y).source(), z = v.n(y).target();
    if (s1 == s2) continue;
    // sentiment about a bare event is taken up through its ideaOf form
    if (inner_att == Attitude::Sentiment && v.is(z, NodeType::Gfbf)) continue;
    Polarity o = *v.n(x).spec.polarity, i = *v.n(y).spec.polarity;
    Term q1 = agreement(s1, o, s2, i == Polarity::Positive ? yes : no, existing(g, z));
    Term q2 = ps(s1, inner_att, o * i, existing(g, z), substantial ? Property::Substantial : Property::None);
    out.push_back(make(g, name, {x}, {}, {q1, q2}));
  }
  return out;
}

std::vector<Binding> match_rule4(const Graph& g, const Lexicon&) {
  View v(g);
  std::vector<Binding> out;
  for (NodeRef x : g.all()) {
    if (!v.ok(x) || !v.is(x, NodeType::Agreement)) continue;
    const Node& a = v.n(x);
    out.push_back(make(g, "rule4", {x}, {},
                       {ps(a.source(), Attitude::Sentiment, *a.spec.polarity, existing(g, *a.child(EdgeLabel::WithWhom)))}));
  }
  return out;
}

std::vector<Binding> match_rule6(const Graph& g, const Lexicon&) {
  View v(g);
  std::vector<Binding> out;
  for (NodeRef e : g.all()) {
    if (!v.ok(e) || !v.is(e, NodeType::Gfbf)) continue;
    NodeRef a = v.n(e).agent();
    if (!v.is(a, NodeType::Anim)) continue;
    out.push_back(make(g, "rule6", {e}, {}, {ps(a, Attitude::Intends, Polarity::Positive, existing(g, e))}));
  }
  return out;
}

std::vector<Binding> match_rule7(const Graph& g, const Lexicon&) {
  View v(g);
  std::vector<Binding> out;
  for (NodeRef x : g.all()) {
    if (!v.ok(x) || !v.ps_of(x, Attitude::Intends) || v.n(x).spec.polarity != Polarity::Positive) continue;
    NodeRef e = v.n(x).target();
    if (g.excluded(e) || v.n(e).agent() != v.n(x).source()) continue;
    out.push_back(make(g, "rule7", {x}, {}, {ps(v.n(x).source(), Attitude::Sentiment, Polarity::Positive, idea_of(e))}));
  }
  return out;
}

std::vector<Binding> match_rule9(const Graph& g, const Lexicon&) {
  View v(g);
  std::vector<Binding> out;
  for (NodeRef x : g.all()) {
    if (!v.ok(x) || !v.ps_of(x, Attitude::Sentiment)) continue;
    NodeRef e = v.n(x).target();
    if (!v.is(e, NodeType::Gfbf) || g.excluded(e) || !v.is(v.n(e).agent(), NodeType::Thing)) continue;
    NodeRef s = v.n(x).source();
    Term a = ps(s, Attitude::BelievesTrue, Polarity::Positive, existing(g, e), Property::Substantial);
    Term q = ps(s, Attitude::Sentiment, *v.n(x).spec.polarity, existing(g, v.n(e).agent()));
    out.push_back(make(g, "rule9", {x}, {a}, {q}));
  }
  return out;
}

std::vector<Binding> match_rule10(const Graph& g, const Lexicon& lex) {
  std::vector<Binding> out;
  auto writer = g.find(NodeSpec::entity(std::string(kWriter), false));
  if (!writer) return out;
  for (NodeRef e : g.all()) {
    const Node& n = g.node(e);
    if (n.type() != NodeType::Gfbf || !n.from_input || g.excluded(e)) continue;
    const Node& t = g.node(n.object());
    auto conn = lex.connotation_of(t.spec.lex_key.empty() ? t.spec.name : t.spec.lex_key);
    if (!conn) continue;
    Binding b = make(g, "rule10", {e}, {ps(*writer, Attitude::BelievesTrue, Polarity::Positive, existing(g, e))},
                     {ps(*writer, Attitude::Sentiment, *conn, existing(g, n.object()))});
    b.contexts = std::vector<Context>{Context{}};
    out.push_back(std::move(b));
  }
  return out;
}

bool input_sentiment_toward_entity(const View& v, NodeRef x) {
  return v.ok(x) && v.n(x).from_input && v.ps_of(x, Attitude::Sentiment) && v.n(v.n(x).target()).is_entity();
}

std::vector<Binding> match_rule5source(const Graph& g, const Lexicon&) {
  View v(g);
  std::vector<Binding> out;
  for (NodeRef x : g.all()) {
    if (!input_sentiment_toward_entity(v, x)) continue;
    NodeRef s1 = v.n(x).source(), s2 = v.n(x).target();
    for (NodeRef y : g.all()) {
      if (y == x || g.excluded(y) || !v.n(y).from_input || !v.n(y).is_private_state()) continue;
      if (v.n(y).source() != s2) continue;
      out.push_back(make(g, "rule5source", {x}, {ps(s1, Attitude::BelievesTrue, Polarity::Positive, existing(g, y))},
                         {ps(s1, Attitude::Sentiment, *v.n(x).spec.polarity, existing(g, y))}, {y}));
    }
  }
  return out;
}

std::vector<Binding> match_rule5agent(const Graph& g, const Lexicon&) {
  View v(g);
  std::vector<Binding> out;
  for (NodeRef x : g.all()) {
    if (!input_sentiment_toward_entity(v, x)) continue;
    NodeRef s1 = v.n(x).source(), a = v.n(x).target();
    for (NodeRef e : g.all()) {
      if (g.excluded(e) || !v.n(e).from_input || !v.is(e, NodeType::Gfbf) || v.n(e).agent() != a) continue;
      Term q = ps(s1, Attitude::Sentiment, *v.n(x).spec.polarity, existing(g, e));
      Binding b = make(g, "rule5agent", {x}, {q}, {q}, {e});
      b.grounded = true;
      out.push_back(std::move(b));
    }
  }
  return out;
}

std::vector<Rule> build_catalog() {
  std::vector<Rule> rules;
  auto add = [&](std::string name, std::vector<std::string> p, std::vector<std::string> a,
                 std::vector<std::string> q, bool input_only, bool once,
                 std::function<std::vector<Binding>(const Graph&, const Lexicon&)> m) {
    rules.push_back({std::move(name), std::move(p), std::move(a), std::move(q), input_only, once, std::move(m)});
  };
  add("rule8", {"S positive believesTrue A goodFor/badFor T", "S sentiment toward T"}, {},
      {"S sentiment toward A goodFor/badFor T"}, false, false, match_rule8);
  add("rule1", {"S sentiment toward A goodFor/badFor T"}, {},
      {"S sentiment toward the idea of A goodFor/badFor T"}, false, false, match_rule1);
  add("rule2", {"S sentiment toward the idea of A goodFor/badFor T"}, {}, {"S sentiment toward T"}, false, false,
      match_rule2);
  add("rule3.1", {"S1 sentiment toward S2 sentiment toward Z"}, {},
      {"S1 agrees/disagrees with S2 that isGood/isBad Z", "S1 sentiment toward Z"}, false, false,
      [](const Graph& g, const Lexicon&) {
        return match_rule3(g, "rule3.1", Attitude::Sentiment, false, Property::IsGood, Property::IsBad);
      });
  add("rule3.2", {"S1 sentiment toward S2 pos/neg believesTrue substantial Z"}, {},
      {"S1 agrees/disagrees with S2 that isTrue/isFalse Z", "S1 pos/neg believesTrue substantial Z"}, false,
      false, [](const Graph& g, const Lexicon&) {
        return match_rule3(g, "rule3.2", Attitude::BelievesTrue, true, Property::IsTrue, Property::IsFalse);
      });
  add("rule3.3", {"S1 sentiment toward S2 pos/neg believesShould Z"}, {},
      {"S1 agrees/disagrees with S2 that should/shouldNot Z", "S1 pos/neg believesShould Z"}, false, false,
      [](const Graph& g, const Lexicon&) {
        return match_rule3(g, "rule3.3", Attitude::BelievesShould, false, Property::Should, Property::ShouldNot);
      });
  add("rule4", {"S1 agrees/disagrees with S2 that *"}, {}, {"S1 sentiment toward S2"}, false, false, match_rule4);
  add("rule6", {"A goodFor/badFor T, where A is animate"}, {}, {"A intended A goodFor/badFor T"}, false, false,
      match_rule6);
  add("rule7", {"S intended S goodFor/badFor T"}, {}, {"S positive-sentiment toward ideaOf S goodFor/badFor T"},
      false, false, match_rule7);
  add("rule9", {"S sentiment toward A goodFor/badFor T, where A is a thing"},
      {"S positive believesTrue substantial A goodFor/badFor T"}, {"S sentiment toward A"}, false, false,
      match_rule9);
  add("rule10", {"A goodFor/badFor T in input & T in connotation lexicon"},
      {"Writer positive believesTrue A goodFor/badFor T"}, {"Writer sentiment toward T"}, true, false,
      match_rule10);
  add("rule5source", {"S1 sentiment toward S2 in the input"},
      {"S1 positive believesTrue S2 privateState toward Z in input"}, {"S1 sentiment toward S2 privateState toward Z"},
      true, true, match_rule5source);
  add("rule5agent", {"S1 sentiment toward A in input"}, {"S1 sentiment toward A goodFor/badFor T in input"},
      {"S1 sentiment toward A goodFor/badFor T"}, true, true, match_rule5agent);
  return rules;
}

}  // namespace

const std::vector<Rule>& rule_catalog() {
  static const std::vector<Rule> rules = build_catalog();
  return rules;
}

const Rule& rule_named(const std::string& name) {
  for (const Rule& r : rule_catalog())
    if (r.name == name) return r;
  throw std::invalid_argument("unknown rule '" + name + "'");
}

std::vector<std::string> default_rule_order() {
  std::vector<std::string> out;
  for (const Rule& r : rule_catalog()) out.push_back(r.name);
  return out;
}

std::vector<Binding> match(const Rule& rule, const Graph& g, const Lexicon& lex) { return rule.matcher(g, lex); }

// Target of a private-state term, whether held open in args or already in the spec.
static std::optional<NodeRef> ps_target(const Graph& g, const Term& prop) {
  if (!prop.args.empty()) return g.lookup(prop.args.front());
  for (const Edge& e : prop.head.children)
    if (e.label == EdgeLabel::Target) return e.to;
  return std::nullopt;
}

std::optional<NodeRef> assumption_basis(const Graph& g, const Term& prop, const Context& c) {
  if (auto a = g.lookup(prop); a && in_context(g, *a, c)) return a;
  const NodeSpec& h = prop.head;
  if (h.type != NodeType::PrivateState) return std::nullopt;
  auto target = ps_target(g, prop);
  if (!target) return std::nullopt;
  NodeRef source = h.children.front().to;
  const bool needs_substantial = h.property == Property::Substantial;

  if (h.attitude == Attitude::BelievesTrue && h.polarity == Polarity::Positive) {
    if (auto writer = g.find(NodeSpec::entity(std::string(kWriter), false))) {
      for (Property p : {Property::Substantial, Property::None}) {
        if (needs_substantial && p != Property::Substantial) continue;
        auto w = g.find(NodeSpec::private_state(*writer, Attitude::BelievesTrue, Polarity::Positive, *target, p));
        if (w && g.is_top(*w) && !g.excluded(*w)) return w;
      }
    }
  }
  // A different-type attitude cannot vouch for a specific property.
  if (needs_substantial) return std::nullopt;
  for (Attitude att : {Attitude::BelievesTrue, Attitude::Sentiment, Attitude::Intends, Attitude::BelievesShould}) {
    if (att == h.attitude) continue;
    for (Polarity pol : {Polarity::Positive, Polarity::Negative}) {
      if (att == Attitude::BelievesTrue && pol == Polarity::Negative) continue;
      for (Property p : {Property::None, Property::Substantial}) {
        if (p == Property::Substantial && att != Attitude::BelievesTrue) continue;
        auto other = g.find(NodeSpec::private_state(source, att, pol, *target, p));
        if (other && in_context(g, *other, c)) return other;
      }
    }
  }
  return std::nullopt;
}

std::optional<EvidenceFact> blocked_by_evidence(const Graph& g, const Term& prop) {
  const NodeSpec& h = prop.head;
  if (h.type != NodeType::PrivateState || g.evidence().empty()) return std::nullopt;
  auto target = ps_target(g, prop);
  if (!target) return std::nullopt;
  NodeRef source = h.children.front().to;
  for (const EvidenceFact& e : g.evidence()) {
    if (e.attitude != h.attitude || e.target != *target || e.polarity == *h.polarity) continue;
    if (e.holder && *e.holder != source) continue;
    if (e.attitude == Attitude::BelievesTrue && e.substantial != (h.property == Property::Substantial)) continue;
    return e;
  }
  return std::nullopt;
}

FireResult fire(const Rule& rule, const Binding& b, Graph& g, const Config& cfg) {
  FireResult out;
  auto report = [&](BlockCause cause, std::string context, std::string detail) {
    out.blocks.push_back({rule.name, b.ps, cause, std::move(context), std::move(detail)});
  };

  for (const auto* list : {&b.as, &b.qs})
    for (const Term& t : *list)
      if (auto e = blocked_by_evidence(g, t)) {
        report(BlockCause::Evidence, "", canonical(g, *e));
        return out;
      }

  std::vector<Context> contexts;
  if (b.contexts) {
    contexts = *b.contexts;
  } else {
    contexts = contexts_of(g, b.ps.front());
    for (std::size_t i = 1; i < b.ps.size(); ++i) {
      auto other = contexts_of(g, b.ps[i]);
      std::vector<Context> both;
      std::set_intersection(contexts.begin(), contexts.end(), other.begin(), other.end(), std::back_inserter(both));
      contexts = std::move(both);
    }
  }

  std::vector<Context> grounded;
  for (const Context& c : contexts) {
    bool ok = true;
    if (!b.grounded && !has_negative_belief(c))
      for (const Term& a : b.as)
        if (!assumption_basis(g, a, c)) {
          report(BlockCause::NoAssumptionBasis, render_steps(g, c), g.lookup(a) ? canonical(g, *g.lookup(a)) : "");
          ok = false;
          break;
        }
    if (ok) grounded.push_back(c);
  }
  if (grounded.empty()) return out;

  ExtendOptions opts;
  opts.extended_belief_spaces = cfg.extended_belief_spaces;
  opts.contexts = grounded;
  Extension ext = extend_spaces(g, b.ps, b.as, b.qs, opts);
  for (const auto& blk : ext.blocked) report(blk.cause, render_steps(g, blk.context), blk.detail);
  out.created = ext.created;
  out.existing = ext.existing;
  if (!ext.placed.empty()) {
    for (const Term& a : b.as)
      if (auto r = g.lookup(a)) out.assumptions.push_back(*r);
    for (const Term& q : b.qs)
      if (auto r = g.lookup(q)) out.conclusions.push_back(*r);
  }
  return out;
}

InferenceResult run_to_fixpoint(Graph g, const Lexicon& lex, const Config& cfg) {
  g.set_extended_belief_targets(cfg.extended_belief_spaces);
  InferenceResult result{std::move(g), {}, {}, {}, {}, 0};
  Graph& graph = result.graph;

  std::vector<const Rule*> order;
  for (const std::string& name : cfg.rule_order.empty() ? default_rule_order() : cfg.rule_order)
    order.push_back(&rule_named(name));

  std::set<std::string> seen_bindings;
  std::set<std::tuple<std::string, NodeRef>> fired_once;
  std::vector<BlockReport> all_blocks;
  auto known_block = [&](const BlockReport& r) {
    return std::find(all_blocks.begin(), all_blocks.end(), r) != all_blocks.end();
  };

  for (int pass = 1;; ++pass) {
    if (pass > cfg.max_iterations)
      throw EngineError("IterationLimitExceeded",
                        "no fixpoint after " + std::to_string(cfg.max_iterations) + " passes");
    const std::uint64_t before = graph.generation();
    for (const Rule* rule : order) {
      const bool once = cfg.fire_once && rule->fire_once;
      std::vector<Binding> bindings = match(*rule, graph, lex);
      std::set<NodeRef> fired_now;
      for (const Binding& b : bindings) {
        if (once && fired_once.contains({rule->name, b.ps.front()})) continue;
        const int floor = graph.next_display_id();
        FireResult fr = fire(*rule, b, graph, cfg);
        fired_now.insert(b.ps.front());
        const bool fresh = seen_bindings.insert(b.key).second;
        std::vector<BlockReport> new_blocks;
        for (auto& blk : fr.blocks)
          if (!known_block(blk)) {
            all_blocks.push_back(blk);
            new_blocks.push_back(blk);
          }
        if (!fresh && fr.created.empty() && new_blocks.empty()) continue;
        result.trace.push_back(
            {pass, rule->name, b.ps, fr.assumptions, fr.conclusions, fr.created, fr.existing, new_blocks, floor});
      }
      if (once)
        for (NodeRef p : fired_now) fired_once.insert({rule->name, p});
    }
    result.passes = pass;
    if (graph.generation() == before) break;
  }
  result.blocks = std::move(all_blocks);
  return result;
}

InferenceResult infer(Graph g, const Lexicon& lex, const Config& cfg) {
  Composition comp = resolve_chains(g);
  std::vector<NodeRef> extra = expand_extra_roles(g, lex);
  InferenceResult r = run_to_fixpoint(std::move(g), lex, cfg);
  r.composition = std::move(comp);
  r.extra_roles = std::move(extra);
  return r;
}

}  // namespace implicature
