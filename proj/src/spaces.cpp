#include "implicature/spaces.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "implicature/annotation.hpp"

namespace implicature {

std::string_view to_string(BlockCause c) {
  switch (c) {
    case BlockCause::Evidence: return "evidence";
    case BlockCause::SpaceContradiction: return "space-contradiction";
    case BlockCause::NegativeBeliefPath: return "negative-belief-path";
    case BlockCause::NoAssumptionBasis: return "no-assumption-basis";
  }
  return "?";
}

SpaceStep step_of(const Graph& g, NodeRef ps) {
  const Node& n = g.node(ps);
  return {n.source(), *n.spec.attitude, *n.spec.polarity};
}

bool has_negative_belief(const Context& c) {
  return std::any_of(c.begin(), c.end(), [](const SpaceStep& s) {
    return s.attitude == Attitude::BelievesTrue && s.polarity == Polarity::Negative;
  });
}

bool has_sentiment(const Context& c) {
  return std::any_of(c.begin(), c.end(), [](const SpaceStep& s) { return s.attitude == Attitude::Sentiment; });
}

Context belief_variant(const Context& c) {
  Context out = c;
  for (auto& s : out)
    if (s.attitude == Attitude::Sentiment) s = {s.source, Attitude::BelievesTrue, Polarity::Positive};
  return out;
}

std::string render_steps(const Graph& g, const Context& c) {
  std::string out;
  for (const auto& s : c) {
    if (!out.empty()) out += ' ';
    out += g.node(s.source).spec.name;
    out += ' ';
    out += sign_char(s.polarity);
    out += abbreviation(s.attitude);
  }
  return out;
}

namespace {

bool is_root(const Graph& g, NodeRef r) {
  if (!g.is_top(r) || g.excluded(r)) return false;
  const Node& n = g.node(r);
  return n.is_space_step() && g.node(n.source()).spec.name == kWriter;
}

bool is_chain_parent(const Graph& g, const Edge& e) {
  return e.label == EdgeLabel::Target && !g.excluded(e.to) && g.node(e.to).is_space_step();
}

// Emits every chain from a root down to (but excluding) node, root first.
template <class F>
void each_chain(const Graph& g, NodeRef node, std::vector<NodeRef>& rev, F&& emit) {
  for (const Edge& e : g.parents(node)) {
    if (!is_chain_parent(g, e)) continue;
    rev.push_back(e.to);
    if (is_root(g, e.to)) emit(rev);
    each_chain(g, e.to, rev, emit);
    rev.pop_back();
  }
}

Context prefix(const Context& c, std::size_t n) { return Context(c.begin(), c.begin() + static_cast<long>(n)); }

}  // namespace

std::vector<SpaceDescriptor> spaces_of(const Graph& g, NodeRef node) {
  std::map<Context, SpaceDescriptor> found;
  if (g.excluded(node)) return {};
  std::vector<NodeRef> rev;
  each_chain(g, node, rev, [&](const std::vector<NodeRef>& chain_rev) {
    SpaceDescriptor d;
    d.defining_path.assign(chain_rev.rbegin(), chain_rev.rend());
    for (NodeRef p : d.defining_path) d.steps.push_back(step_of(g, p));
    d.from_input = std::all_of(d.defining_path.begin(), d.defining_path.end(),
                               [&](NodeRef p) { return g.node(p).from_input; });
    auto [it, fresh] = found.emplace(d.steps, d);
    // Prefer the lowest-numbered path so input chains define their spaces.
    if (!fresh && d.defining_path < it->second.defining_path) it->second = d;
  });
  std::vector<SpaceDescriptor> out;
  for (auto& [_, d] : found) out.push_back(std::move(d));
  return out;
}

std::vector<Context> contexts_of(const Graph& g, NodeRef node) {
  std::vector<Context> out;
  if (g.excluded(node)) return out;
  if (g.is_top(node)) out.emplace_back();
  for (auto& d : spaces_of(g, node)) out.push_back(std::move(d.steps));
  std::sort(out.begin(), out.end());
  return out;
}

bool in_context(const Graph& g, NodeRef node, const Context& c) {
  if (g.excluded(node)) return false;
  if (c.empty()) return g.is_top(node);
  for (const Edge& e : g.parents(node)) {
    if (!is_chain_parent(g, e) || step_of(g, e.to) != c.back()) continue;
    Context rest = prefix(c, c.size() - 1);
    if (rest.empty() ? is_root(g, e.to) : in_context(g, e.to, rest)) return true;
  }
  return false;
}

NodeRef wrap(Graph& g, const Context& c, NodeRef node) {
  NodeRef cur = node;
  for (auto it = c.rbegin(); it != c.rend(); ++it)
    cur = g.intern(NodeSpec::private_state(it->source, it->attitude, it->polarity, cur));
  g.place_top(cur);
  return cur;
}

namespace {

Term wrap_term(const Context& c, std::size_t from, Term inner) {
  for (std::size_t i = c.size(); i > from; --i) {
    const SpaceStep& s = c[i - 1];
    NodeSpec head;
    head.type = NodeType::PrivateState;
    head.attitude = s.attitude;
    head.polarity = s.polarity;
    head.children = {{EdgeLabel::Source, s.source}};
    Term t(head);
    t.with(EdgeLabel::Target, std::move(inner));
    inner = std::move(t);
  }
  return inner;
}

std::vector<Term> opposites(const Term& t) {
  const NodeSpec& h = t.head;
  if ((h.type != NodeType::PrivateState && h.type != NodeType::Agreement) || !h.polarity) return {};
  Term o = t;
  o.head.polarity = flip(*h.polarity);
  if (h.type == NodeType::PrivateState && h.attitude == Attitude::BelievesTrue) {
    Term a = o, b = o;
    a.head.property = Property::None;
    b.head.property = Property::Substantial;
    return {a, b};
  }
  return {o};
}

}  // namespace

namespace {

// The argument of t under label, as a term, or none.
std::optional<Term> arg_of(const Graph& g, const Term& t, EdgeLabel label) {
  for (const Edge& e : t.head.children)
    if (e.label == label) return Term(g.node(e.to).spec);
  for (std::size_t i = 0; i < t.args.size(); ++i)
    if (t.arg_labels[i] == label) return t.args[i];
  return std::nullopt;
}

bool clashes(const Graph& g, const Context& c, const Term& prop) {
  for (std::size_t level = c.size() + 1; level-- > 0;) {
    Term placed = wrap_term(c, level, prop);
    Context where = prefix(c, level);
    for (const Term& o : opposites(placed))
      if (auto found = g.lookup(o); found && in_context(g, *found, where)) return true;
  }
  // A belief or sentiment opens a space of its own; what it holds must not
  // clash with what that space already has.
  const NodeSpec& h = prop.head;
  if (h.type != NodeType::PrivateState || !h.polarity ||
      (h.attitude != Attitude::BelievesTrue && h.attitude != Attitude::Sentiment))
    return false;
  auto src = arg_of(g, prop, EdgeLabel::Source);
  auto inner = arg_of(g, prop, EdgeLabel::Target);
  if (!src || !inner) return false;
  auto src_ref = g.lookup(*src);
  if (!src_ref) return false;
  Context deeper = c;
  deeper.push_back({*src_ref, *h.attitude, *h.polarity});
  return clashes(g, deeper, *inner);
}

}  // namespace

bool would_contradict(const Graph& g, const Context& c, const Term& prop) {
  if (!c.empty() && c.back().attitude == Attitude::BelievesTrue && c.back().polarity == Polarity::Negative)
    return true;
  return clashes(g, c, prop);
}

namespace {

std::vector<Context> common_contexts(const Graph& g, const std::vector<NodeRef>& ps) {
  if (ps.empty()) return {};
  std::vector<Context> common = contexts_of(g, ps.front());
  for (std::size_t i = 1; i < ps.size() && !common.empty(); ++i) {
    auto other = contexts_of(g, ps[i]);
    std::vector<Context> both;
    std::set_intersection(common.begin(), common.end(), other.begin(), other.end(), std::back_inserter(both));
    common = std::move(both);
  }
  return common;
}

Term as_term(const Graph& g, NodeRef r) { return Term(g.node(r).spec); }

bool non_propositional(const Graph& g, NodeRef r) {
  switch (g.node(r).type()) {
    case NodeType::Anim:
    case NodeType::Thing:
    case NodeType::Gfbf:
    case NodeType::IdeaOf:
      return true;
    default:
      return false;
  }
}

}  // namespace

Extension extend_spaces(Graph& g, const std::vector<NodeRef>& ps, const std::vector<Term>& as,
                        const std::vector<Term>& qs, const ExtendOptions& opts) {
  Extension ext;
  std::vector<Context> contexts = opts.contexts ? *opts.contexts : common_contexts(g, ps);
  std::sort(contexts.begin(), contexts.end());
  contexts.erase(std::unique(contexts.begin(), contexts.end()), contexts.end());
  ext.had_common_space = !contexts.empty();

  std::set<Context> done;
  std::set<NodeRef> created, existing;
  auto place = [&](const Context& target, const Term& t, bool conclusion) {
    const std::size_t before = g.size();
    NodeRef r = g.realize(t);
    const bool was_there = in_context(g, r, target);
    wrap(g, target, r);
    for (std::size_t i = before; i < g.size(); ++i) created.insert(NodeRef{static_cast<std::uint32_t>(i)});
    if (conclusion && was_there) existing.insert(r);
    return r;
  };

  for (const Context& ctx : contexts) {
    if (has_negative_belief(ctx)) {
      ext.blocked.push_back({ctx, BlockCause::NegativeBeliefPath, render_steps(g, ctx)});
      continue;
    }
    std::vector<std::pair<Context, bool>> targets = {{ctx, false}};
    if (has_sentiment(ctx)) targets.emplace_back(belief_variant(ctx), true);

    for (const auto& [target, variant] : targets) {
      if (!done.insert(target).second) continue;
      std::vector<Term> adds;
      if (variant)
        for (NodeRef p : ps) adds.push_back(as_term(g, p));
      const std::size_t n_pre = adds.size();
      adds.insert(adds.end(), as.begin(), as.end());
      adds.insert(adds.end(), qs.begin(), qs.end());

      auto clash = std::find_if(adds.begin(), adds.end(),
                                [&](const Term& t) { return would_contradict(g, target, t); });
      if (clash != adds.end()) {
        ext.blocked.push_back({target, BlockCause::SpaceContradiction, render_steps(g, target)});
        continue;
      }
      for (std::size_t i = 0; i < adds.size(); ++i) {
        NodeRef r = place(target, adds[i], i >= n_pre + as.size());
        const Node& n = g.node(r);
        if (opts.extended_belief_spaces && n.is_private_state() && n.spec.attitude == Attitude::Sentiment &&
            non_propositional(g, n.target())) {
          Term belief(NodeSpec::private_state(n.source(), Attitude::BelievesTrue, Polarity::Positive, n.target()));
          Context bv = belief_variant(target);
          if (!would_contradict(g, bv, belief)) place(bv, belief, false);
        }
      }
      ext.placed.push_back(target);
    }
  }
  ext.created.assign(created.begin(), created.end());
  ext.existing.assign(existing.begin(), existing.end());
  return ext;
}

std::vector<Contradiction> find_contradictions(const Graph& g) {
  std::vector<Contradiction> out;
  for (NodeRef r : g.all()) {
    const Node& n = g.node(r);
    if (n.type() != NodeType::PrivateState && n.type() != NodeType::Agreement) continue;
    for (const Term& o : opposites(as_term(g, r))) {
      auto other = g.find(o.head);
      if (!other || *other < r) continue;
      for (const Context& c : contexts_of(g, r))
        if (in_context(g, *other, c)) out.push_back({c, r, *other});
    }
  }
  return out;
}

}  // namespace implicature
