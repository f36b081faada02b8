#include "implicature/composition.hpp"

#include <algorithm>
#include <set>

#include "implicature/spaces.hpp"

namespace implicature {

int InfluencerChain::reversers() const {
  return static_cast<int>(std::count_if(links.begin(), links.end(),
                                        [](const ChainLink& l) { return l.kind == Influence::Reverse; }));
}

Effect InfluencerChain::effective_effect(const Graph& g) const {
  Effect e = g.node(terminal).effect();
  return reversers() % 2 ? flip(e) : e;
}

std::vector<InfluencerChain> find_chains(const Graph& g) {
  std::vector<InfluencerChain> out;
  for (NodeRef r : g.all()) {
    const Node& n = g.node(r);
    if (n.type() != NodeType::Influencer || g.excluded(r)) continue;
    const auto& ps = g.parents(r);
    const bool inner = std::any_of(ps.begin(), ps.end(), [&](const Edge& e) {
      return e.label == EdgeLabel::Target && g.node(e.to).type() == NodeType::Influencer;
    });
    if (inner) continue;

    InfluencerChain chain;
    std::set<NodeRef> seen;
    NodeRef cur = r;
    while (g.node(cur).type() == NodeType::Influencer) {
      if (!seen.insert(cur).second) throw EngineError("CyclicChain", "influencer chain loops");
      const Node& link = g.node(cur);
      chain.links.push_back({link.agent(), *link.spec.influence, cur});
      cur = link.target();
    }
    chain.terminal = cur;
    out.push_back(std::move(chain));
  }
  return out;
}

namespace {

// Rebuilds every ancestor of old_child with new_child in its place.
void rebuild_ancestors(Graph& g, NodeRef old_child, NodeRef new_child) {
  auto parents = g.parents(old_child);  // copy: interning below may grow the table
  if (g.is_top(old_child)) {
    g.place_top(new_child);
    g.exclude(old_child);
  }
  for (const Edge& e : parents) {
    if (g.excluded(e.to)) continue;
    NodeSpec spec = g.node(e.to).spec;
    for (auto& c : spec.children)
      if (c.to == old_child) c.to = new_child;
    NodeRef copy = g.intern(spec, true);
    rebuild_ancestors(g, e.to, copy);
    g.exclude(e.to);
  }
}

}  // namespace

Composition resolve_chains(Graph& g) {
  Composition out;
  for (const InfluencerChain& chain : find_chains(g)) {
    const Node& terminal = g.node(chain.terminal);
    const NodeRef outer_agent = chain.links.front().agent;
    const NodeRef terminal_agent = terminal.agent();
    const NodeRef object = terminal.object();
    const Effect eff = chain.effective_effect(g);
    const bool odd = chain.reversers() % 2 == 1;

    NodeRef fresh = g.intern(NodeSpec::gfbf(outer_agent, eff, object, std::string(to_string(eff))), true);
    out.new_gfbfs.push_back(fresh);
    rebuild_ancestors(g, chain.links.front().node, fresh);
    for (const auto& link : chain.links) g.exclude(link.node);
    // a retain-only chain by the terminal's own agent rebuilds the terminal itself
    if (fresh != chain.terminal) g.exclude(chain.terminal);

    const auto evidence = g.evidence();  // copy: add_evidence appends
    auto idea_of_terminal = g.find(NodeSpec::idea_of(chain.terminal));
    for (const EvidenceFact& e : evidence) {
      const bool on_terminal = e.target == chain.terminal;
      const bool on_idea = idea_of_terminal && e.target == *idea_of_terminal;
      if (!on_terminal && !on_idea) continue;
      EvidenceFact copy = e;
      copy.synthesized = true;
      copy.display_id = 0;
      switch (e.attitude) {
        case Attitude::Intends:
          if (outer_agent != terminal_agent) continue;
          if (odd) copy.polarity = flip(copy.polarity);
          copy.target = fresh;
          break;
        case Attitude::BelievesTrue:
          if (odd) copy.polarity = flip(copy.polarity);
          copy.target = fresh;
          break;
        case Attitude::Sentiment:
          if (outer_agent != terminal_agent) continue;
          copy.target = g.intern(NodeSpec::idea_of(fresh), true);
          break;
        case Attitude::BelievesShould:
          continue;
      }
      out.new_evidence.push_back(g.add_evidence(copy));
    }
  }
  return out;
}

std::vector<NodeRef> expand_extra_roles(Graph& g, const Lexicon& lex) {
  std::vector<NodeRef> out;
  const auto fillers = g.role_fillers();
  for (const auto& [gfbf, filler] : fillers) {
    if (g.excluded(gfbf)) continue;
    const Node& n = g.node(gfbf);
    const GfbfEntry* entry = lex.gfbf_entry(n.spec.lex_key.empty() ? n.spec.anchor : n.spec.lex_key);
    if (!entry || !entry->extra_role) continue;
    const Effect eff = entry->extra_role->effect_on_object;
    NodeRef derived = g.intern(NodeSpec::gfbf(filler, eff, n.object(), std::string(to_string(eff))), true);
    g.set_extra_role(gfbf, derived);
    for (const Context& c : contexts_of(g, gfbf)) {
      if (has_negative_belief(c)) continue;
      wrap(g, belief_variant(c), derived);
    }
    out.push_back(derived);
  }
  return out;
}

}  // namespace implicature
