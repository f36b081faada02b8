#pragma once

#include <vector>

#include "implicature/graph.hpp"
#include "implicature/lexicon.hpp"

namespace implicature {

struct ChainLink {
  NodeRef agent;
  Influence kind;
  NodeRef node;
};

/// N-1 influencers (outermost first) over one terminal gfbf.
struct InfluencerChain {
  std::vector<ChainLink> links;
  NodeRef terminal;

  int reversers() const;
  Effect effective_effect(const Graph& g) const;
};

/// Maximal chains, one per influencer that no other influencer targets.
/// Throws EngineError("CyclicChain") on a loop.
std::vector<InfluencerChain> find_chains(const Graph& g);

struct Composition {
  std::vector<NodeRef> new_gfbfs;
  std::vector<EvidenceFact> new_evidence;
};

/// Replaces each chain by one gfbf <outermost agent, effective effect,
/// terminal object>. Every wrapper of the outermost influencer is rebuilt
/// over the new gfbf; the originals are excluded from inference.
Composition resolve_chains(Graph& g);

/// For gfbfs whose lexicon entry names a second role with a filler on the
/// input, derives <filler, role effect, object> and records it on the gfbf.
std::vector<NodeRef> expand_extra_roles(Graph& g, const Lexicon& lex);

}  // namespace implicature
