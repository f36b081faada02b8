#include <gtest/gtest.h>

#include "implicature/spaces.hpp"
#include "oracle.hpp"

using namespace implicature;

namespace {

struct TreeWorld {
  Graph g;
  NodeRef writer = g.entity("writer"), mother = g.entity("mother"), tree = g.entity("the tree", true),
          boy = g.entity("the boy");
  NodeRef fell = g.intern(NodeSpec::gfbf(tree, Effect::BadFor, boy));
  Context wb = {{writer, Attitude::BelievesTrue, Polarity::Positive}};
  Term sent(NodeRef src, Polarity p, NodeRef target) {
    return Term(NodeSpec::private_state(src, Attitude::Sentiment, p, target));
  }
};

std::vector<std::string> files() {
  return {"moveon.ann", "wars.ann", "blooming.ann", "tree.ann", "taxes.ann", "accusing.ann", "denial.ann",
          "virus.ann",  "insurance.ann", "deprive.ann", "gay_marriage.ann", "koran.ann"};
}

}  // namespace

TEST(Spaces, WouldContradictExamples) {
  TreeWorld w;
  NodeRef neg = w.g.realize(w.sent(w.mother, Polarity::Negative, w.tree));
  wrap(w.g, w.wb, neg);
  EXPECT_TRUE(would_contradict(w.g, w.wb, w.sent(w.mother, Polarity::Positive, w.tree)));
  EXPECT_FALSE(would_contradict(w.g, w.wb, w.sent(w.mother, Polarity::Negative, w.boy)));
  EXPECT_FALSE(would_contradict(w.g, {}, w.sent(w.mother, Polarity::Positive, w.tree)));

  Context wnb = {{w.writer, Attitude::BelievesTrue, Polarity::Negative}};
  EXPECT_TRUE(would_contradict(w.g, wnb, Term(w.g.node(w.fell).spec)));
}

TEST(Spaces, WouldContradictLooksInsideNewSpaces) {
  // writer +S {mother +S boy} would put mother +S boy next to mother -S boy in [writer +S].
  TreeWorld w;
  Context ws = {{w.writer, Attitude::Sentiment, Polarity::Positive}};
  wrap(w.g, ws, w.g.realize(w.sent(w.mother, Polarity::Negative, w.boy)));
  NodeSpec head;
  head.type = NodeType::PrivateState;
  head.attitude = Attitude::Sentiment;
  head.polarity = Polarity::Positive;
  head.children = {{EdgeLabel::Source, w.writer}};
  Term outer(head);
  outer.with(EdgeLabel::Target, w.sent(w.mother, Polarity::Positive, w.boy));
  EXPECT_TRUE(would_contradict(w.g, {}, outer));
}

TEST(Spaces, RootIsInNoSpace) {
  TreeWorld w;
  NodeRef root = wrap(w.g, w.wb, w.fell);
  EXPECT_TRUE(spaces_of(w.g, root).empty());
  auto s = spaces_of(w.g, w.fell);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(render_steps(w.g, s[0].steps), "writer +B");
  EXPECT_EQ(s[0].defining_path, std::vector<NodeRef>{root});
}

TEST(Spaces, BeliefVariantReplacesEverySentimentStep) {
  TreeWorld w;
  Context c = {{w.writer, Attitude::Sentiment, Polarity::Negative},
               {w.mother, Attitude::BelievesTrue, Polarity::Positive},
               {w.boy, Attitude::Sentiment, Polarity::Positive}};
  Context v = belief_variant(c);
  EXPECT_EQ(render_steps(w.g, v), "writer +B mother +B the boy +B");
  EXPECT_TRUE(has_sentiment(c));
  EXPECT_FALSE(has_sentiment(v));
}

TEST(Spaces, MatchesIndependentEnumeration) {
  for (const auto& f : files()) {
    auto results = oracle::run_file(f);
    auto exported = oracle::export_all(results);
    const Graph& g = results.at(0).result.graph;
    for (NodeRef n : g.all()) {
      if (g.excluded(n)) continue;
      std::set<std::string> mine;
      for (const auto& d : spaces_of(g, n)) mine.insert(render_steps(g, d.steps));
      if (g.is_top(n)) mine.insert("");
      EXPECT_EQ(mine, oracle::spaces(exported.at(0), g.node(n).display_id)) << f << " node " << g.node(n).display_id;
      EXPECT_EQ(mine.size(), contexts_of(g, n).size());
    }
  }
}

TEST(Spaces, DefiningPathEndsAboveNode) {
  for (const auto& f : files()) {
    auto results = oracle::run_file(f);
    const Graph& g = results.at(0).result.graph;
    for (NodeRef n : g.all())
      for (const auto& d : spaces_of(g, n)) {
        ASSERT_EQ(d.defining_path.size(), d.steps.size());
        EXPECT_TRUE(g.is_top(d.defining_path.front()));
        EXPECT_EQ(g.node(d.defining_path.back()).target(), n);
        bool all_input = true;
        for (NodeRef p : d.defining_path) all_input &= g.node(p).from_input;
        EXPECT_EQ(d.from_input, all_input && g.node(n).from_input);
      }
  }
}

TEST(Spaces, InferredNodesAvoidNegativeBeliefSpaces) {
  for (const auto& f : files()) {
    auto results = oracle::run_file(f);
    const Graph& g = results.at(0).result.graph;
    for (NodeRef n : g.all()) {
      if (g.node(n).from_input) continue;
      for (const auto& d : spaces_of(g, n)) EXPECT_FALSE(has_negative_belief(d.steps)) << f;
    }
  }
}

TEST(Spaces, BeliefVariantClosure) {
  for (const auto& f : files()) {
    auto results = oracle::run_file(f);
    const Graph& g = results.at(0).result.graph;
    // the placed props are the inferred private states; their targets sit in
    // spaces the props themselves open
    for (NodeRef n : g.all()) {
      if (g.node(n).from_input || !g.node(n).is_private_state()) continue;
      for (const Context& c : contexts_of(g, n))
        if (has_sentiment(c))
          EXPECT_TRUE(in_context(g, n, belief_variant(c)))
              << f << ": node " << g.node(n).display_id << " in [" << render_steps(g, c) << "]";
    }
  }
}

TEST(Spaces, NoContradictionsAtFixpoint) {
  for (const auto& f : files()) {
    auto results = oracle::run_file(f);
    EXPECT_TRUE(find_contradictions(results.at(0).result.graph).empty()) << f;
    EXPECT_TRUE(oracle::contradictions(oracle::export_all(results).at(0)).empty()) << f;
  }
}

TEST(Spaces, BlockedExtensionIntoNegativeBelief) {
  auto g = oracle::run_and_export("accusing.ann").at(0);
  bool found = false;
  for (const auto& b : g.sentence.at("blocks")) found |= b.at("cause") == "negative-belief-path";
  EXPECT_TRUE(found);
}
