#include "implicature/render.hpp"

#include <algorithm>
#include <sstream>

namespace implicature {

namespace {

std::string pad(int indent) { return std::string(static_cast<std::size_t>(indent) * 4, ' '); }

const std::string& name_of(const Graph& g, NodeRef r) { return g.node(r).spec.name; }

std::string head_line(const Graph& g, NodeRef r) {
  const Node& n = g.node(r);
  std::ostringstream os;
  os << n.display_id << ' ';
  switch (n.type()) {
    case NodeType::Anim:
    case NodeType::Thing:
      os << n.spec.name;
      break;
    case NodeType::PrivateState:
      os << name_of(g, n.source()) << ' ' << to_string(*n.spec.polarity) << ' ' << to_string(*n.spec.attitude);
      if (n.spec.property == Property::Substantial) os << " substantial";
      break;
    case NodeType::Gfbf:
      os << name_of(g, n.agent()) << ' '
         << (n.spec.anchor.empty() || n.spec.anchor == "\"\"" ? std::string(to_string(n.effect())) : n.spec.anchor)
         << ' ' << name_of(g, n.object());
      break;
    case NodeType::Influencer:
      os << name_of(g, n.agent()) << " <" << to_string(*n.spec.influence) << '>';
      break;
    case NodeType::IdeaOf:
      os << "ideaOf";
      break;
    case NodeType::PX:
      os << to_string(n.spec.property);
      break;
    case NodeType::Agreement:
      os << name_of(g, n.source()) << (n.spec.polarity == Polarity::Positive ? " agrees" : " disagrees")
         << " with " << name_of(g, *n.child(EdgeLabel::WithWhom)) << " that";
      break;
    case NodeType::State:
    case NodeType::Event:
      os << to_string(n.type());
      break;
  }
  return os.str();
}

}  // namespace

std::string render_node(const Graph& g, NodeRef r, int indent) {
  const Node& n = g.node(r);
  std::string out = pad(indent) + head_line(g, r) + "\n";
  switch (n.type()) {
    case NodeType::PrivateState:
      out += render_node(g, n.target(), indent + 1);
      break;
    case NodeType::Influencer:
      out += render_node(g, n.target(), indent + 1);
      break;
    case NodeType::IdeaOf:
      out += render_node(g, *n.child(EdgeLabel::IdeaObject), indent + 1);
      break;
    case NodeType::PX:
      out += render_node(g, *n.child(EdgeLabel::X), indent + 1);
      break;
    case NodeType::Agreement:
      out += render_node(g, n.target(), indent + 1);
      break;
    case NodeType::Gfbf:
      if (auto extra = g.extra_role(r)) {
        const Node& d = g.node(*extra);
        out += pad(indent + 1) + std::to_string(d.display_id) + ' ' + name_of(g, d.agent()) + "; which is " +
               std::string(to_string(d.effect())) + ' ' + name_of(g, d.object()) + "\n";
      }
      break;
    default:
      break;
  }
  return out;
}

std::string render_evidence(const Graph& g, const EvidenceFact& e, int indent) {
  std::string line = pad(indent) + std::to_string(e.display_id) + ' ';
  const bool pos = e.polarity == Polarity::Positive;
  switch (e.attitude) {
    case Attitude::Intends:
      line += std::string("There is evidence that the following is ") + (pos ? "" : "not ") + "intentional:";
      break;
    case Attitude::BelievesTrue:
      line += std::string("There is evidence that the following is ") + (pos ? "" : "not ") + "substantial";
      break;
    default:
      line += "(evidence," + (e.holder ? name_of(g, *e.holder) : std::string("none")) + "," +
              std::string(to_string(e.polarity)) + "," + std::string(to_string(e.attitude)) + ")";
      break;
  }
  return line + "\n" + render_node(g, e.target, indent + 1);
}

std::string render_graph(const Graph& g) {
  std::string out;
  for (NodeRef r : g.top())
    if (!g.excluded(r)) out += render_node(g, r);
  for (const EvidenceFact& e : g.evidence()) out += render_evidence(g, e);
  return out;
}

namespace {

// The outermost nodes holding r that existed before id_floor.
std::vector<NodeRef> holders(const Graph& g, NodeRef r, int id_floor) {
  std::vector<NodeRef> out;
  if (g.is_top(r)) out.push_back(r);
  for (const auto& d : spaces_of(g, r))
    if (g.node(d.defining_path.front()).display_id < id_floor) out.push_back(d.defining_path.front());
  return out;
}

}  // namespace

std::string render_trace(const InferenceResult& r) {
  const Graph& g = r.graph;
  std::ostringstream os;
  for (const TraceEvent& e : r.trace) {
    const Rule& rule = rule_named(e.rule);
    os << "[" << e.rule << "]  (pass " << e.pass << ")\n";
    for (const auto& p : rule.preconditions) os << "    " << p << "\n";
    for (const auto& a : rule.assumptions) os << "    (Assume) " << a << "\n";
    for (const auto& q : rule.conclusions) os << "    ==> " << q << "\n";
    os << "Preconditions:\n";
    for (NodeRef p : e.preconditions)
      for (NodeRef h : holders(g, p, e.id_floor)) os << render_node(g, h, 1);
    if (!e.assumptions.empty()) {
      os << "Assumptions:\n";
      for (NodeRef a : e.assumptions) os << render_node(g, a, 1);
    }
    std::vector<NodeRef> shown;
    for (NodeRef c : e.created)
      if (g.is_top(c)) shown.push_back(c);
    if (!shown.empty() || !e.existing.empty()) os << "==> Infer Node:\n";
    for (NodeRef c : shown) os << render_node(g, c, 1);
    if (!e.existing.empty()) {
      os << "    Existing:\n";
      for (NodeRef c : e.existing) os << render_node(g, c, 1);
    }
    for (const BlockReport& b : e.blocks) {
      switch (b.cause) {
        case BlockCause::NegativeBeliefPath:
          os << "Inference blocked in space [" << b.context << "]:\n    because it contains a negative believesTrue.\n";
          break;
        case BlockCause::SpaceContradiction:
          os << "Inference blocked in space [" << b.context << "]:\n    because it would contradict a node already there.\n";
          break;
        case BlockCause::Evidence:
          os << "Blocked by evidence node " << b.detail << "\n";
          break;
        case BlockCause::NoAssumptionBasis:
          os << "No basis for the assumption in space [" << b.context << "]; rule does not fire.\n";
          break;
      }
    }
    os << "\n";
  }
  return os.str();
}

std::string render_by_spaces(const InferenceResult& r) {
  const Graph& g = r.graph;
  std::vector<NodeRef> nodes = g.all();
  std::sort(nodes.begin(), nodes.end(),
            [&](NodeRef a, NodeRef b) { return g.node(a).display_id < g.node(b).display_id; });
  std::ostringstream os;
  for (NodeRef n : nodes) {
    if (g.node(n).is_space_step() || g.excluded(n)) continue;
    auto spaces = spaces_of(g, n);
    if (spaces.empty() && !g.is_top(n)) continue;
    for (const auto& d : spaces) {
      os << (d.from_input ? "From Input: " : "") << "[" << g.node(d.defining_path.front()).display_id << ' '
         << render_steps(g, d.steps) << "]\n";
    }
    os << render_node(g, n);
  }
  return os.str();
}

std::string describe(const Graph& g, NodeRef r) {
  const Node& n = g.node(r);
  auto sub = [&](NodeRef c) {
    const Node& k = g.node(c);
    return k.is_entity() ? k.spec.name : "(" + describe(g, c) + ")";
  };
  switch (n.type()) {
    case NodeType::Anim:
    case NodeType::Thing:
      return n.spec.name;
    case NodeType::PrivateState: {
      std::string s = name_of(g, n.source()) + " " + std::string(sign_char(*n.spec.polarity)) +
                      std::string(abbreviation(*n.spec.attitude));
      if (n.spec.property == Property::Substantial) s += " substantial";
      return s + " " + sub(n.target());
    }
    case NodeType::Gfbf:
      return name_of(g, n.agent()) + " " + std::string(to_string(n.effect())) + " " + name_of(g, n.object());
    case NodeType::Influencer:
      return name_of(g, n.agent()) + " " + std::string(to_string(*n.spec.influence)) + " " + sub(n.target());
    case NodeType::IdeaOf:
      return "ideaOf " + sub(*n.child(EdgeLabel::IdeaObject));
    case NodeType::PX:
      return std::string(to_string(n.spec.property)) + " " + sub(*n.child(EdgeLabel::X));
    case NodeType::Agreement:
      return name_of(g, n.source()) + (n.spec.polarity == Polarity::Positive ? " agrees with " : " disagrees with ") +
             name_of(g, *n.child(EdgeLabel::WithWhom)) + " that " + describe(g, n.target());
    case NodeType::State:
    case NodeType::Event:
      return canonical(g, r);
  }
  return "?";
}

}  // namespace implicature
