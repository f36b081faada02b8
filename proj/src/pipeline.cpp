#include "implicature/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "implicature/render.hpp"

namespace implicature {

using nlohmann::ordered_json;

std::vector<SentenceResult> analyze(const AnnotationDoc& doc, const Lexicon& lex, const Config& cfg) {
  std::vector<SentenceResult> out;
  int next_id = 1;
  for (const auto& sent : doc.sentences) {
    InputGraph in = build_input_graph(sent, lex, next_id);
    InferenceResult r = infer(std::move(in.graph), lex, cfg);
    next_id = r.graph.next_display_id();
    out.push_back({sent, std::move(r)});
  }
  return out;
}

AnnotationDoc with_polarity(const AnnotationDoc& doc, const std::string& id, Polarity polarity) {
  AnnotationDoc out = doc;
  bool found = false;
  for (auto& s : out.sentences)
    for (auto& l : s.lines)
      if (l.id == id && l.polarity) {
        l.polarity = polarity;
        found = true;
      }
  if (!found)
    throw InputError(ErrorCode::DanglingReference, "--what-if", 0, "no line '" + id + "' with a polarity");
  return out;
}

std::vector<std::string> root_facts(const Graph& g) {
  std::set<std::string> facts;
  for (NodeRef r : g.top())
    if (!g.excluded(r)) facts.insert(describe(g, r));
  return {facts.begin(), facts.end()};
}

std::vector<FactDiff> diff_root_facts(const std::vector<SentenceResult>& before,
                                      const std::vector<SentenceResult>& after) {
  std::vector<FactDiff> out;
  for (std::size_t i = 0; i < before.size() && i < after.size(); ++i) {
    auto a = root_facts(before[i].result.graph), b = root_facts(after[i].result.graph);
    FactDiff d{before[i].sentence.text, {}, {}};
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(d.only_before));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(d.only_after));
    out.push_back(std::move(d));
  }
  return out;
}

std::string render_diff(const std::vector<FactDiff>& diff) {
  std::ostringstream os;
  for (const auto& d : diff) {
    if (d.only_before.empty() && d.only_after.empty()) continue;
    os << '"' << d.sentence << "\"\n";
    for (const auto& f : d.only_before) os << "- " << f << "\n";
    for (const auto& f : d.only_after) os << "+ " << f << "\n";
  }
  return os.str();
}

namespace {

int id_of(const Graph& g, NodeRef r) { return g.node(r).display_id; }

ordered_json ids(const Graph& g, const std::vector<NodeRef>& refs) {
  ordered_json a = ordered_json::array();
  for (NodeRef r : refs) a.push_back(id_of(g, r));
  return a;
}

ordered_json steps_json(const Graph& g, const Context& c) {
  ordered_json a = ordered_json::array();
  for (const auto& s : c)
    a.push_back({{"source", g.node(s.source).spec.name},
                 {"attType", to_string(s.attitude)},
                 {"polarity", to_string(s.polarity)}});
  return a;
}

ordered_json block_json(const Graph& g, const BlockReport& b) {
  return {{"rule", b.rule},
          {"binding", ids(g, b.binding)},
          {"cause", to_string(b.cause)},
          {"context", b.context},
          {"detail", b.detail}};
}

std::vector<NodeRef> by_display_id(const Graph& g) {
  auto nodes = g.all();
  std::sort(nodes.begin(), nodes.end(), [&](NodeRef a, NodeRef b) { return id_of(g, a) < id_of(g, b); });
  return nodes;
}

}  // namespace

ordered_json to_json(const Graph& g) {
  ordered_json nodes = ordered_json::array();
  for (NodeRef r : by_display_id(g)) {
    const Node& n = g.node(r);
    ordered_json j;
    j["id"] = n.display_id;
    j["type"] = to_string(n.type());
    if (n.spec.attitude) j["attType"] = to_string(*n.spec.attitude);
    if (n.spec.polarity) j["polarity"] = to_string(*n.spec.polarity);
    if (n.spec.property != Property::None) j["property"] = to_string(n.spec.property);
    if (n.spec.influence) j["influence"] = to_string(*n.spec.influence);
    if (n.is_entity()) j["name"] = n.spec.name;
    if (!n.spec.anchor.empty()) j["anchor"] = n.spec.anchor;
    if (!n.spec.lex_key.empty()) j["lex_key"] = n.spec.lex_key;
    j["from_input"] = n.from_input;
    if (g.excluded(r)) j["excluded"] = true;
    ordered_json kids = ordered_json::object();
    for (const Edge& e : make_signature(n.spec).children) kids[std::string(to_string(e.label))] = id_of(g, e.to);
    j["children"] = kids;
    nodes.push_back(std::move(j));
  }
  ordered_json evidence = ordered_json::array();
  for (const auto& e : g.evidence()) {
    ordered_json j;
    j["id"] = e.display_id;
    j["holder"] = e.holder ? ordered_json(id_of(g, *e.holder)) : ordered_json(nullptr);
    j["attType"] = to_string(e.attitude);
    j["polarity"] = to_string(e.polarity);
    j["substantial"] = e.substantial;
    j["target"] = id_of(g, e.target);
    j["synthesized"] = e.synthesized;
    evidence.push_back(std::move(j));
  }
  ordered_json extra = ordered_json::array();
  for (const auto& [gfbf, derived] : g.extra_roles()) extra.push_back({{"gfbf", id_of(g, gfbf)}, {"derived", id_of(g, derived)}});
  ordered_json fillers = ordered_json::array();
  for (const auto& [gfbf, filler] : g.role_fillers()) fillers.push_back({{"gfbf", id_of(g, gfbf)}, {"filler", id_of(g, filler)}});

  return {{"next_id", g.next_display_id()},
          {"nodes", nodes},
          {"top", ids(g, g.top())},
          {"evidence", evidence},
          {"extra_roles", extra},
          {"role_fillers", fillers}};
}

Graph graph_from_json(const ordered_json& j) {
  Graph g;
  std::map<int, NodeRef> by_id;
  auto ref = [&](int id) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw EngineError("MalformedJson", "unknown node id " + std::to_string(id));
    return it->second;
  };
  auto need = [](auto opt, const std::string& what) {
    if (!opt) throw EngineError("MalformedJson", "bad " + what);
    return *opt;
  };
  for (const auto& n : j.at("nodes")) {
    NodeSpec s;
    s.type = need(parse_node_type(n.at("type").get<std::string>()), "type");
    if (n.contains("attType")) s.attitude = need(parse_attitude(n["attType"].get<std::string>()), "attType");
    if (n.contains("polarity")) s.polarity = need(parse_polarity(n["polarity"].get<std::string>()), "polarity");
    if (n.contains("property")) s.property = need(parse_property(n["property"].get<std::string>()), "property");
    if (n.contains("influence")) s.influence = need(parse_influence(n["influence"].get<std::string>()), "influence");
    if (n.contains("name")) s.name = n["name"].get<std::string>();
    if (n.contains("anchor")) s.anchor = n["anchor"].get<std::string>();
    if (n.contains("lex_key")) s.lex_key = n["lex_key"].get<std::string>();
    for (const auto& [label, id] : n.at("children").items())
      s.children.push_back({need(parse_edge_label(label), "edge label"), ref(id.get<int>())});
    g.set_extended_belief_targets(true);
    NodeRef r = g.intern(s, n.at("from_input").get<bool>());
    g.mutable_node(r).display_id = n.at("id").get<int>();
    by_id[n.at("id").get<int>()] = r;
    if (n.value("excluded", false)) g.exclude(r);
  }
  g.set_extended_belief_targets(false);
  for (const auto& id : j.at("top")) g.place_top(ref(id.get<int>()));
  for (const auto& e : j.at("evidence")) {
    EvidenceFact f;
    f.display_id = e.at("id").get<int>();
    if (!e.at("holder").is_null()) f.holder = ref(e["holder"].get<int>());
    f.attitude = need(parse_attitude(e.at("attType").get<std::string>()), "attType");
    f.polarity = need(parse_polarity(e.at("polarity").get<std::string>()), "polarity");
    f.substantial = e.at("substantial").get<bool>();
    f.target = ref(e.at("target").get<int>());
    f.synthesized = e.at("synthesized").get<bool>();
    g.add_evidence(f);
  }
  for (const auto& x : j.at("extra_roles")) g.set_extra_role(ref(x.at("gfbf").get<int>()), ref(x.at("derived").get<int>()));
  for (const auto& x : j.at("role_fillers")) g.set_role_filler(ref(x.at("gfbf").get<int>()), ref(x.at("filler").get<int>()));
  g.set_next_display_id(j.at("next_id").get<int>());
  return g;
}

ordered_json to_json(const std::vector<SentenceResult>& results) {
  ordered_json sentences = ordered_json::array();
  for (const auto& sr : results) {
    const Graph& g = sr.result.graph;
    ordered_json spaces = ordered_json::array();
    for (NodeRef r : by_display_id(g))
      for (const auto& d : spaces_of(g, r))
        spaces.push_back({{"node", id_of(g, r)},
                          {"steps", steps_json(g, d.steps)},
                          {"path", ids(g, d.defining_path)},
                          {"from_input", d.from_input}});
    ordered_json trace = ordered_json::array();
    for (const auto& e : sr.result.trace) {
      ordered_json blocks = ordered_json::array();
      for (const auto& b : e.blocks) blocks.push_back(block_json(g, b));
      trace.push_back({{"pass", e.pass},
                       {"rule", e.rule},
                       {"preconditions", ids(g, e.preconditions)},
                       {"assumptions", ids(g, e.assumptions)},
                       {"conclusions", ids(g, e.conclusions)},
                       {"created", ids(g, e.created)},
                       {"existing", ids(g, e.existing)},
                       {"blocks", blocks}});
    }
    ordered_json blocks = ordered_json::array();
    for (const auto& b : sr.result.blocks) blocks.push_back(block_json(g, b));
    sentences.push_back({{"text", sr.sentence.text},
                         {"passes", sr.result.passes},
                         {"graph", to_json(g)},
                         {"spaces", spaces},
                         {"trace", trace},
                         {"blocks", blocks}});
  }
  return {{"format_version", 1}, {"sentences", sentences}};
}

}  // namespace implicature
