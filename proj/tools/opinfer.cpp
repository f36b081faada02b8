// Command-line driver: parse an annotation file, run inference per sentence,
// print the graph, trace, by-spaces view, a what-if diff or JSON.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "implicature/pipeline.hpp"
#include "implicature/render.hpp"

namespace fs = std::filesystem;
using namespace implicature;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(ErrorCode::MalformedRecord, path, 0, "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

void print_results(const std::vector<SentenceResult>& results, bool trace, bool by_spaces) {
  for (const auto& sr : results) {
    std::cout << '"' << sr.sentence.text << "\"\n";
    if (trace) std::cout << render_trace(sr.result);
    if (by_spaces)
      std::cout << render_by_spaces(sr.result);
    else if (!trace)
      std::cout << render_graph(sr.result.graph);
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forward-chaining opinion implicature inference"};
  std::string input, lexicon_path, json_out, what_if, rule_order;
  bool trace = false, by_spaces = false, extended = false, fire_once = true;
  int max_iterations = 50;
  app.add_option("--input", input, "annotation file")->required();
  app.add_option("--lexicon", lexicon_path, "lexicon file (default: lexicon.lex beside the input, if present)");
  app.add_flag("--trace", trace, "print the inference trace");
  app.add_flag("--by-spaces", by_spaces, "print nodes grouped by belief space");
  app.add_option("--json", json_out, "write JSON results to this file");
  app.add_option("--what-if", what_if, "LINEID=positive|negative: flip one polarity and diff the results");
  app.add_option("--fire-once", fire_once, "fire rule5 variants once per precondition")->default_val(true);
  app.add_flag("--extended-belief-spaces", extended, "also place beliefs about sentiment targets");
  app.add_option("--max-iterations", max_iterations, "pass limit")->check(CLI::PositiveNumber);
  app.add_option("--rule-order", rule_order, "comma separated rule names");
  CLI11_PARSE(app, argc, argv);

  try {
    Config cfg;
    cfg.fire_once = fire_once;
    cfg.extended_belief_spaces = extended;
    cfg.max_iterations = max_iterations;
    if (!rule_order.empty()) {
      cfg.rule_order = split_csv(rule_order);
      for (const auto& name : cfg.rule_order) {
        try {
          rule_named(name);
        } catch (const std::invalid_argument&) {
          std::cerr << "--rule-order: unknown rule '" << name << "'\n";
          return 1;
        }
      }
    }

    if (lexicon_path.empty()) {
      auto beside = fs::path(input).parent_path() / "lexicon.lex";
      if (fs::exists(beside)) lexicon_path = beside.string();
    }
    Lexicon lex = lexicon_path.empty() ? Lexicon{} : parse_lexicon(slurp(lexicon_path), lexicon_path);
    AnnotationDoc doc = parse_document(slurp(input), input);

    auto results = analyze(doc, lex, cfg);

    if (!what_if.empty()) {
      auto eq = what_if.find('=');
      std::optional<Polarity> pol;
      if (eq != std::string::npos) pol = parse_polarity(what_if.substr(eq + 1));
      if (!pol) {
        std::cerr << "--what-if: expected LINEID=positive|negative\n";
        return 1;
      }
      auto flipped = analyze(with_polarity(doc, what_if.substr(0, eq), *pol), lex, cfg);
      std::cout << render_diff(diff_root_facts(results, flipped));
    } else {
      print_results(results, trace, by_spaces);
    }

    if (!json_out.empty()) {
      std::ofstream out(json_out, std::ios::binary);
      if (!out) throw InputError(ErrorCode::MalformedRecord, json_out, 0, "cannot write file");
      out << to_json(results).dump(2) << "\n";
    }
    return 0;
  } catch (const InputError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const EngineError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
