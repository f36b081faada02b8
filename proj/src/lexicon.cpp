#include "implicature/lexicon.hpp"

#include <sstream>
#include <vector>

#include "implicature/annotation.hpp"

namespace implicature {

std::optional<Polarity> Lexicon::connotation_of(std::string_view key) const {
  if (auto it = connotation.find(key); it != connotation.end()) return it->second;
  return std::nullopt;
}

const GfbfEntry* Lexicon::gfbf_entry(std::string_view key) const {
  auto it = gfbf_entries.find(key);
  return it == gfbf_entries.end() ? nullptr : &it->second;
}

namespace {

std::string join(const std::vector<std::string>& words, std::size_t from, std::size_t to) {
  std::string out;
  for (std::size_t i = from; i < to; ++i) {
    if (!out.empty()) out += ' ';
    out += words[i];
  }
  return out;
}

template <class Map, class Value>
void insert_unique(Map& m, const std::string& key, Value v, std::string_view file, int line) {
  if (!m.emplace(key, v).second)
    throw InputError(ErrorCode::DuplicateKey, std::string(file), line, "duplicate key '" + key + "'");
}

}  // namespace

Lexicon parse_lexicon(std::string_view text, std::string_view file) {
  Lexicon lex;
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ws(raw);
    std::vector<std::string> w;
    for (std::string t; ws >> t;) w.push_back(t);
    if (w.empty()) continue;

    auto bad = [&](const std::string& why) {
      throw InputError(ErrorCode::MalformedRecord, std::string(file), line_no, why);
    };
    if (w.size() < 3) bad("expected '<table> <key> <value>'");

    const std::string& table = w[0];
    if (table == "conn") {
      auto p = parse_polarity(w.back());
      if (!p) bad("connotation must be positive or negative");
      insert_unique(lex.connotation, join(w, 1, w.size() - 1), *p, file, line_no);
    } else if (table == "infl") {
      auto i = parse_influence(w.back());
      if (!i) bad("influencer must be retain or reverse");
      insert_unique(lex.influencer_entries, join(w, 1, w.size() - 1), *i, file, line_no);
    } else if (table == "gfbf") {
      GfbfEntry entry;
      std::size_t end = w.size();
      if (w.back().rfind("role", 0) == 0) {
        const std::string& r = w.back();
        auto eq = r.find('=');
        if (eq == std::string::npos || eq <= 4) bad("role annotation must read role<N>=<goodFor|badFor>");
        auto eff = parse_effect(r.substr(eq + 1));
        int pos = 0;
        try {
          pos = std::stoi(r.substr(4, eq - 4));
        } catch (const std::exception&) {
          bad("bad role position in '" + r + "'");
        }
        if (!eff || pos < 2) bad("bad role annotation '" + r + "'");
        entry.extra_role = ExtraRole{pos, *eff};
        --end;
      }
      if (end < 3) bad("expected 'gfbf <key> <goodFor|badFor>'");
      auto e = parse_effect(w[end - 1]);
      if (!e) bad("gfbf effect must be goodFor or badFor");
      entry.effect = *e;
      insert_unique(lex.gfbf_entries, join(w, 1, end - 1), entry, file, line_no);
    } else {
      bad("unknown table '" + table + "'");
    }
  }
  return lex;
}

}  // namespace implicature
