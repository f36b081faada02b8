#include "implicature/annotation.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace implicature {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::RootConstraintViolation: return "RootConstraintViolation";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
  }
  return "?";
}

namespace {

std::string format_error(ErrorCode code, const std::string& file, int line,
                         const std::string& message) {
  std::ostringstream os;
  os << file << ':' << line << ": " << to_string(code) << ": " << message;
  return os.str();
}

}  // namespace

InputError::InputError(ErrorCode code, std::string file, int line, std::string message)
    : std::runtime_error(format_error(code, file, line, message)),
      code_(code),
      file_(std::move(file)),
      line_(line),
      message_(std::move(message)) {}

std::string_view to_string(LineKind kind) {
  switch (kind) {
    case LineKind::Gfbf: return "gfbf";
    case LineKind::Influencer: return "influencer";
    case LineKind::Subjectivity: return "subjectivity";
    case LineKind::PrivateState: return "privateState";
    case LineKind::Evidence: return "evidence";
    case LineKind::Prop: return "prop";
  }
  return "?";
}

bool AnnotationLine::operator==(const AnnotationLine& o) const {
  // Line numbers are positional, not structural.
  return id == o.id && kind == o.kind && actor == o.actor && effect == o.effect &&
         influence == o.influence && attitude == o.attitude && polarity == o.polarity &&
         anchor == o.anchor && target_entity == o.target_entity && target_id == o.target_id &&
         extra_filler == o.extra_filler && substantial == o.substantial;
}

const AnnotationLine* SentenceAnnotation::find(std::string_view id) const {
  for (const auto& l : lines)
    if (l.id == id) return &l;
  return nullptr;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }
bool ends_with(std::string_view s, std::string_view p) {
  return s.size() >= p.size() && s.substr(s.size() - p.size()) == p;
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size())
    s.replace(pos, from.size(), to);
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

bool looks_like_id(std::string_view tok) {
  std::size_t i = 0;
  while (i < tok.size() && std::isalpha(static_cast<unsigned char>(tok[i]))) ++i;
  if (i == 0 || i == tok.size()) return false;
  static const std::set<std::string, std::less<>> prefixes = {"E", "S", "B", "I", "V"};
  if (!prefixes.contains(tok.substr(0, i))) return false;
  return std::all_of(tok.begin() + static_cast<long>(i), tok.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

class BlockParser {
 public:
  BlockParser(std::string_view file) : file_(file) {}

  [[noreturn]] void fail(ErrorCode code, int line, const std::string& msg) const {
    throw InputError(code, file_, line, msg);
  }

  // Splits on commas that are not nested in parentheses.
  std::vector<std::string> split_top_level(std::string_view s, int line) const {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : s) {
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth < 0) fail(ErrorCode::MalformedLine, line, "unbalanced parentheses");
      if (c == ',' && depth == 0) {
        parts.push_back(trim(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (depth != 0) fail(ErrorCode::MalformedLine, line, "unbalanced parentheses");
    parts.push_back(trim(cur));
    return parts;
  }

  EntityRef parse_entity(std::string_view raw, int line) const {
    std::string s = trim(raw);
    EntityRef e;
    if (auto open = s.find('('); open != std::string::npos) {
      if (s.back() != ')') fail(ErrorCode::MalformedLine, line, "bad entity '" + s + "'");
      std::string inner = trim(std::string_view(s).substr(open + 1, s.size() - open - 2));
      if (!ends_with(inner, ":lexEntry"))
        fail(ErrorCode::MalformedLine, line, "entity annotation must be '(key:lexEntry)'");
      e.lex_key = trim(std::string_view(inner).substr(0, inner.size() - 9));
      s = trim(std::string_view(s).substr(0, open));
    }
    if (ends_with(s, ":thing")) {
      e.thing = true;
      s = trim(std::string_view(s).substr(0, s.size() - 6));
    }
    if (s.empty()) fail(ErrorCode::MalformedLine, line, "empty entity name");
    e.name = s;
    return e;
  }

  // "positive sentiment (urges)" -> keywords {"positive","sentiment"}, anchor "urges".
  std::pair<std::vector<std::string>, Anchor> parse_keyed(std::string_view raw, int line) const {
    std::string s = trim(raw);
    Anchor anchor;
    std::string head = s;
    if (auto open = s.find('('); open != std::string::npos) {
      if (s.back() != ')') fail(ErrorCode::MalformedLine, line, "anchor must end with ')'");
      std::string inner = std::string(std::string_view(s).substr(open + 1, s.size() - open - 2));
      head = s.substr(0, open);
      if (auto comma = inner.rfind(','); comma != std::string::npos) {
        std::string last = trim(std::string_view(inner).substr(comma + 1));
        if (ends_with(last, ":lexEntry")) {
          anchor.lex_key = trim(std::string_view(last).substr(0, last.size() - 9));
          inner = inner.substr(0, comma);
        }
      } else if (std::string t = trim(inner); ends_with(t, ":lexEntry")) {
        anchor.lex_key = trim(std::string_view(t).substr(0, t.size() - 9));
        inner.clear();
      }
      anchor.text = trim(inner);
    }
    return {split_words(head), anchor};
  }

  AnnotationLine parse_line(std::string_view raw, int line) const {
    std::string s = trim(raw);
    replace_all(s, "\xE2\x9F\xA8", "<");  // ⟨
    replace_all(s, "\xE2\x9F\xA9", ">");  // ⟩

    AnnotationLine out;
    out.line_number = line;
    auto space = s.find_first_of(" \t");
    if (space == std::string::npos) fail(ErrorCode::MalformedLine, line, "expected '<id> <kind> <...>'");
    out.id = s.substr(0, space);
    std::string rest = trim(std::string_view(s).substr(space));

    if (starts_with(rest, "p(")) {
      if (rest.back() != ')') fail(ErrorCode::MalformedLine, line, "bad p(...) line");
      auto args = split_top_level(std::string_view(rest).substr(2, rest.size() - 3), line);
      if (args.size() != 2 || args[1] != "substantial")
        fail(ErrorCode::MalformedLine, line, "prop lines must read p(<id>,substantial)");
      out.kind = LineKind::Prop;
      out.target_id = args[0];
      out.substantial = true;
      return out;
    }

    auto lt = rest.find('<');
    if (lt == std::string::npos || rest.back() != '>')
      fail(ErrorCode::MalformedLine, line, "missing <...> argument list");
    std::string kind = trim(std::string_view(rest).substr(0, lt));
    auto args = split_top_level(std::string_view(rest).substr(lt + 1, rest.size() - lt - 2), line);

    if (kind == "gfbf") out.kind = LineKind::Gfbf;
    else if (kind == "influencer") out.kind = LineKind::Influencer;
    else if (kind == "subjectivity") out.kind = LineKind::Subjectivity;
    else if (kind == "privateState") out.kind = LineKind::PrivateState;
    else if (kind == "evidence") out.kind = LineKind::Evidence;
    else fail(ErrorCode::MalformedLine, line, "unknown line kind '" + kind + "'");

    const bool gfbf = out.kind == LineKind::Gfbf;
    if (args.size() != 3 && !(gfbf && args.size() == 4))
      fail(ErrorCode::MalformedLine, line, "expected 3 comma-separated arguments");

    if (out.kind == LineKind::Evidence && args[0] == "none") {
      out.actor.reset();
    } else {
      out.actor = parse_entity(args[0], line);
    }

    auto [words, anchor] = parse_keyed(args[1], line);
    out.anchor = anchor;
    switch (out.kind) {
      case LineKind::Gfbf:
        if (words.size() != 1 || !parse_effect(words[0]))
          fail(ErrorCode::MalformedLine, line, "gfbf effect must be goodFor or badFor");
        out.effect = parse_effect(words[0]);
        out.target_entity = parse_entity(args[2], line);
        if (args.size() == 4) out.extra_filler = parse_entity(args[3], line);
        break;
      case LineKind::Influencer:
        if (words.size() != 1 || !parse_influence(words[0]))
          fail(ErrorCode::MalformedLine, line, "influencer kind must be retain or reverse");
        out.influence = parse_influence(words[0]);
        out.target_id = args[2];
        break;
      default: {
        if (words.size() != 2 || !parse_polarity(words[0]) || !parse_attitude(words[1]))
          fail(ErrorCode::MalformedLine, line,
               "expected '<positive|negative> <attitude>' but got '" + trim(args[1]) + "'");
        out.polarity = parse_polarity(words[0]);
        out.attitude = parse_attitude(words[1]);
        if (out.kind == LineKind::Evidence) {
          if (*out.attitude == Attitude::BelievesShould)
            fail(ErrorCode::MalformedLine, line,
                 "evidence attitude must be intends, believesTrue or sentiment");
          out.target_id = args[2];
        } else {
          out.target_id = args[2];  // resolved to an entity in validate() if not an id
        }
        break;
      }
    }
    return out;
  }

  // Resolves references, checks ids, then the root constraint.
  void validate(SentenceAnnotation& sent) const {
    std::map<std::string, const AnnotationLine*> defined;
    for (auto& l : sent.lines) {
      if (defined.contains(l.id)) fail(ErrorCode::DuplicateId, l.line_number, "duplicate id '" + l.id + "'");
      const bool may_be_entity = l.kind == LineKind::Subjectivity || l.kind == LineKind::PrivateState;
      if (!l.target_id.empty()) {
        auto it = defined.find(l.target_id);
        if (it == defined.end()) {
          if (may_be_entity && !looks_like_id(l.target_id)) {
            l.target_entity = parse_entity(l.target_id, l.line_number);
            l.target_id.clear();
          } else {
            fail(ErrorCode::DanglingReference, l.line_number,
                 "'" + l.target_id + "' is not defined earlier in this sentence");
          }
        } else {
          const AnnotationLine& t = *it->second;
          if (t.kind == LineKind::Prop || t.kind == LineKind::Evidence)
            fail(ErrorCode::MalformedLine, l.line_number, "'" + l.target_id + "' cannot be a target");
          if (l.kind == LineKind::Prop &&
              !((t.kind == LineKind::Subjectivity || t.kind == LineKind::PrivateState) &&
                t.attitude == Attitude::BelievesTrue))
            fail(ErrorCode::MalformedLine, l.line_number, "p(...,substantial) must name a believesTrue line");
          if (l.kind == LineKind::Influencer && t.kind != LineKind::Gfbf && t.kind != LineKind::Influencer)
            fail(ErrorCode::MalformedLine, l.line_number, "influencer target must be a gfbf or influencer");
        }
      }
      defined.emplace(l.id, &l);
    }

    // Every structural line must be dominated by a writer-sourced sentiment/believesTrue root.
    std::set<std::string> targeted;
    for (const auto& l : sent.lines)
      if (l.kind != LineKind::Evidence && l.kind != LineKind::Prop && !l.target_id.empty())
        targeted.insert(l.target_id);
    for (const auto& l : sent.lines) {
      if (l.kind == LineKind::Evidence || l.kind == LineKind::Prop || targeted.contains(l.id)) continue;
      const bool writer_root =
          (l.kind == LineKind::Subjectivity || l.kind == LineKind::PrivateState) && l.actor &&
          l.actor->name == kWriter &&
          (l.attitude == Attitude::Sentiment || l.attitude == Attitude::BelievesTrue);
      if (!writer_root)
        fail(ErrorCode::RootConstraintViolation, l.line_number,
             "'" + l.id + "' is not dominated by a writer sentiment or believesTrue");
    }
  }

 private:
  std::string file_;
};

bool is_sentence_line(std::string_view s) {
  return starts_with(s, "\"") || starts_with(s, "\xE2\x80\x9C") /* “ */ ||
         starts_with(s, "\xC2\xAB") /* « */ || starts_with(s, "``");
}

std::string strip_quotes(std::string s) {
  static const std::vector<std::string> open = {"\"", "\xE2\x80\x9C", "\xC2\xAB", "``"};
  static const std::vector<std::string> close = {"\"", "\xE2\x80\x9D", "\xC2\xBB", "''"};
  for (bool again = true; again;) {
    again = false;
    for (const auto& q : open)
      if (starts_with(s, q)) { s.erase(0, q.size()); again = true; }
  }
  for (bool again = true; again;) {
    again = false;
    for (const auto& q : close)
      if (ends_with(s, q)) { s.erase(s.size() - q.size()); again = true; }
  }
  return trim(s);
}

}  // namespace

AnnotationDoc parse_document(std::string_view text, std::string_view file) {
  BlockParser parser(file);
  AnnotationDoc doc;
  SentenceAnnotation* current = nullptr;
  bool in_block = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string line = trim(raw);
    if (line.empty()) {
      in_block = false;
      continue;
    }
    if (line[0] == '#') continue;
    if (!in_block) {
      if (!is_sentence_line(line))
        parser.fail(ErrorCode::MalformedLine, line_no, "sentence block must start with a quoted sentence");
      if (current) parser.validate(*current);
      doc.sentences.push_back({strip_quotes(line), line_no, {}});
      current = &doc.sentences.back();
      in_block = true;
      continue;
    }
    current->lines.push_back(parser.parse_line(line, line_no));
  }
  if (current) parser.validate(*current);
  return doc;
}

namespace {

std::string render_entity(const EntityRef& e) {
  std::string s = e.name;
  if (e.thing) s += ":thing";
  if (!e.lex_key.empty()) s += " (" + e.lex_key + ":lexEntry)";
  return s;
}

std::string render_anchor(const Anchor& a) {
  std::string s = "(" + a.text;
  if (!a.lex_key.empty()) s += (a.text.empty() ? "" : ",") + a.lex_key + ":lexEntry";
  return s + ")";
}

}  // namespace

std::string render_line(const AnnotationLine& l) {
  std::ostringstream os;
  os << l.id << ' ';
  if (l.kind == LineKind::Prop) {
    os << "p(" << l.target_id << ",substantial)";
    return os.str();
  }
  os << to_string(l.kind) << " <" << (l.actor ? render_entity(*l.actor) : "none") << ", ";
  switch (l.kind) {
    case LineKind::Gfbf: os << to_string(*l.effect); break;
    case LineKind::Influencer: os << to_string(*l.influence); break;
    default: os << to_string(*l.polarity) << ' ' << to_string(*l.attitude); break;
  }
  os << ' ' << render_anchor(l.anchor) << ", ";
  os << (l.target_entity ? render_entity(*l.target_entity) : l.target_id);
  if (l.extra_filler) os << ", " << render_entity(*l.extra_filler);
  os << '>';
  return os.str();
}

std::string render_document(const AnnotationDoc& doc) {
  std::ostringstream os;
  bool first = true;
  for (const auto& s : doc.sentences) {
    if (!first) os << '\n';
    first = false;
    os << '"' << s.text << "\"\n";
    for (const auto& l : s.lines) os << render_line(l) << '\n';
  }
  return os.str();
}

}  // namespace implicature
