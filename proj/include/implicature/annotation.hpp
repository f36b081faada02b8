#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "implicature/types.hpp"

namespace implicature {

enum class ErrorCode {
  MalformedLine,
  DanglingReference,
  RootConstraintViolation,
  DuplicateId,
  MalformedRecord,
  DuplicateKey,
};

std::string_view to_string(ErrorCode code);

/// Input error with a source position. what() is "<file>:<line>: <code>: <message>".
class InputError : public std::runtime_error {
 public:
  InputError(ErrorCode code, std::string file, int line, std::string message);

  ErrorCode code() const { return code_; }
  int line() const { return line_; }
  const std::string& file() const { return file_; }
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  std::string file_;
  int line_;
  std::string message_;
};

/// The name of the implicit animate entity every sentence is written by.
inline constexpr std::string_view kWriter = "writer";

struct EntityRef {
  std::string name;
  bool thing = false;   // from the ":thing" suffix; everything else is animate
  std::string lex_key;  // from a trailing "(key:lexEntry)"

  bool operator==(const EntityRef&) const = default;
};

/// Surface anchor of an annotation, e.g. "(fell on,fall on:lexEntry)".
struct Anchor {
  std::string text;
  std::string lex_key;

  bool operator==(const Anchor&) const = default;
};

enum class LineKind { Gfbf, Influencer, Subjectivity, PrivateState, Evidence, Prop };

std::string_view to_string(LineKind kind);

struct AnnotationLine {
  int line_number = 0;
  std::string id;
  LineKind kind = LineKind::Gfbf;

  // Agent (gfbf, influencer), source (subjectivity, privateState) or holder
  // (evidence). Empty only for evidence written with holder "none".
  std::optional<EntityRef> actor;

  std::optional<Effect> effect;        // gfbf
  std::optional<Influence> influence;  // influencer
  std::optional<Attitude> attitude;    // subjectivity, privateState, evidence
  std::optional<Polarity> polarity;    // subjectivity, privateState, evidence
  Anchor anchor;

  // Exactly one of these is set for every kind except Prop, which only uses target_id.
  std::optional<EntityRef> target_entity;
  std::string target_id;

  std::optional<EntityRef> extra_filler;  // optional 4th element of a gfbf line
  bool substantial = false;               // Prop lines: p(<id>, substantial)

  bool operator==(const AnnotationLine& o) const;
};

struct SentenceAnnotation {
  std::string text;
  int line_number = 0;
  std::vector<AnnotationLine> lines;

  const AnnotationLine* find(std::string_view id) const;
  bool operator==(const SentenceAnnotation& o) const { return text == o.text && lines == o.lines; }
};

struct AnnotationDoc {
  std::vector<SentenceAnnotation> sentences;
  bool operator==(const AnnotationDoc&) const = default;
};

/// Parses sentence blocks separated by blank lines. Each block opens with the
/// quoted sentence followed by one annotation per line. Both "⟨ ⟩" and "< >"
/// delimit the argument list.
AnnotationDoc parse_document(std::string_view text, std::string_view file = "<input>");

/// Renders back into the textual format; parse_document(render_document(d)) == d
/// up to line numbers.
std::string render_document(const AnnotationDoc& doc);
std::string render_line(const AnnotationLine& line);

}  // namespace implicature
