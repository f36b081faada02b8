#include <gtest/gtest.h>

#include "implicature/annotation.hpp"
#include "oracle.hpp"

using namespace implicature;

namespace {

const char* kCorpus[] = {"moveon.ann", "wars.ann",      "blooming.ann", "tree.ann",     "tree_didnt.ann",
                         "costs.ann",  "taxes.ann",     "gop.ann",      "gay_marriage.ann", "koran.ann",
                         "bin_laden.ann", "accusing.ann", "accusing_alt.ann", "denial.ann", "virus.ann",
                         "insurance.ann", "judge.ann",  "deprive.ann",  "empty.ann"};

InputError parse_error(const std::string& text) {
  try {
    parse_document(text, "t.ann");
  } catch (const InputError& e) {
    return e;
  }
  ADD_FAILURE() << "expected an InputError for:\n" << text;
  return InputError(ErrorCode::MalformedLine, "", 0, "");
}

}  // namespace

TEST(Annotation, CorpusParsesAndRoundTrips) {
  for (const char* f : kCorpus) {
    SCOPED_TRACE(f);
    AnnotationDoc doc = parse_document(oracle::slurp(oracle::corpus(f)), f);
    AnnotationDoc again = parse_document(render_document(doc), f);
    EXPECT_EQ(doc.sentences, again.sentences);
  }
}

TEST(Annotation, MoveOnLines) {
  auto doc = parse_document(oracle::slurp(oracle::corpus("moveon.ann")));
  ASSERT_EQ(doc.sentences.size(), 1u);
  const auto& s = doc.sentences[0];
  EXPECT_EQ(s.text, "Is it no surprise then that MoveOn would attack Senator McCain.!?");
  ASSERT_EQ(s.lines.size(), 2u);
  const auto& e1 = s.lines[0];
  EXPECT_EQ(e1.kind, LineKind::Gfbf);
  EXPECT_EQ(e1.actor->name, "MoveOn");
  EXPECT_EQ(e1.effect, Effect::BadFor);
  EXPECT_EQ(e1.anchor.text, "attack");
  EXPECT_EQ(e1.anchor.lex_key, "attack");
  EXPECT_EQ(s.lines[1].target_id, "E1");
  EXPECT_EQ(s.lines[1].polarity, Polarity::Negative);
}

TEST(Annotation, ThingSuffixSetsFlag) {
  auto doc = parse_document(oracle::slurp(oracle::corpus("tree.ann")));
  const auto& e1 = doc.sentences.at(0).lines.at(0);
  EXPECT_TRUE(e1.actor->thing);
  EXPECT_EQ(e1.actor->name, "the tree");
  EXPECT_FALSE(e1.target_entity->thing);
}

TEST(Annotation, CommentsAndBlankLinesSeparateSentences) {
  auto doc = parse_document(
      "# comment\n\"One.\"\nE1 gfbf <A, goodFor (x), B>\nB1 privateState <writer, positive believesTrue (\"\"), E1>\n\n"
      "\"Two.\"\nS1 subjectivity <writer, negative sentiment (y), Bob>\n");
  ASSERT_EQ(doc.sentences.size(), 2u);
  EXPECT_EQ(doc.sentences[1].lines.at(0).target_entity->name, "Bob");
}

TEST(Annotation, PropMarksSubstantial) {
  auto doc = parse_document(oracle::slurp(oracle::corpus("denial.ann")));
  const auto& lines = doc.sentences.at(0).lines;
  auto prop = std::find_if(lines.begin(), lines.end(), [](const AnnotationLine& l) { return l.kind == LineKind::Prop; });
  ASSERT_NE(prop, lines.end());
  EXPECT_EQ(prop->target_id, "B1");
}

TEST(Annotation, DanglingReference) {
  auto e = parse_error("\"s\"\nS1 subjectivity <writer, positive sentiment (x), E7>\n");
  EXPECT_EQ(e.code(), ErrorCode::DanglingReference);
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(std::string(e.what()).rfind("t.ann:2: DanglingReference: ", 0), 0u) << e.what();
}

TEST(Annotation, DuplicateId) {
  auto e = parse_error(
      "\"s\"\nE1 gfbf <A, goodFor (x), B>\nE1 gfbf <A, badFor (y), B>\n"
      "B1 privateState <writer, positive believesTrue (\"\"), E1>\n");
  EXPECT_EQ(e.code(), ErrorCode::DuplicateId);
  EXPECT_EQ(e.line(), 3);
}

TEST(Annotation, MalformedLine) {
  EXPECT_EQ(parse_error("\"s\"\nE1 gfbf <A, sideways (x), B>\n").code(), ErrorCode::MalformedLine);
  EXPECT_EQ(parse_error("\"s\"\nE1 gfbf <A, goodFor (x)\n").code(), ErrorCode::MalformedLine);
  EXPECT_EQ(parse_error("\"s\"\nQ1 mystery <A>\n").code(), ErrorCode::MalformedLine);
}

TEST(Annotation, RootMustBeWriterAttitude) {
  // A gfbf nobody holds and a non-writer root both break the root rule.
  EXPECT_EQ(parse_error("\"s\"\nE1 gfbf <A, goodFor (x), B>\n").code(), ErrorCode::RootConstraintViolation);
  EXPECT_EQ(parse_error("\"s\"\nE1 gfbf <A, goodFor (x), B>\nS1 subjectivity <Bob, positive sentiment (x), E1>\n").code(),
            ErrorCode::RootConstraintViolation);
}

TEST(Annotation, EmptyDocument) { EXPECT_TRUE(parse_document("").sentences.empty()); }
