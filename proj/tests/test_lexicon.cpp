#include <gtest/gtest.h>

#include "implicature/lexicon.hpp"
#include "oracle.hpp"

using namespace implicature;

TEST(Lexicon, CorpusEntries) {
  Lexicon lex = oracle::corpus_lexicon();
  EXPECT_EQ(lex.connotation_of("war"), Polarity::Negative);
  EXPECT_EQ(lex.connotation_of("justice"), Polarity::Positive);
  EXPECT_FALSE(lex.connotation_of("health care reform"));
  const GfbfEntry* fall = lex.gfbf_entry("fall on");
  ASSERT_NE(fall, nullptr);
  EXPECT_EQ(fall->effect, Effect::BadFor);
  const GfbfEntry* deprive = lex.gfbf_entry("deprive");
  ASSERT_NE(deprive, nullptr);
  ASSERT_TRUE(deprive->extra_role);
  EXPECT_EQ(deprive->extra_role->position, 2);
  EXPECT_EQ(deprive->extra_role->effect_on_object, Effect::GoodFor);
}

TEST(Lexicon, Errors) {
  try {
    parse_lexicon("conn war negative\nconn war positive\n", "l.lex");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateKey);
    EXPECT_EQ(e.line(), 2);
  }
  try {
    parse_lexicon("conn war sideways\n", "l.lex");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedRecord);
  }
  try {
    parse_lexicon("flavour war negative\n", "l.lex");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedRecord);
  }
}

TEST(Lexicon, CommentsIgnored) {
  Lexicon lex = parse_lexicon("# nothing here\n\nconn peace positive  # trailing\n");
  EXPECT_EQ(lex.connotation_of("peace"), Polarity::Positive);
}
