#include <gtest/gtest.h>

#include "implicature/annotation.hpp"
#include "properties.hpp"

TEST(Properties, InfluencerChains) {
  auto o = props::influencer_sign_law();
  EXPECT_TRUE(o.ok) << o.detail;
  EXPECT_GE(o.cases, 60);
}

TEST(Properties, InterningIdempotent) {
  auto o = props::interning_idempotence();
  EXPECT_TRUE(o.ok) << o.detail;
}

TEST(Properties, RandomDocumentsTerminate) {
  auto o = props::random_termination();
  EXPECT_TRUE(o.ok) << o.detail;
  EXPECT_EQ(o.cases, 1000);
}

TEST(Properties, Deterministic) {
  auto o = props::determinism();
  EXPECT_TRUE(o.ok) << o.detail;
}

TEST(Properties, GeneratorIsWellFormed) {
  for (std::uint32_t seed = 1; seed <= 200; ++seed) {
    auto text = props::random_document(seed);
    EXPECT_NO_THROW(implicature::parse_document(text, "gen")) << text;
    EXPECT_EQ(text, props::random_document(seed));
  }
}
