#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "implicature/types.hpp"

namespace implicature {

/// A gfbf entry may name a second semantic role whose filler is goodFor or
/// badFor the object, e.g. "deprive X of Y": Y is goodFor X.
struct ExtraRole {
  int position = 2;
  Effect effect_on_object = Effect::GoodFor;

  bool operator==(const ExtraRole&) const = default;
};

struct GfbfEntry {
  Effect effect = Effect::GoodFor;
  std::optional<ExtraRole> extra_role;

  bool operator==(const GfbfEntry&) const = default;
};

struct Lexicon {
  std::map<std::string, Polarity, std::less<>> connotation;
  std::map<std::string, GfbfEntry, std::less<>> gfbf_entries;
  std::map<std::string, Influence, std::less<>> influencer_entries;

  std::optional<Polarity> connotation_of(std::string_view key) const;
  const GfbfEntry* gfbf_entry(std::string_view key) const;

  bool operator==(const Lexicon&) const = default;
};

/// One record per line:
///   conn <key> <positive|negative>
///   gfbf <key> <goodFor|badFor> [role2=<goodFor|badFor>]
///   infl <key> <retain|reverse>
/// Keys may contain spaces. '#' starts a comment.
Lexicon parse_lexicon(std::string_view text, std::string_view file = "<lexicon>");

}  // namespace implicature
