#include "implicature/types.hpp"

namespace implicature {

std::string_view to_string(Polarity p) { return p == Polarity::Positive ? "positive" : "negative"; }

std::string_view to_string(Attitude a) {
  switch (a) {
    case Attitude::BelievesTrue: return "believesTrue";
    case Attitude::Sentiment: return "sentiment";
    case Attitude::Intends: return "intends";
    case Attitude::BelievesShould: return "believesShould";
  }
  return "?";
}

std::string_view to_string(Effect e) { return e == Effect::GoodFor ? "goodFor" : "badFor"; }

std::string_view to_string(Influence i) { return i == Influence::Retain ? "retain" : "reverse"; }

std::string_view sign_char(Polarity p) { return p == Polarity::Positive ? "+" : "-"; }

std::string_view abbreviation(Attitude a) {
  switch (a) {
    case Attitude::BelievesTrue: return "B";
    case Attitude::Sentiment: return "S";
    case Attitude::Intends: return "I";
    case Attitude::BelievesShould: return "Sh";
  }
  return "?";
}

std::optional<Polarity> parse_polarity(std::string_view s) {
  if (s == "positive") return Polarity::Positive;
  if (s == "negative") return Polarity::Negative;
  return std::nullopt;
}

std::optional<Attitude> parse_attitude(std::string_view s) {
  if (s == "believesTrue") return Attitude::BelievesTrue;
  if (s == "sentiment") return Attitude::Sentiment;
  if (s == "intends") return Attitude::Intends;
  if (s == "believesShould") return Attitude::BelievesShould;
  return std::nullopt;
}

std::optional<Effect> parse_effect(std::string_view s) {
  if (s == "goodFor") return Effect::GoodFor;
  if (s == "badFor") return Effect::BadFor;
  return std::nullopt;
}

std::optional<Influence> parse_influence(std::string_view s) {
  if (s == "retain") return Influence::Retain;
  if (s == "reverse") return Influence::Reverse;
  return std::nullopt;
}

}  // namespace implicature
