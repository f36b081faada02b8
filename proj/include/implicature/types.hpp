#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace implicature {

enum class Polarity : std::uint8_t { Positive, Negative };

enum class Attitude : std::uint8_t { BelievesTrue, Sentiment, Intends, BelievesShould };

enum class Effect : std::uint8_t { GoodFor, BadFor };

enum class Influence : std::uint8_t { Retain, Reverse };

/// Sign arithmetic: positive/goodFor/retain = +1, negative/badFor/reverse = -1.
constexpr int sign(Polarity p) { return p == Polarity::Positive ? 1 : -1; }
constexpr int sign(Effect e) { return e == Effect::GoodFor ? 1 : -1; }
constexpr int sign(Influence i) { return i == Influence::Retain ? 1 : -1; }

constexpr Polarity polarity_of(int s) { return s > 0 ? Polarity::Positive : Polarity::Negative; }
constexpr Effect effect_of(int s) { return s > 0 ? Effect::GoodFor : Effect::BadFor; }

constexpr Polarity flip(Polarity p) {
  return p == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
}
constexpr Effect flip(Effect e) { return e == Effect::GoodFor ? Effect::BadFor : Effect::GoodFor; }

constexpr Polarity operator*(Polarity a, Polarity b) { return polarity_of(sign(a) * sign(b)); }
constexpr Polarity operator*(Polarity a, Effect b) { return polarity_of(sign(a) * sign(b)); }

std::string_view to_string(Polarity p);
std::string_view to_string(Attitude a);
std::string_view to_string(Effect e);
std::string_view to_string(Influence i);

/// "+" / "-" as used in space abbreviations.
std::string_view sign_char(Polarity p);
/// "B", "S", "I", "Sh".
std::string_view abbreviation(Attitude a);

std::optional<Polarity> parse_polarity(std::string_view s);
std::optional<Attitude> parse_attitude(std::string_view s);
std::optional<Effect> parse_effect(std::string_view s);
std::optional<Influence> parse_influence(std::string_view s);

}  // namespace implicature
