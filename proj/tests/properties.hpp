#pragma once
// Property checks shared by the unit tests and the acceptance runner. Each
// returns ok plus a description of the first failure.
#include <cstdint>
#include <string>

namespace props {

struct Outcome {
  bool ok = true;
  std::string detail;
  int cases = 0;
};

Outcome sign_laws();
Outcome influencer_sign_law();
Outcome interning_idempotence(std::uint32_t seed = 7, int rounds = 2000);
Outcome contradiction_after_every_extension();
Outcome random_termination(std::uint32_t seed = 2024, int count = 1000);
Outcome determinism();

/// Random well-formed annotation document with one sentence.
std::string random_document(std::uint32_t seed);

}  // namespace props
