#pragma once

// Calibration of the twist sign and the table of reproduced claims.

#include "surfsig/sympl.hpp"

#include <optional>
#include <string>
#include <vector>

namespace surfsig {

struct Claim {
  std::string id;
  std::string description;
  std::string expected;
  std::string computed;
  bool match = false;
};

/// Signatures of the four explicit fibrations (and the complement values of
/// the one-fiber examples) under the given convention.
std::vector<Claim> signature_claims(Convention conv);
bool signature_claims_pass(Convention conv);

struct Calibration {
  std::optional<Convention> selected;
  Convention requested;
  bool requested_passed = false;
  bool other_passed = false;
  bool from_cache = false;
  std::string diagnostic;
};

/// Tries the requested sign first, then the other one. Exactly one sign
/// must reproduce the signatures; otherwise selected is empty.
Calibration calibrate(Convention requested = {});

/// Reads a cached convention from path if it exists, otherwise calibrates and
/// writes the result there. Cache format: {"twist_sign": "positive", "word_order": "left-to-right"}.
Calibration calibrate_cached(const std::string& path, Convention requested = {});

std::string to_string(TwistSign s);
TwistSign parse_twist_sign(const std::string& s);

/// Every claim: signatures, relator identities, the bundle constructions and the bound table.
std::vector<Claim> reproduce_claims(Convention conv);

}  // namespace surfsig
