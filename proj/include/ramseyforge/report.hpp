#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ramseyforge/class_fragment.hpp"
#include "ramseyforge/orientation.hpp"
#include "ramseyforge/structure.hpp"

namespace ramseyforge {

// Where a fragment came from, recorded in certificates so that `ramsey` can
// rebuild it.
struct ClassSource {
  std::string id;              // "builtin:NAME" or a file path
  std::string signature_name;  // used when writing structures inline
};

// Flat key=value certificate for a decision. Lists are repeated keys.
std::string emit_certificate(const DecisionOutcome& outcome, const ClassFragment& frag,
                             const ClassSource& source);

// Human-readable summary of the same outcome.
std::string human_decision(const DecisionOutcome& outcome, const ClassFragment& frag,
                           const ClassSource& source);

std::string_view outcome_name(const DecisionOutcome& outcome);

struct Certificate {
  std::string outcome;
  std::string class_id;
  int bound = 0;
  std::optional<Structure> a;
  std::optional<Structure> b;
  ColoringRule rule;
  std::string reason;
};

// Reads the fields `ramsey` needs. Throws ParseError on malformed lines or
// on a failure certificate without a, b or rule.
Certificate parse_certificate(std::string_view text);

std::string join_ints(const std::vector<int>& v);

}  // namespace ramseyforge
