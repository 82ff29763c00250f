#pragma once

#include <string>

#include "orienteer/model.hpp"

namespace orienteer {

// JSON wire formats. Parse errors (malformed JSON, schema violations,
// values outside the 63-bit domain) throw Input errors naming the field path.
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

Walk parse_walk(const std::string& text);
std::string serialize_walk(const Walk& walk);

Solution parse_solution(const std::string& text);
std::string serialize_solution(const Solution& sol);

std::string serialize_walk_report(const WalkReport& rep);

}  // namespace orienteer
