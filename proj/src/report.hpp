#pragma once

#include <string>

#include <json.hpp>

#include "decide.hpp"

namespace meanlab {

// Serializes a JSON tree with every floating-point number rendered as a
// decimal with 17 significant digits. Deterministic: ordered objects,
// fixed two-space indentation.
std::string dump_json17(const nlohmann::ordered_json& j);

nlohmann::ordered_json witness_to_json(const EquivalenceWitness& w);
nlohmann::ordered_json gini_to_json(const GiniParams& p);
nlohmann::ordered_json decision_to_json(const DecisionReport& rep);

// fixed-layout text block for standard output
std::string decision_to_text(const DecisionReport& rep);

}  // namespace meanlab
