#pragma once

#include <string>
#include <string_view>

#include "linea/relations.hpp"

namespace linea {

enum class RuleScript {
    Recognize,         // triple patterns, alignment, closure
    Derive,            // similarity edges and collinear triples from raw attributes
    RecognizeListing,  // recognition rules exactly as originally listed
};

// Script text with ${name} threshold placeholders, as shipped under rules/.
std::string_view rule_text(RuleScript which);

// Replaces ${delta1} ... ${eta3} and ${td} with the threshold values.
// Throws InvalidConfig on an unknown or unterminated placeholder.
std::string instantiate_rules(std::string_view text, const Thresholds& t);

}  // namespace linea
