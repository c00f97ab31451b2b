#include "linea/rules.hpp"

#include <fmt/format.h>

#include "linea/error.hpp"
#include "linea_rules_embedded.hpp"

namespace linea {

std::string_view rule_text(RuleScript which) {
    switch (which) {
        case RuleScript::Recognize: return embedded::recognize;
        case RuleScript::Derive: return embedded::derive;
        case RuleScript::RecognizeListing: return embedded::recognize_listing;
    }
    return {};
}

namespace {

// Always a float literal, and exact: the shortest text that reads back as v.
std::string float_literal(double v) {
    std::string s = fmt::format("{}", v);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

}  // namespace

std::string instantiate_rules(std::string_view text, const Thresholds& t) {
    const std::pair<std::string_view, double> values[] = {{"delta1", t.delta1}, {"delta2", t.delta2},
                                                          {"delta3", t.delta3}, {"eta1", t.eta1},
                                                          {"eta2", t.eta2},     {"eta3", t.eta3},
                                                          {"td", t.td}};
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (true) {
        const std::size_t open = text.find("${", pos);
        if (open == std::string_view::npos) {
            out.append(text.substr(pos));
            return out;
        }
        out.append(text.substr(pos, open - pos));
        const std::size_t close = text.find('}', open);
        if (close == std::string_view::npos) throw Error(ErrorKind::InvalidConfig, "unterminated placeholder in rules");
        const std::string_view name = text.substr(open + 2, close - open - 2);
        bool found = false;
        for (const auto& [key, v] : values) {
            if (key == name) {
                out += float_literal(v);
                found = true;
            }
        }
        if (!found) throw Error(ErrorKind::InvalidConfig, fmt::format("unknown placeholder '{}' in rules", name));
        pos = close + 1;
    }
}

}  // namespace linea
