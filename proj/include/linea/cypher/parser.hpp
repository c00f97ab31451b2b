#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "linea/cypher/ast.hpp"
#include "linea/error.hpp"

namespace linea::cypher {

// ErrorKind::ParseError with the position of the offending token (1-based)
// and the tokens that would have been accepted there.
class ParseError : public Error {
public:
    ParseError(int line, int column, std::vector<std::string> expected, const std::string& found);

    [[nodiscard]] int line() const { return line_; }
    [[nodiscard]] int column() const { return column_; }
    [[nodiscard]] const std::vector<std::string>& expected() const { return expected_; }

private:
    int line_;
    int column_;
    std::vector<std::string> expected_;
};

Script parse(std::string_view text);
Expr parse_expr(std::string_view text);

// Canonical text. parse(print(s)) == s for every parsed script.
std::string print(const Script& script);
std::string print(const Statement& st);
std::string print(const Expr& e);
std::string print(const Pattern& p);

}  // namespace linea::cypher
