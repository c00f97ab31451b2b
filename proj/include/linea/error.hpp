#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace linea {

enum class ErrorKind {
    DegeneratePolygon,
    EmptyDataset,
    NotAdjacent,
    UnknownNode,
    ParseError,
    TypeMismatch,
    UnboundVariable,
    MissingProperty,
    MutationInRead,
    ArithmeticError,
    IoError,
    FormatError,
    InvalidSpec,
    InvalidConfig,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace linea
