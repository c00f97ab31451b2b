#include "linea/error.hpp"

namespace linea {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DegeneratePolygon: return "DegeneratePolygon";
        case ErrorKind::EmptyDataset: return "EmptyDataset";
        case ErrorKind::NotAdjacent: return "NotAdjacent";
        case ErrorKind::UnknownNode: return "UnknownNode";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::TypeMismatch: return "TypeMismatch";
        case ErrorKind::UnboundVariable: return "UnboundVariable";
        case ErrorKind::MissingProperty: return "MissingProperty";
        case ErrorKind::MutationInRead: return "MutationInRead";
        case ErrorKind::ArithmeticError: return "ArithmeticError";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::FormatError: return "FormatError";
        case ErrorKind::InvalidSpec: return "InvalidSpec";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
    }
    return "Error";
}

}  // namespace linea
