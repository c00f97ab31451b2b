#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linea/property_graph.hpp"
#include "linea/value.hpp"

namespace linea::cypher {

enum class BinOp { Or, And, Eq, Ne, Lt, Le, Gt, Ge, Add, Sub, Mul, Div };
enum class UnOp { Neg, Not };

// Expression tree. Which fields are meaningful depends on kind:
//   Literal  value
//   List     args (elements)
//   Var      name
//   Prop     name (key), args[0] (object)
//   Index    args[0] (list), args[1] (index)
//   Unary    un_op, args[0]
//   Binary   bin_op, args[0], args[1]
//   Call     name (canonical function name), args
struct Expr {
    enum class Kind { Literal, List, Var, Prop, Index, Unary, Binary, Call };

    Kind kind = Kind::Literal;
    graph::Value value;
    std::string name;
    BinOp bin_op = BinOp::Eq;
    UnOp un_op = UnOp::Neg;
    std::vector<Expr> args;

    static Expr literal(graph::Value v);
    static Expr var(std::string name);
    static Expr prop(Expr object, std::string key);
    static Expr index(Expr list, Expr idx);
    static Expr unary(UnOp op, Expr e);
    static Expr binary(BinOp op, Expr l, Expr r);
    static Expr call(std::string fn, std::vector<Expr> args);
    static Expr list(std::vector<Expr> elems);

    friend bool operator==(const Expr&, const Expr&) = default;
};

struct NodePat {
    std::optional<std::string> var;
    std::optional<std::string> label;
    std::vector<std::pair<std::string, Expr>> props;

    friend bool operator==(const NodePat&, const NodePat&) = default;
};

struct RelPat {
    std::optional<std::string> var;
    std::optional<std::string> type;
    graph::Direction dir = graph::Direction::Out;
    bool varlen = false;
    int min_hops = 1;
    std::optional<int> max_hops = 1;  // nullopt: unbounded

    friend bool operator==(const RelPat&, const RelPat&) = default;
};

struct Pattern {
    std::optional<std::string> path_var;
    std::vector<NodePat> nodes;  // nodes.size() == rels.size() + 1
    std::vector<RelPat> rels;

    friend bool operator==(const Pattern&, const Pattern&) = default;
};

struct MatchClause {
    std::vector<Pattern> patterns;
    std::optional<Expr> where;

    friend bool operator==(const MatchClause&, const MatchClause&) = default;
};

// One query part: MATCH clauses, then either WITH (rows flow into the next
// statement) or a terminal MERGE / CREATE / RETURN, or nothing.
struct Statement {
    enum class Terminal { None, Merge, Create, Return };

    std::vector<MatchClause> matches;
    std::optional<std::vector<std::string>> with;
    Terminal terminal = Terminal::None;
    std::optional<NodePat> merge;
    std::optional<Pattern> create;
    std::vector<Expr> returns;

    friend bool operator==(const Statement&, const Statement&) = default;
};

struct Script {
    std::vector<Statement> statements;

    friend bool operator==(const Script&, const Script&) = default;
};

}  // namespace linea::cypher
