#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "linea/cypher/ast.hpp"
#include "linea/property_graph.hpp"

namespace linea::cypher {

using Bindings = std::map<std::string, graph::Value>;

// Evaluates e with variables taken from `bindings`. Node, relationship and
// path variables are NodeRef / EdgeRef / PathRef values.
graph::Value eval_expr(const Expr& e, const Bindings& bindings, const graph::Graph& g);

// Equality used by `=`, `<>` and list_intersection: numbers compare by value
// across int and float, lists element-wise, everything else structurally.
bool values_equal(const graph::Value& a, const graph::Value& b);

// Expression with variables resolved to row slots, evaluated many times
// against rows of the same shape.
class CompiledExpr {
public:
    // Throws UnboundVariable when a variable is not in `slots`.
    CompiledExpr(const Expr& e, const std::map<std::string, int>& slots);

    [[nodiscard]] graph::Value eval(const graph::Value* row, const graph::Graph& g) const;
    // WHERE semantics: true only for boolean true; null counts as false.
    [[nodiscard]] bool test(const graph::Value* row, const graph::Graph& g) const;

private:
    struct Node {
        Expr::Kind kind = Expr::Kind::Literal;
        graph::Value value;
        int slot = -1;
        std::string key;
        BinOp bin_op = BinOp::Eq;
        UnOp un_op = UnOp::Neg;
        int fn = 0;
        std::vector<Node> args;
    };

    static Node compile(const Expr& e, const std::map<std::string, int>& slots);
    // Result of n, either referring into the row, the graph or the tree
    // itself, or computed into tmp.
    static const graph::Value& ref(const Node& n, const graph::Value* row, const graph::Graph& g,
                                   graph::Value& tmp);
    static graph::Value compare(const Node& n, const graph::Value* row, const graph::Graph& g);
    // Boolean result of n with null as -1, without building Values.
    static int truth(const Node& n, const graph::Value* row, const graph::Graph& g);
    struct Num {
        bool is_int = false;
        std::int64_t i = 0;
        double d = 0.0;
    };
    // False when some operand is not a number; the caller then falls back to ref.
    static bool number(const Node& n, const graph::Value* row, const graph::Graph& g, Num& out);
    static graph::Value overlap_count(const Node& n, const graph::Value* row, const graph::Graph& g);

    Node root_;
};

// Variable names referenced anywhere in e.
std::set<std::string> free_vars(const Expr& e);

}  // namespace linea::cypher
