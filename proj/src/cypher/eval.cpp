#include "linea/cypher/eval.hpp"

#include <algorithm>
#include <cmath>

#include <boost/container/small_vector.hpp>

#include "linea/error.hpp"

namespace linea::cypher {

using graph::Null;
using graph::Value;

namespace {

// kOverlap is size() of a chain of list_intersection calls, counted
// without building the intermediate lists.
enum Fn { kAbs = 0, kSize = 1, kIntersection = 2, kOverlap = 3 };

[[noreturn]] void mismatch(const std::string& what) { throw Error(ErrorKind::TypeMismatch, what); }

bool truthy(const Value& v, const char* context) {
    if (v.is_bool()) return v.as_bool();
    if (v.is_null()) return false;
    mismatch(std::string(context) + " expects a boolean, got " + v.type_name());
}

Value arithmetic(BinOp op, const Value& a, const Value& b) {
    if (a.is_null() || b.is_null()) return Value{};
    if (op == BinOp::Add) {
        if (a.is_string() && b.is_string()) return Value(a.as_string() + b.as_string());
        if (a.is_list() && b.is_list()) {
            Value::List out = a.as_list();
            out.insert(out.end(), b.as_list().begin(), b.as_list().end());
            return Value(std::move(out));
        }
    }
    if (!a.is_number() || !b.is_number()) {
        mismatch("arithmetic on " + a.type_name() + " and " + b.type_name());
    }
    if (a.is_int() && b.is_int()) {
        const std::int64_t x = a.as_int();
        const std::int64_t y = b.as_int();
        std::int64_t r = 0;
        switch (op) {
            case BinOp::Add:
                if (__builtin_add_overflow(x, y, &r)) throw Error(ErrorKind::ArithmeticError, "integer overflow");
                return Value(r);
            case BinOp::Sub:
                if (__builtin_sub_overflow(x, y, &r)) throw Error(ErrorKind::ArithmeticError, "integer overflow");
                return Value(r);
            case BinOp::Mul:
                if (__builtin_mul_overflow(x, y, &r)) throw Error(ErrorKind::ArithmeticError, "integer overflow");
                return Value(r);
            case BinOp::Div:
                if (y == 0) throw Error(ErrorKind::ArithmeticError, "division by zero");
                if (x == INT64_MIN && y == -1) throw Error(ErrorKind::ArithmeticError, "integer overflow");
                return Value(x / y);  // truncating, as in openCypher
            default: break;
        }
    }
    const double x = a.as_number();
    const double y = b.as_number();
    switch (op) {
        case BinOp::Add: return Value(x + y);
        case BinOp::Sub: return Value(x - y);
        case BinOp::Mul: return Value(x * y);
        case BinOp::Div:
            if (y == 0.0) throw Error(ErrorKind::ArithmeticError, "division by zero");
            return Value(x / y);
        default: break;
    }
    mismatch("not an arithmetic operator");
}

// Ordering for <, <=, >, >=: numbers and strings only.
int order(const Value& a, const Value& b) {
    if (a.is_int() && b.is_int()) return a.as_int() < b.as_int() ? -1 : a.as_int() > b.as_int() ? 1 : 0;
    if (a.is_number() && b.is_number()) {
        const double x = a.as_number();
        const double y = b.as_number();
        return x < y ? -1 : x > y ? 1 : 0;
    }
    if (a.is_string() && b.is_string()) return a.as_string().compare(b.as_string()) < 0 ? -1 : a.as_string() == b.as_string() ? 0 : 1;
    mismatch("cannot order " + a.type_name() + " and " + b.type_name());
}

Value intersection(const Value& a, const Value& b) {
    if (a.is_null() || b.is_null()) return Value{};
    if (!a.is_list() || !b.is_list()) mismatch("list_intersection expects lists");
    Value::List out;
    for (const Value& x : a.as_list()) {
        bool in_b = false;
        for (const Value& y : b.as_list()) in_b = in_b || values_equal(x, y);
        if (!in_b) continue;
        bool seen = false;
        for (const Value& y : out) seen = seen || values_equal(x, y);
        if (!seen) out.push_back(x);
    }
    return Value(std::move(out));
}

void collect_vars(const Expr& e, std::set<std::string>& out) {
    if (e.kind == Expr::Kind::Var) out.insert(e.name);
    for (const auto& a : e.args) collect_vars(a, out);
}

}  // namespace

bool values_equal(const Value& a, const Value& b) {
    if (a.is_number() && b.is_number()) {
        if (a.is_int() && b.is_int()) return a.as_int() == b.as_int();
        return a.as_number() == b.as_number();
    }
    if (a.is_list() && b.is_list()) {
        const auto& x = a.as_list();
        const auto& y = b.as_list();
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!values_equal(x[i], y[i])) return false;
        return true;
    }
    return a == b;
}

std::set<std::string> free_vars(const Expr& e) {
    std::set<std::string> out;
    collect_vars(e, out);
    return out;
}

CompiledExpr::CompiledExpr(const Expr& e, const std::map<std::string, int>& slots) : root_(compile(e, slots)) {}

CompiledExpr::Node CompiledExpr::compile(const Expr& e, const std::map<std::string, int>& slots) {
    Node n;
    n.kind = e.kind;
    n.value = e.value;
    n.key = e.name;
    n.bin_op = e.bin_op;
    n.un_op = e.un_op;
    if (e.kind == Expr::Kind::Var) {
        const auto it = slots.find(e.name);
        if (it == slots.end()) throw Error(ErrorKind::UnboundVariable, "variable '" + e.name + "' is not bound");
        n.slot = it->second;
    }
    if (e.kind == Expr::Kind::Call) {
        if (e.name == "abs") {
            n.fn = kAbs;
        } else if (e.name == "size") {
            n.fn = kSize;
        } else if (e.name == "list_intersection") {
            n.fn = kIntersection;
        } else {
            throw Error(ErrorKind::TypeMismatch, "unknown function '" + e.name + "'");
        }
    }
    if (n.fn == kSize && e.args.size() == 1 && e.args[0].kind == Expr::Kind::Call &&
        e.args[0].name == "list_intersection") {
        // size(list_intersection(list_intersection(a, b), c)) -> operands a, b, c
        std::vector<const Expr*> operands;
        const Expr* cur = &e.args[0];
        while (cur->kind == Expr::Kind::Call && cur->name == "list_intersection") {
            operands.push_back(&cur->args[1]);
            cur = &cur->args[0];
        }
        operands.push_back(cur);
        n.fn = kOverlap;
        for (auto it = operands.rbegin(); it != operands.rend(); ++it) n.args.push_back(compile(**it, slots));
        return n;
    }
    for (const auto& a : e.args) n.args.push_back(compile(a, slots));
    return n;
}

Value CompiledExpr::eval(const Value* row, const graph::Graph& g) const {
    Value tmp;
    const Value& v = ref(root_, row, g, tmp);
    return &v == &tmp ? std::move(tmp) : v;
}

bool CompiledExpr::test(const Value* row, const graph::Graph& g) const { return truth(root_, row, g) == 1; }

bool CompiledExpr::number(const Node& n, const Value* row, const graph::Graph& g, Num& out) {
    auto from = [&](const Value& v) {
        if (v.is_int()) {
            out = {true, v.as_int(), 0.0};
        } else if (v.is_float()) {
            out = {false, 0, v.as_float()};
        } else {
            return false;
        }
        return true;
    };
    switch (n.kind) {
        case Expr::Kind::Literal:
        case Expr::Kind::Var: return from(n.kind == Expr::Kind::Var ? row[n.slot] : n.value);
        case Expr::Kind::Prop:
        case Expr::Kind::Index: {
            Value t;
            const Value& v = ref(n, row, g, t);
            return from(v);
        }
        case Expr::Kind::Unary: {
            if (n.un_op != UnOp::Neg || !number(n.args[0], row, g, out)) return false;
            if (out.is_int) {
                if (out.i == INT64_MIN) throw Error(ErrorKind::ArithmeticError, "integer overflow");
                out.i = -out.i;
            } else {
                out.d = -out.d;
            }
            return true;
        }
        case Expr::Kind::Call: {
            if (n.fn != kAbs || !number(n.args[0], row, g, out)) return false;
            if (out.is_int) {
                if (out.i == INT64_MIN) throw Error(ErrorKind::ArithmeticError, "integer overflow");
                out.i = out.i < 0 ? -out.i : out.i;
            } else {
                out.d = std::fabs(out.d);
            }
            return true;
        }
        case Expr::Kind::Binary: {
            const BinOp op = n.bin_op;
            if (op != BinOp::Add && op != BinOp::Sub && op != BinOp::Mul && op != BinOp::Div) return false;
            Num a;
            Num b;
            if (!number(n.args[0], row, g, a) || !number(n.args[1], row, g, b)) return false;
            // Same rules as arithmetic() on Values.
            const Value r = arithmetic(op, a.is_int ? Value(a.i) : Value(a.d), b.is_int ? Value(b.i) : Value(b.d));
            return from(r);
        }
        default: return false;
    }
}

int CompiledExpr::truth(const Node& n, const Value* row, const graph::Graph& g) {
    if (n.kind == Expr::Kind::Binary) {
        switch (n.bin_op) {
            case BinOp::And: {
                const int a = truth(n.args[0], row, g);
                if (a == 0) return 0;
                return truth(n.args[1], row, g) == 1 ? 1 : 0;
            }
            case BinOp::Or: {
                if (truth(n.args[0], row, g) == 1) return 1;
                return truth(n.args[1], row, g) == 1 ? 1 : 0;
            }
            case BinOp::Eq:
            case BinOp::Ne:
            case BinOp::Lt:
            case BinOp::Le:
            case BinOp::Gt:
            case BinOp::Ge: {
                Num a;
                Num b;
                try {
                    if (!number(n.args[0], row, g, a) || !number(n.args[1], row, g, b))
                        return compare(n, row, g).as_bool() ? 1 : 0;
                } catch (const Error& err) {
                    if (err.kind() == ErrorKind::MissingProperty) return 0;
                    throw;
                }
                int c = 0;
                if (a.is_int && b.is_int) {
                    c = a.i < b.i ? -1 : a.i > b.i ? 1 : 0;
                } else {
                    const double x = a.is_int ? static_cast<double>(a.i) : a.d;
                    const double y = b.is_int ? static_cast<double>(b.i) : b.d;
                    if (std::isnan(x) || std::isnan(y)) return compare(n, row, g).as_bool() ? 1 : 0;
                    c = x < y ? -1 : x > y ? 1 : 0;
                }
                switch (n.bin_op) {
                    case BinOp::Eq: return c == 0;
                    case BinOp::Ne: return c != 0;
                    case BinOp::Lt: return c < 0;
                    case BinOp::Le: return c <= 0;
                    case BinOp::Gt: return c > 0;
                    default: return c >= 0;
                }
            }
            default: break;
        }
    }
    Value tmp;
    const Value& v = ref(n, row, g, tmp);
    if (v.is_null()) return -1;
    return truthy(v, "WHERE") ? 1 : 0;
}

Value CompiledExpr::compare(const Node& n, const Value* row, const graph::Graph& g) {
    Value ta;
    Value tb;
    const Value* a = nullptr;
    const Value* b = nullptr;
    try {
        a = &ref(n.args[0], row, g, ta);
        b = &ref(n.args[1], row, g, tb);
    } catch (const Error& err) {
        if (err.kind() == ErrorKind::MissingProperty) return Value(false);
        throw;
    }
    if (a->is_null() || b->is_null()) return Value(false);
    switch (n.bin_op) {
        case BinOp::Eq: return Value(values_equal(*a, *b));
        case BinOp::Ne: return Value(!values_equal(*a, *b));
        case BinOp::Lt: return Value(order(*a, *b) < 0);
        case BinOp::Le: return Value(order(*a, *b) <= 0);
        case BinOp::Gt: return Value(order(*a, *b) > 0);
        case BinOp::Ge: return Value(order(*a, *b) >= 0);
        default: break;
    }
    mismatch("not a comparison");
}

Value CompiledExpr::overlap_count(const Node& n, const Value* row, const graph::Graph& g) {
    boost::container::small_vector<Value, 4> tmps(n.args.size());
    boost::container::small_vector<const Value::List*, 4> lists;
    bool null = false;
    for (std::size_t i = 0; i < n.args.size(); ++i) {
        const Value& v = ref(n.args[i], row, g, tmps[i]);
        if (v.is_null()) {
            null = true;
        } else if (!v.is_list()) {
            mismatch("list_intersection expects lists");
        } else {
            lists.push_back(&v.as_list());
        }
    }
    if (null) return Value{};
    auto contains = [](const Value::List& l, const Value& x) {
        return std::any_of(l.begin(), l.end(), [&](const Value& y) { return values_equal(x, y); });
    };
    std::int64_t count = 0;
    const Value::List& first = *lists[0];
    for (std::size_t i = 0; i < first.size(); ++i) {
        bool everywhere = true;
        for (std::size_t k = 1; k < lists.size() && everywhere; ++k) everywhere = contains(*lists[k], first[i]);
        if (!everywhere) continue;
        bool repeat = false;
        for (std::size_t j = 0; j < i && !repeat; ++j) repeat = values_equal(first[j], first[i]);
        count += !repeat;
    }
    return Value(count);
}

const Value& CompiledExpr::ref(const Node& n, const Value* row, const graph::Graph& g, Value& tmp) {
    switch (n.kind) {
        case Expr::Kind::Literal: return n.value;
        case Expr::Kind::List: {
            Value::List out;
            out.reserve(n.args.size());
            for (const auto& a : n.args) {
                Value t;
                const Value& v = ref(a, row, g, t);
                out.push_back(&v == &t ? std::move(t) : v);
            }
            return tmp = Value(std::move(out));
        }
        case Expr::Kind::Var: return row[n.slot];
        case Expr::Kind::Prop: {
            Value t;
            const Value& obj = ref(n.args[0], row, g, t);
            const Value* p = nullptr;
            if (obj.is_node()) {
                p = g.node(obj.as_node().id).prop(n.key);
            } else if (obj.is_edge()) {
                p = g.edge(obj.as_edge().id).prop(n.key);
            } else if (obj.is_null()) {
                return tmp = Value{};
            } else {
                mismatch("property access on " + obj.type_name());
            }
            if (!p) throw Error(ErrorKind::MissingProperty, "property '" + n.key + "' is not set");
            return *p;
        }
        case Expr::Kind::Index: {
            Value tl;
            Value ti;
            const Value& list = ref(n.args[0], row, g, tl);
            const Value& idx = ref(n.args[1], row, g, ti);
            if (list.is_null() || idx.is_null()) return tmp = Value{};
            if (!list.is_list() || !idx.is_int()) mismatch("index expects a list and an integer");
            const auto& l = list.as_list();
            std::int64_t i = idx.as_int();
            if (i < 0) i += static_cast<std::int64_t>(l.size());
            if (i < 0 || i >= static_cast<std::int64_t>(l.size())) return tmp = Value{};
            // A temporary list dies with this frame, so its element is copied out.
            if (&list == &tl) return tmp = l[static_cast<std::size_t>(i)];
            return l[static_cast<std::size_t>(i)];
        }
        case Expr::Kind::Unary: {
            Value t;
            const Value& x = ref(n.args[0], row, g, t);
            if (n.un_op == UnOp::Not) {
                if (x.is_null()) return tmp = Value{};
                return tmp = Value(!truthy(x, "NOT"));
            }
            if (x.is_null()) return tmp = Value{};
            if (x.is_int()) {
                if (x.as_int() == INT64_MIN) throw Error(ErrorKind::ArithmeticError, "integer overflow");
                return tmp = Value(-x.as_int());
            }
            if (x.is_float()) return tmp = Value(-x.as_float());
            mismatch("negation of " + x.type_name());
        }
        case Expr::Kind::Binary: {
            Value ta;
            Value tb;
            switch (n.bin_op) {
                case BinOp::And:
                case BinOp::Or:
                case BinOp::Eq:
                case BinOp::Ne:
                case BinOp::Lt:
                case BinOp::Le:
                case BinOp::Gt:
                case BinOp::Ge: return tmp = Value(truth(n, row, g) == 1);
                default: {
                    const Value& a = ref(n.args[0], row, g, ta);
                    const Value& b = ref(n.args[1], row, g, tb);
                    return tmp = arithmetic(n.bin_op, a, b);
                }
            }
        }
        case Expr::Kind::Call: {
            if (n.fn == kOverlap) return tmp = overlap_count(n, row, g);
            Value ta;
            if (n.fn == kIntersection) {
                Value tb;
                const Value& a = ref(n.args[0], row, g, ta);
                const Value& b = ref(n.args[1], row, g, tb);
                return tmp = intersection(a, b);
            }
            const Value& x = ref(n.args[0], row, g, ta);
            if (x.is_null()) return tmp = Value{};
            if (n.fn == kAbs) {
                if (x.is_int()) {
                    if (x.as_int() == INT64_MIN) throw Error(ErrorKind::ArithmeticError, "integer overflow");
                    return tmp = Value(x.as_int() < 0 ? -x.as_int() : x.as_int());
                }
                if (x.is_float()) return tmp = Value(std::fabs(x.as_float()));
                mismatch("abs of " + x.type_name());
            }
            if (x.is_list()) return tmp = Value(static_cast<std::int64_t>(x.as_list().size()));
            if (x.is_string()) return tmp = Value(static_cast<std::int64_t>(x.as_string().size()));
            mismatch("size of " + x.type_name());
        }
    }
    mismatch("malformed expression");
}

Value eval_expr(const Expr& e, const Bindings& bindings, const graph::Graph& g) {
    std::map<std::string, int> slots;
    std::vector<Value> row;
    for (const auto& [name, v] : bindings) {
        slots.emplace(name, static_cast<int>(row.size()));
        row.push_back(v);
    }
    return CompiledExpr(e, slots).eval(row.data(), g);
}

}  // namespace linea::cypher
