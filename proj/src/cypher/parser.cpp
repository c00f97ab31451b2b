#include "linea/cypher/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>

#include <fmt/format.h>

namespace linea::cypher {

using graph::Direction;
using graph::Value;

Expr Expr::literal(Value v) {
    Expr e;
    e.kind = Kind::Literal;
    e.value = std::move(v);
    return e;
}

Expr Expr::var(std::string name) {
    Expr e;
    e.kind = Kind::Var;
    e.name = std::move(name);
    return e;
}

Expr Expr::prop(Expr object, std::string key) {
    Expr e;
    e.kind = Kind::Prop;
    e.name = std::move(key);
    e.args.push_back(std::move(object));
    return e;
}

Expr Expr::index(Expr list, Expr idx) {
    Expr e;
    e.kind = Kind::Index;
    e.args.push_back(std::move(list));
    e.args.push_back(std::move(idx));
    return e;
}

Expr Expr::unary(UnOp op, Expr x) {
    Expr e;
    e.kind = Kind::Unary;
    e.un_op = op;
    e.args.push_back(std::move(x));
    return e;
}

Expr Expr::binary(BinOp op, Expr l, Expr r) {
    Expr e;
    e.kind = Kind::Binary;
    e.bin_op = op;
    e.args.push_back(std::move(l));
    e.args.push_back(std::move(r));
    return e;
}

Expr Expr::call(std::string fn, std::vector<Expr> args) {
    Expr e;
    e.kind = Kind::Call;
    e.name = std::move(fn);
    e.args = std::move(args);
    return e;
}

Expr Expr::list(std::vector<Expr> elems) {
    Expr e;
    e.kind = Kind::List;
    e.args = std::move(elems);
    return e;
}

namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace

ParseError::ParseError(int line, int column, std::vector<std::string> expected, const std::string& found)
    : Error(ErrorKind::ParseError, fmt::format("line {}, column {}: expected {}; found {}", line, column,
                                               join(expected, " or "), found)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

namespace {

enum class Tok { Ident, Int, Float, String, Sym, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;  // identifier name, string contents, symbol, or number text
    int line = 1;
    int column = 1;
    bool quoted = false;  // backtick identifier: never a keyword
};

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

const std::vector<std::string>& keywords() {
    static const std::vector<std::string> kw{"match", "where", "with",  "merge", "create", "return",
                                             "and",   "or",    "not",   "true",  "false",  "null"};
    return kw;
}

bool is_keyword(std::string_view s) {
    const auto l = lower(s);
    return std::find(keywords().begin(), keywords().end(), l) != keywords().end();
}

std::string describe(const Token& t) {
    switch (t.kind) {
        case Tok::End: return "end of input";
        case Tok::String: return fmt::format("string '{}'", t.text);
        default: return fmt::format("'{}'", t.text);
    }
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : s_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            Token t;
            t.line = line_;
            t.column = col_;
            if (pos_ >= s_.size()) {
                out.push_back(t);
                return out;
            }
            const char c = s_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                t.kind = Tok::Ident;
                while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                    t.text += advance();
            } else if (c == '`') {
                advance();
                t.kind = Tok::Ident;
                t.quoted = true;
                while (pos_ < s_.size() && s_[pos_] != '`') t.text += advance();
                if (pos_ >= s_.size()) fail(t, {"'`'"});
                advance();
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                lex_number(t);
            } else if (c == '\'' || c == '"') {
                lex_string(t);
            } else {
                lex_symbol(t);
            }
            out.push_back(std::move(t));
        }
    }

private:
    [[noreturn]] void fail(const Token& at, std::vector<std::string> expected) {
        throw ParseError(at.line, at.column, std::move(expected),
                         pos_ < s_.size() ? fmt::format("'{}'", s_[pos_]) : "end of input");
    }

    char advance() {
        const char c = s_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space() {
        while (pos_ < s_.size()) {
            if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
                advance();
            } else if (s_.substr(pos_, 2) == "//") {
                while (pos_ < s_.size() && s_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    bool digit_at(std::size_t p) const { return p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p])); }

    void lex_number(Token& t) {
        t.kind = Tok::Int;
        while (digit_at(pos_)) t.text += advance();
        // "0..5" is a range, so a dot only starts a fraction when a digit follows.
        if (pos_ + 1 < s_.size() && s_[pos_] == '.' && digit_at(pos_ + 1)) {
            t.kind = Tok::Float;
            t.text += advance();
            while (digit_at(pos_)) t.text += advance();
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
            if (digit_at(p)) {
                t.kind = Tok::Float;
                while (pos_ < p) t.text += advance();
                while (digit_at(pos_)) t.text += advance();
            }
        }
        if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
            fail(t, {"number"});
        }
    }

    void lex_string(Token& t) {
        t.kind = Tok::String;
        const char quote = advance();
        while (true) {
            if (pos_ >= s_.size()) fail(t, {fmt::format("closing {}", quote)});
            const char c = advance();
            if (c == quote) break;
            if (c == '\\') {
                if (pos_ >= s_.size()) fail(t, {"escape sequence"});
                const char e = advance();
                switch (e) {
                    case 'n': t.text += '\n'; break;
                    case 't': t.text += '\t'; break;
                    case '\\': t.text += '\\'; break;
                    case '\'': t.text += '\''; break;
                    case '"': t.text += '"'; break;
                    default: fail(t, {"escape sequence"});
                }
            } else {
                t.text += c;
            }
        }
    }

    void lex_symbol(Token& t) {
        t.kind = Tok::Sym;
        static const char* two[] = {"<>", "<=", ">=", ".."};
        for (const char* sym : two) {
            if (s_.substr(pos_, 2) == sym) {
                t.text = sym;
                advance();
                advance();
                return;
            }
        }
        const char c = s_[pos_];
        if (std::string_view("()[]{},:.=<>+-*/;").find(c) == std::string_view::npos) {
            fail(t, {"token"});
        }
        t.text = std::string(1, advance());
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

struct FunctionSig {
    const char* name;
    std::size_t arity;
};

constexpr FunctionSig kFunctions[] = {{"abs", 1}, {"size", 1}, {"list_intersection", 2}};

std::string canonical_function(std::string name) {
    name = lower(name);
    if (name == "apoc.coll.intersection") return "list_intersection";
    return name;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

    Script script() {
        Script s;
        skip_semicolons();
        if (at_end()) fail({"MATCH", "MERGE", "CREATE", "RETURN"});
        while (!at_end()) {
            s.statements.push_back(statement());
            skip_semicolons();
        }
        return s;
    }

    Expr standalone_expr() {
        Expr e = expr();
        if (!at_end()) fail({"operator", "end of input"});
        return e;
    }

private:
    const Token& peek(std::size_t ahead = 0) const { return t_[std::min(pos_ + ahead, t_.size() - 1)]; }
    bool at_end() const { return peek().kind == Tok::End; }
    const Token& next() { return t_[pos_ < t_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        const Token& t = peek();
        throw ParseError(t.line, t.column, std::move(expected), describe(t));
    }

    bool is_sym(std::string_view s, std::size_t ahead = 0) const {
        return peek(ahead).kind == Tok::Sym && peek(ahead).text == s;
    }
    bool is_kw(std::string_view kw, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == Tok::Ident && !t.quoted && lower(t.text) == kw;
    }
    bool accept_sym(std::string_view s) {
        if (!is_sym(s)) return false;
        next();
        return true;
    }
    bool accept_kw(std::string_view kw) {
        if (!is_kw(kw)) return false;
        next();
        return true;
    }
    void expect_sym(std::string_view s) {
        if (!accept_sym(s)) fail({fmt::format("'{}'", s)});
    }
    void skip_semicolons() {
        while (accept_sym(";")) {
        }
    }

    bool is_name(std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == Tok::Ident && (t.quoted || !is_keyword(t.text));
    }
    std::string name(const char* what) {
        if (!is_name()) fail({what});
        return next().text;
    }

    Statement statement() {
        Statement st;
        while (accept_kw("match")) {
            MatchClause mc;
            mc.patterns.push_back(pattern());
            while (accept_sym(",")) mc.patterns.push_back(pattern());
            if (accept_kw("where")) mc.where = expr();
            st.matches.push_back(std::move(mc));
        }
        if (!st.matches.empty() && accept_kw("with")) {
            std::vector<std::string> vars{name("variable")};
            while (accept_sym(",")) vars.push_back(name("variable"));
            st.with = std::move(vars);
            return st;
        }
        if (accept_kw("merge")) {
            st.terminal = Statement::Terminal::Merge;
            st.merge = node();
        } else if (accept_kw("create")) {
            st.terminal = Statement::Terminal::Create;
            st.create = pattern();
        } else if (accept_kw("return")) {
            st.terminal = Statement::Terminal::Return;
            st.returns.push_back(expr());
            while (accept_sym(",")) st.returns.push_back(expr());
        } else if (st.matches.empty()) {
            fail({"MATCH", "MERGE", "CREATE", "RETURN"});
        } else if (!at_end() && !is_sym(";")) {
            fail({"','", "MATCH", "WHERE", "WITH", "MERGE", "CREATE", "RETURN", "end of input"});
        }
        return st;
    }

    Pattern pattern() {
        Pattern p;
        if (is_name() && is_sym("=", 1)) {
            p.path_var = next().text;
            next();
        }
        p.nodes.push_back(node());
        while (is_sym("-") || (is_sym("<") && is_sym("-", 1))) {
            p.rels.push_back(rel());
            p.nodes.push_back(node());
        }
        return p;
    }

    NodePat node() {
        NodePat n;
        if (!accept_sym("(")) fail({"'('"});
        if (is_name()) n.var = next().text;
        if (accept_sym(":")) n.label = name("label");
        if (is_sym("{")) n.props = props();
        if (!accept_sym(")")) {
            std::vector<std::string> exp;
            if (!n.label) exp.push_back("':'");
            if (n.props.empty()) exp.push_back("'{'");
            exp.push_back("')'");
            if (!n.var && !n.label && n.props.empty()) exp.insert(exp.begin(), "variable");
            fail(std::move(exp));
        }
        return n;
    }

    std::vector<std::pair<std::string, Expr>> props() {
        std::vector<std::pair<std::string, Expr>> out;
        expect_sym("{");
        do {
            std::string key = name("property key");
            expect_sym(":");
            out.emplace_back(std::move(key), expr());
        } while (accept_sym(","));
        if (!accept_sym("}")) fail({"','", "'}'"});
        return out;
    }

    int hop_count() {
        const Token& t = next();
        int v = 0;
        const auto r = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (r.ec != std::errc{}) {
            throw ParseError(t.line, t.column, {"hop count"}, describe(t));
        }
        return v;
    }

    RelPat rel() {
        RelPat r;
        const bool left = accept_sym("<");
        expect_sym("-");
        expect_sym("[");
        if (is_name()) r.var = next().text;
        if (accept_sym(":")) r.type = name("relationship type");
        if (accept_sym("*")) {
            r.varlen = true;
            r.min_hops = 1;
            r.max_hops = std::nullopt;
            const bool has_min = peek().kind == Tok::Int;
            if (has_min) r.min_hops = hop_count();
            if (accept_sym("..")) {
                if (peek().kind == Tok::Int) r.max_hops = hop_count();
            } else if (has_min) {
                r.max_hops = r.min_hops;
            }
            if (r.max_hops && *r.max_hops < r.min_hops) fail({"upper hop bound >= lower bound"});
        }
        if (!accept_sym("]")) {
            std::vector<std::string> exp;
            if (!r.type) exp.push_back("':'");
            if (!r.varlen) exp.push_back("'*'");
            exp.push_back("']'");
            fail(std::move(exp));
        }
        expect_sym("-");
        const bool right = accept_sym(">");
        if (left && right) fail({"'-'"});
        r.dir = left ? Direction::In : right ? Direction::Out : Direction::Both;
        return r;
    }

    Expr expr() { return or_expr(); }

    Expr or_expr() {
        Expr e = and_expr();
        while (accept_kw("or")) e = Expr::binary(BinOp::Or, std::move(e), and_expr());
        return e;
    }

    Expr and_expr() {
        Expr e = not_expr();
        while (accept_kw("and")) e = Expr::binary(BinOp::And, std::move(e), not_expr());
        return e;
    }

    Expr not_expr() {
        if (accept_kw("not")) return Expr::unary(UnOp::Not, not_expr());
        return cmp_expr();
    }

    Expr cmp_expr() {
        Expr e = add_expr();
        static const std::pair<const char*, BinOp> ops[] = {{"=", BinOp::Eq},  {"<>", BinOp::Ne}, {"<", BinOp::Lt},
                                                            {"<=", BinOp::Le}, {">", BinOp::Gt},  {">=", BinOp::Ge}};
        for (const auto& [sym, op] : ops) {
            if (accept_sym(sym)) return Expr::binary(op, std::move(e), add_expr());
        }
        return e;
    }

    Expr add_expr() {
        Expr e = mul_expr();
        while (true) {
            if (accept_sym("+")) {
                e = Expr::binary(BinOp::Add, std::move(e), mul_expr());
            } else if (accept_sym("-")) {
                e = Expr::binary(BinOp::Sub, std::move(e), mul_expr());
            } else {
                return e;
            }
        }
    }

    Expr mul_expr() {
        Expr e = unary_expr();
        while (true) {
            if (accept_sym("*")) {
                e = Expr::binary(BinOp::Mul, std::move(e), unary_expr());
            } else if (accept_sym("/")) {
                e = Expr::binary(BinOp::Div, std::move(e), unary_expr());
            } else {
                return e;
            }
        }
    }

    Expr unary_expr() {
        if (accept_sym("-")) {
            // A minus directly on a number literal folds into the literal.
            if (peek().kind == Tok::Int || peek().kind == Tok::Float) return postfix(number(true));
            return Expr::unary(UnOp::Neg, unary_expr());
        }
        return postfix(primary());
    }

    Expr number(bool negative) {
        const Token& t = next();
        const std::string text = (negative ? "-" : "") + t.text;
        if (t.kind == Tok::Int) {
            std::int64_t v = 0;
            const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
            if (r.ec != std::errc{}) throw ParseError(t.line, t.column, {"integer in range"}, describe(t));
            return Expr::literal(v);
        }
        return Expr::literal(std::stod(text));
    }

    Expr postfix(Expr e) {
        while (true) {
            if (accept_sym(".")) {
                e = Expr::prop(std::move(e), name("property key"));
            } else if (accept_sym("[")) {
                Expr idx = expr();
                expect_sym("]");
                e = Expr::index(std::move(e), std::move(idx));
            } else {
                return e;
            }
        }
    }

    Expr primary() {
        const Token& t = peek();
        if (t.kind == Tok::Int || t.kind == Tok::Float) return number(false);
        if (t.kind == Tok::String) return Expr::literal(next().text);
        if (accept_kw("true")) return Expr::literal(true);
        if (accept_kw("false")) return Expr::literal(false);
        if (accept_kw("null")) return Expr::literal(Value{});
        if (accept_sym("[")) {
            std::vector<Expr> elems;
            if (!is_sym("]")) {
                elems.push_back(expr());
                while (accept_sym(",")) elems.push_back(expr());
            }
            if (!accept_sym("]")) fail({"','", "']'"});
            return Expr::list(std::move(elems));
        }
        if (accept_sym("(")) {
            Expr e = expr();
            if (!accept_sym(")")) fail({"operator", "')'"});
            return e;
        }
        if (is_name()) {
            // Dotted names followed by '(' are namespaced function calls.
            std::size_t k = 1;
            while (is_sym(".", k) && peek(k + 1).kind == Tok::Ident) k += 2;
            if (is_sym("(", k)) return call(k);
            return Expr::var(next().text);
        }
        fail({"expression"});
    }

    Expr call(std::size_t name_tokens) {
        const Token start = peek();
        std::string fn;
        for (std::size_t i = 0; i < name_tokens; ++i) fn += next().text;
        fn = canonical_function(fn);
        const auto sig = std::find_if(std::begin(kFunctions), std::end(kFunctions),
                                      [&](const FunctionSig& f) { return fn == f.name; });
        if (sig == std::end(kFunctions)) {
            throw ParseError(start.line, start.column, {"abs", "size", "list_intersection", "apoc.coll.intersection"},
                             fmt::format("function '{}'", fn));
        }
        expect_sym("(");
        std::vector<Expr> args;
        if (!is_sym(")")) {
            args.push_back(expr());
            while (accept_sym(",")) args.push_back(expr());
        }
        if (!accept_sym(")")) fail({"','", "')'"});
        if (args.size() != sig->arity) {
            throw ParseError(start.line, start.column, {fmt::format("{} argument(s) to {}", sig->arity, fn)},
                             fmt::format("{} argument(s)", args.size()));
        }
        return Expr::call(std::move(fn), std::move(args));
    }

    std::vector<Token> t_;
    std::size_t pos_ = 0;
};

// ---- printing

bool plain_identifier(const std::string& s) {
    if (s.empty() || is_keyword(s)) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string ident(const std::string& s) { return plain_identifier(s) ? s : "`" + s + "`"; }

std::string quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        switch (c) {
            case '\'': out += "\\'"; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out + "'";
}

std::string literal_text(const Value& v) {
    if (v.is_float()) {
        std::string s = fmt::format("{}", v.as_float());
        if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
        return s;
    }
    if (v.is_string()) return quote(v.as_string());
    if (v.is_list()) {
        std::string out = "[";
        const auto& l = v.as_list();
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (i) out += ", ";
            out += literal_text(l[i]);
        }
        return out + "]";
    }
    return graph::to_string(v);
}

const char* op_text(BinOp op) {
    switch (op) {
        case BinOp::Or: return "OR";
        case BinOp::And: return "AND";
        case BinOp::Eq: return "=";
        case BinOp::Ne: return "<>";
        case BinOp::Lt: return "<";
        case BinOp::Le: return "<=";
        case BinOp::Gt: return ">";
        case BinOp::Ge: return ">=";
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::Div: return "/";
    }
    return "?";
}

std::string print_node(const NodePat& n) {
    std::string out = "(";
    if (n.var) out += ident(*n.var);
    if (n.label) out += ":" + ident(*n.label);
    if (!n.props.empty()) {
        if (n.var || n.label) out += " ";
        out += "{";
        for (std::size_t i = 0; i < n.props.size(); ++i) {
            if (i) out += ", ";
            out += ident(n.props[i].first) + ": " + print(n.props[i].second);
        }
        out += "}";
    }
    return out + ")";
}

std::string print_rel(const RelPat& r) {
    std::string body;
    if (r.var) body += ident(*r.var);
    if (r.type) body += ":" + ident(*r.type);
    if (r.varlen) body += "*" + std::to_string(r.min_hops) + ".." + (r.max_hops ? std::to_string(*r.max_hops) : "");
    switch (r.dir) {
        case Direction::Out: return "-[" + body + "]->";
        case Direction::In: return "<-[" + body + "]-";
        case Direction::Both: return "-[" + body + "]-";
    }
    return {};
}

}  // namespace

Script parse(std::string_view text) { return Parser(Lexer(text).run()).script(); }

Expr parse_expr(std::string_view text) { return Parser(Lexer(text).run()).standalone_expr(); }

std::string print(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Literal: return literal_text(e.value);
        case Expr::Kind::List: {
            std::string out = "[";
            for (std::size_t i = 0; i < e.args.size(); ++i) {
                if (i) out += ", ";
                out += print(e.args[i]);
            }
            return out + "]";
        }
        case Expr::Kind::Var: return ident(e.name);
        case Expr::Kind::Prop: {
            const Expr& obj = e.args[0];
            // Parenthesize anything whose text could bind differently.
            const bool simple = obj.kind == Expr::Kind::Var || obj.kind == Expr::Kind::Prop ||
                                obj.kind == Expr::Kind::Index || obj.kind == Expr::Kind::Call ||
                                obj.kind == Expr::Kind::List;
            return (simple ? print(obj) : "(" + print(obj) + ")") + "." + ident(e.name);
        }
        case Expr::Kind::Index: {
            const Expr& obj = e.args[0];
            const bool simple = obj.kind == Expr::Kind::Var || obj.kind == Expr::Kind::Prop ||
                                obj.kind == Expr::Kind::Index || obj.kind == Expr::Kind::Call ||
                                obj.kind == Expr::Kind::List;
            return (simple ? print(obj) : "(" + print(obj) + ")") + "[" + print(e.args[1]) + "]";
        }
        case Expr::Kind::Unary:
            return (e.un_op == UnOp::Neg ? "-(" : "NOT (") + print(e.args[0]) + ")";
        case Expr::Kind::Binary:
            return "(" + print(e.args[0]) + " " + op_text(e.bin_op) + " " + print(e.args[1]) + ")";
        case Expr::Kind::Call: {
            std::string out = e.name + "(";
            for (std::size_t i = 0; i < e.args.size(); ++i) {
                if (i) out += ", ";
                out += print(e.args[i]);
            }
            return out + ")";
        }
    }
    return {};
}

std::string print(const Pattern& p) {
    std::string out;
    if (p.path_var) out += ident(*p.path_var) + " = ";
    out += print_node(p.nodes[0]);
    for (std::size_t i = 0; i < p.rels.size(); ++i) out += print_rel(p.rels[i]) + print_node(p.nodes[i + 1]);
    return out;
}

std::string print(const Statement& st) {
    std::vector<std::string> lines;
    for (const auto& mc : st.matches) {
        std::vector<std::string> pats;
        for (const auto& p : mc.patterns) pats.push_back(print(p));
        lines.push_back("MATCH " + join(pats, ", "));
        if (mc.where) lines.push_back("WHERE " + print(*mc.where));
    }
    if (st.with) {
        std::vector<std::string> vars;
        for (const auto& v : *st.with) vars.push_back(ident(v));
        lines.push_back("WITH " + join(vars, ", "));
    }
    switch (st.terminal) {
        case Statement::Terminal::None: break;
        case Statement::Terminal::Merge: lines.push_back("MERGE " + print_node(*st.merge)); break;
        case Statement::Terminal::Create: lines.push_back("CREATE " + print(*st.create)); break;
        case Statement::Terminal::Return: {
            std::vector<std::string> items;
            for (const auto& e : st.returns) items.push_back(print(e));
            lines.push_back("RETURN " + join(items, ", "));
            break;
        }
    }
    return join(lines, "\n");
}

std::string print(const Script& script) {
    std::vector<std::string> parts;
    for (const auto& st : script.statements) parts.push_back(print(st));
    return join(parts, "\n");
}

}  // namespace linea::cypher
