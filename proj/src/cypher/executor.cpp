#include "linea/cypher/executor.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include <boost/container/small_vector.hpp>

#include "linea/cypher/eval.hpp"
#include "linea/cypher/parser.hpp"
#include "linea/error.hpp"

namespace linea::cypher {

using graph::Direction;
using graph::EdgeId;
using graph::EdgeRef;
using graph::NodeId;
using graph::NodeRef;
using graph::PathRef;
using graph::Value;

bool value_less(const Value& a, const Value& b) {
    const auto ia = a.storage().index();
    const auto ib = b.storage().index();
    if (ia != ib) return ia < ib;
    if (a.is_bool()) return a.as_bool() < b.as_bool();
    if (a.is_int()) return a.as_int() < b.as_int();
    if (a.is_float()) return a.as_float() < b.as_float();
    if (a.is_string()) return a.as_string() < b.as_string();
    if (a.is_list()) {
        return std::lexicographical_compare(a.as_list().begin(), a.as_list().end(), b.as_list().begin(),
                                            b.as_list().end(), value_less);
    }
    if (a.is_node()) return a.as_node().id < b.as_node().id;
    if (a.is_edge()) return a.as_edge().id < b.as_edge().id;
    if (a.is_path()) return a.as_path().nodes < b.as_path().nodes;
    return false;
}

void ResultTable::sort_canonical() {
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), value_less);
    });
}

namespace {

using Row = std::vector<Value>;

enum class VarKind { Node, Rel, Path, Value };

struct Scope {
    std::map<std::string, int> slots;
    std::vector<VarKind> kinds;
    std::vector<std::string> names;

    [[nodiscard]] bool has(const std::string& name) const { return slots.count(name) != 0; }

    int add(const std::string& name, VarKind kind) {
        const int slot = static_cast<int>(kinds.size());
        slots.emplace(name, slot);
        kinds.push_back(kind);
        names.push_back(name);
        return slot;
    }

    int require(const std::string& name, VarKind kind) const {
        const auto it = slots.find(name);
        if (it == slots.end()) throw Error(ErrorKind::UnboundVariable, "variable '" + name + "' is not bound");
        if (kinds[it->second] != kind) throw Error(ErrorKind::TypeMismatch, "variable '" + name + "' has another kind");
        return it->second;
    }
};

struct NodeSlot {
    int slot = -1;           // -1: anonymous
    bool pre_bound = false;  // bound before this pattern
    bool repeat = false;     // bound earlier in this same pattern
    std::optional<std::string> label;
    std::vector<std::pair<std::string, CompiledExpr>> props;
};

struct RelSlot {
    int slot = -1;
    bool pre_bound = false;
    bool repeat = false;
    RelPat pat;
};

// Candidate generation for a lone node pattern from a list-overlap conjunct.
struct IndexJoin {
    std::string label;
    std::string key;
    CompiledExpr other;
};

struct CPattern {
    std::vector<NodeSlot> nodes;
    std::vector<RelSlot> rels;
    int path_slot = -1;
    std::optional<IndexJoin> join;
    // Constraint skeleton; fixed ids and inline props are filled per row.
    mutable graph::PathPattern pp;
};

struct CClause {
    std::vector<CPattern> patterns;
    // conjuncts[s + 1] run once patterns 0..s are bound; conjuncts[0] before any.
    std::vector<std::vector<CompiledExpr>> conjuncts;
};

void split_and(const Expr& e, std::vector<const Expr*>& out) {
    if (e.kind == Expr::Kind::Binary && e.bin_op == BinOp::And) {
        split_and(e.args[0], out);
        split_and(e.args[1], out);
    } else {
        out.push_back(&e);
    }
}

// Recognizes size(list_intersection(v.key, other)) >= k with k >= 1, or
// > k with k >= 0, either argument order.
std::optional<std::pair<std::string, const Expr*>> overlap_condition(const Expr& c, const std::string& var) {
    if (c.kind != Expr::Kind::Binary) return std::nullopt;
    const Expr& rhs = c.args[1];
    if (rhs.kind != Expr::Kind::Literal || !rhs.value.is_int()) return std::nullopt;
    const bool at_least_one = (c.bin_op == BinOp::Ge && rhs.value.as_int() >= 1) ||
                              (c.bin_op == BinOp::Gt && rhs.value.as_int() >= 0);
    if (!at_least_one) return std::nullopt;
    const Expr& size = c.args[0];
    if (size.kind != Expr::Kind::Call || size.name != "size") return std::nullopt;
    const Expr& inter = size.args[0];
    if (inter.kind != Expr::Kind::Call || inter.name != "list_intersection") return std::nullopt;
    for (int side = 0; side < 2; ++side) {
        const Expr& mine = inter.args[side];
        const Expr& other = inter.args[1 - side];
        if (mine.kind == Expr::Kind::Prop && mine.args[0].kind == Expr::Kind::Var && mine.args[0].name == var &&
            free_vars(other).count(var) == 0) {
            return std::make_pair(mine.name, &other);
        }
    }
    return std::nullopt;
}

class StatementRunner {
public:
    StatementRunner(graph::Graph& g, const ExecOptions& opt, ExecStats& stats) : g_(g), opt_(opt), stats_(stats) {}

    // Compiles and runs st over `rows` (shaped by `scope`), leaving the rows
    // and scope to hand to the next statement in place.
    void run(const Statement& st, Scope& scope, std::vector<Row>& rows, ResultTable& result) {
        std::vector<CClause> clauses;
        for (const auto& mc : st.matches) clauses.push_back(compile_clause(mc, scope));
        for (auto& row : rows) row.resize(scope.kinds.size());

        for (const auto& cc : clauses) {
            prepare_indexes(cc);
            std::vector<Row> out;
            for (auto& row : rows) {
                used_.clear();
                if (!passes(cc.conjuncts[0], row)) continue;
                match_from(cc, 0, row, out);
            }
            rows = std::move(out);
        }
        if (!st.matches.empty()) stats_.rows_matched += rows.size();

        if (st.with) {
            project(*st.with, scope, rows);
            return;
        }
        switch (st.terminal) {
            case Statement::Terminal::None: break;
            case Statement::Terminal::Merge: run_merge(*st.merge, scope, rows); break;
            case Statement::Terminal::Create: run_create(*st.create, scope, rows); break;
            case Statement::Terminal::Return: run_return(st.returns, scope, rows, result); break;
        }
        scope = Scope{};
        rows.assign(1, Row{});
    }

private:
    CClause compile_clause(const MatchClause& mc, Scope& scope) {
        CClause cc;
        std::map<std::string, int> stage_of;  // variable -> pattern index that binds it
        const std::set<std::string> before_clause = [&] {
            std::set<std::string> s;
            for (const auto& [n, _] : scope.slots) s.insert(n);
            return s;
        }();

        for (std::size_t pi = 0; pi < mc.patterns.size(); ++pi) {
            const Pattern& p = mc.patterns[pi];
            CPattern cp;
            std::set<std::string> in_pattern;
            // Inline properties are evaluated before the pattern is matched.
            const std::map<std::string, int> before_pattern = scope.slots;
            for (std::size_t i = 0; i < p.nodes.size(); ++i) {
                const NodePat& np = p.nodes[i];
                NodeSlot ns;
                ns.label = np.label;
                for (const auto& [k, e] : np.props) ns.props.emplace_back(k, CompiledExpr(e, before_pattern));
                if (np.var) {
                    if (in_pattern.count(*np.var)) {
                        ns.slot = scope.require(*np.var, VarKind::Node);
                        ns.repeat = true;
                    } else if (scope.has(*np.var)) {
                        ns.slot = scope.require(*np.var, VarKind::Node);
                        ns.pre_bound = true;
                    } else {
                        ns.slot = scope.add(*np.var, VarKind::Node);
                        stage_of[*np.var] = static_cast<int>(pi);
                        in_pattern.insert(*np.var);
                    }
                }
                cp.nodes.push_back(std::move(ns));
            }
            for (const RelPat& rp : p.rels) {
                RelSlot rs;
                rs.pat = rp;
                if (rp.var) {
                    if (rp.varlen) {
                        throw Error(ErrorKind::TypeMismatch, "variable-length relationships cannot be bound to a variable");
                    }
                    if (in_pattern.count(*rp.var)) {
                        rs.slot = scope.require(*rp.var, VarKind::Rel);
                        rs.repeat = true;
                    } else if (scope.has(*rp.var)) {
                        rs.slot = scope.require(*rp.var, VarKind::Rel);
                        rs.pre_bound = true;
                    } else {
                        rs.slot = scope.add(*rp.var, VarKind::Rel);
                        stage_of[*rp.var] = static_cast<int>(pi);
                        in_pattern.insert(*rp.var);
                    }
                }
                cp.rels.push_back(std::move(rs));
            }
            for (const auto& ns : cp.nodes) cp.pp.nodes.push_back({ns.label, std::nullopt, {}});
            for (const auto& rs : cp.rels) {
                graph::RelConstraint rc;
                rc.type = rs.pat.type;
                rc.dir = rs.pat.dir;
                rc.min_hops = rs.pat.min_hops;
                rc.max_hops = rs.pat.max_hops;
                cp.pp.rels.push_back(std::move(rc));
            }
            if (p.path_var) {
                if (scope.has(*p.path_var)) throw Error(ErrorKind::TypeMismatch, "path variable '" + *p.path_var + "' is already bound");
                cp.path_slot = scope.add(*p.path_var, VarKind::Path);
                stage_of[*p.path_var] = static_cast<int>(pi);
            }
            cc.patterns.push_back(std::move(cp));
        }

        cc.conjuncts.resize(mc.patterns.size() + 1);
        if (!mc.where) return cc;
        std::vector<const Expr*> parts;
        split_and(*mc.where, parts);
        for (const Expr* c : parts) {
            int stage = -1;
            for (const auto& v : free_vars(*c)) {
                if (!scope.has(v)) throw Error(ErrorKind::UnboundVariable, "variable '" + v + "' is not bound");
                const auto it = stage_of.find(v);
                if (it != stage_of.end()) stage = std::max(stage, it->second);
            }
            cc.conjuncts[static_cast<std::size_t>(stage + 1)].emplace_back(*c, scope.slots);

            // A lone labelled node whose only new variable is constrained by
            // a list overlap with already-bound values can be joined via index.
            if (stage < 0) continue;
            CPattern& cp = cc.patterns[static_cast<std::size_t>(stage)];
            const Pattern& p = mc.patterns[static_cast<std::size_t>(stage)];
            if (cp.join || !p.rels.empty() || !p.nodes[0].var || !p.nodes[0].label || cp.nodes[0].pre_bound) continue;
            const auto cond = overlap_condition(*c, *p.nodes[0].var);
            if (!cond) continue;
            bool other_ready = true;
            for (const auto& v : free_vars(*cond->second)) {
                const auto it = stage_of.find(v);
                if (it != stage_of.end() && it->second >= stage) other_ready = false;
                if (it == stage_of.end() && !before_clause.count(v)) other_ready = false;
            }
            if (other_ready) cp.join = IndexJoin{*p.nodes[0].label, cond->first, CompiledExpr(*cond->second, scope.slots)};
        }
        return cc;
    }

    void prepare_indexes(const CClause& cc) {
        if (!opt_.use_list_index) return;
        for (const auto& cp : cc.patterns) {
            if (!cp.join) continue;
            if (!g_.list_index_lookup(cp.join->label, cp.join->key, Value{})) g_.build_list_index(cp.join->label, cp.join->key);
        }
    }

    bool passes(const std::vector<CompiledExpr>& conds, const Row& row) const {
        for (const auto& c : conds)
            if (!c.test(row.data(), g_)) return false;
        return true;
    }

    // Evaluated inline props of a node pattern; false when one is missing.
    bool node_props(const NodeSlot& ns, const Row& row, std::vector<std::pair<std::string, Value>>& out) const {
        out.clear();
        for (const auto& [k, e] : ns.props) {
            try {
                out.emplace_back(k, e.eval(row.data(), g_));
            } catch (const Error& err) {
                if (err.kind() == ErrorKind::MissingProperty) return false;
                throw;
            }
        }
        return true;
    }

    bool props_match(NodeId n, const std::vector<std::pair<std::string, Value>>& props) const {
        const graph::Node& node = g_.node(n);
        for (const auto& [k, v] : props) {
            const Value* p = node.prop(k);
            if (!p || !values_equal(*p, v)) return false;
        }
        return true;
    }

    void match_from(const CClause& cc, std::size_t pi, Row& row, std::vector<Row>& out) {
        if (pi == cc.patterns.size()) {
            out.push_back(row);
            return;
        }
        const CPattern& cp = cc.patterns[pi];
        const auto& conds = cc.conjuncts[pi + 1];
        auto next = [&] {
            if (passes(conds, row)) match_from(cc, pi + 1, row, out);
        };

        if (cp.join && opt_.use_list_index && join_candidates(cp, row)) {
            std::vector<std::pair<std::string, Value>> props;
            if (!node_props(cp.nodes[0], row, props)) return;
            const std::vector<NodeId> cands = candidates_;
            for (NodeId n : cands) {
                if (!props_match(n, props)) continue;
                row[static_cast<std::size_t>(cp.nodes[0].slot)] = Value(NodeRef{n});
                if (cp.path_slot >= 0) row[static_cast<std::size_t>(cp.path_slot)] = Value(PathRef{{n}});
                next();
            }
            return;
        }

        // Later patterns never touch this one's skeleton while it is being matched.
        graph::PathPattern& pp = cp.pp;
        for (std::size_t i = 0; i < cp.nodes.size(); ++i) {
            const NodeSlot& ns = cp.nodes[i];
            graph::NodeConstraint& nc = pp.nodes[i];
            if (ns.pre_bound) {
                const Value& v = row[static_cast<std::size_t>(ns.slot)];
                if (!v.is_node()) throw Error(ErrorKind::TypeMismatch, "node variable bound to " + v.type_name());
                nc.fixed = v.as_node().id;
            }
            if (!ns.props.empty() && !node_props(ns, row, nc.props)) return;
        }
        for (std::size_t r = 0; r < cp.rels.size(); ++r) {
            const RelSlot& rs = cp.rels[r];
            if (!rs.pre_bound) continue;
            const Value& v = row[static_cast<std::size_t>(rs.slot)];
            if (!v.is_edge()) throw Error(ErrorKind::TypeMismatch, "relationship variable bound to " + v.type_name());
            pp.rels[r].fixed = v.as_edge().id;
        }

        g_.for_each_match(pp, [&](const graph::PathBinding& b) {
            // Relationship isomorphism across the patterns of one MATCH.
            for (EdgeId e : b.edges)
                if (e != graph::kNoEdge && std::find(used_.begin(), used_.end(), e) != used_.end()) return;
            // A variable repeated inside the pattern must bind one element.
            for (std::size_t i = 0; i < cp.nodes.size(); ++i) {
                const NodeSlot& ns = cp.nodes[i];
                if (ns.slot < 0 || ns.pre_bound) continue;
                if (ns.repeat) {
                    if (!(row[static_cast<std::size_t>(ns.slot)] == Value(NodeRef{b.nodes[i]}))) return;
                } else {
                    row[static_cast<std::size_t>(ns.slot)] = Value(NodeRef{b.nodes[i]});
                }
            }
            for (std::size_t r = 0; r < cp.rels.size(); ++r) {
                const RelSlot& rs = cp.rels[r];
                if (rs.slot < 0 || rs.pre_bound) continue;
                if (rs.repeat) {
                    if (!(row[static_cast<std::size_t>(rs.slot)] == Value(EdgeRef{b.edges[r]}))) return;
                } else {
                    row[static_cast<std::size_t>(rs.slot)] = Value(EdgeRef{b.edges[r]});
                }
            }
            if (cp.path_slot >= 0) row[static_cast<std::size_t>(cp.path_slot)] = Value(PathRef{{b.nodes.begin(), b.nodes.end()}});
            const std::size_t mark = used_.size();
            for (EdgeId e : b.edges)
                if (e != graph::kNoEdge) used_.push_back(e);
            next();
            used_.resize(mark);
        });
    }

    // Fills candidates_ from the list index; false means fall back to a scan.
    bool join_candidates(const CPattern& cp, const Row& row) {
        Value other;
        try {
            other = cp.join->other.eval(row.data(), g_);
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::MissingProperty) throw;
            candidates_.clear();  // the overlap test would be false for every node
            return true;
        }
        if (other.is_null()) {
            candidates_.clear();
            return true;
        }
        if (!other.is_list()) return false;
        std::vector<NodeId> cands;
        auto add = [&](const Value& elem) {
            const auto hits = g_.list_index_lookup(cp.join->label, cp.join->key, elem);
            if (hits) cands.insert(cands.end(), hits->begin(), hits->end());
        };
        for (const Value& elem : other.as_list()) {
            add(elem);
            // The index is keyed structurally; equality in the query is numeric.
            if (elem.is_int()) add(Value(static_cast<double>(elem.as_int())));
            if (elem.is_float() && elem.as_float() == static_cast<double>(static_cast<std::int64_t>(elem.as_float())))
                add(Value(static_cast<std::int64_t>(elem.as_float())));
        }
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        candidates_ = std::move(cands);
        return true;
    }

    void project(const std::vector<std::string>& vars, Scope& scope, std::vector<Row>& rows) {
        Scope next;
        std::vector<int> from;
        for (const auto& v : vars) {
            const auto it = scope.slots.find(v);
            if (it == scope.slots.end()) throw Error(ErrorKind::UnboundVariable, "variable '" + v + "' is not bound");
            if (next.has(v)) throw Error(ErrorKind::TypeMismatch, "variable '" + v + "' projected twice");
            from.push_back(it->second);
            next.add(v, scope.kinds[static_cast<std::size_t>(it->second)]);
        }
        for (auto& row : rows) {
            Row r;
            r.reserve(from.size());
            for (int s : from) r.push_back(std::move(row[static_cast<std::size_t>(s)]));
            row = std::move(r);
        }
        scope = std::move(next);
    }

    void run_merge(const NodePat& np, const Scope& scope, const std::vector<Row>& rows) {
        if (np.var && scope.has(*np.var)) throw Error(ErrorKind::TypeMismatch, "MERGE variable '" + *np.var + "' is already bound");
        std::vector<std::pair<std::string, CompiledExpr>> props;
        for (const auto& [k, e] : np.props) props.emplace_back(k, CompiledExpr(e, scope.slots));
        std::vector<std::string> labels;
        if (np.label) labels.push_back(*np.label);
        for (const Row& row : rows) {
            graph::PropertyMap pm;
            for (const auto& [k, e] : props) pm[k] = e.eval(row.data(), g_);
            bool created = false;
            g_.merge_node(labels, std::move(pm), &created);
            if (created) {
                ++stats_.nodes_created;
            } else {
                ++stats_.merges_matched;
            }
        }
    }

    void run_create(const Pattern& p, const Scope& scope, const std::vector<Row>& rows) {
        if (p.path_var) throw Error(ErrorKind::TypeMismatch, "CREATE does not bind paths");
        struct NewNode {
            std::vector<std::string> labels;
            std::vector<std::pair<std::string, CompiledExpr>> props;
        };
        // Each position is an existing slot, a new node, or a repeat of an earlier new node.
        std::vector<int> slot(p.nodes.size(), -1);
        std::vector<int> same_as(p.nodes.size(), -1);
        std::vector<std::optional<NewNode>> fresh(p.nodes.size());
        std::map<std::string, std::size_t> local;
        for (std::size_t i = 0; i < p.nodes.size(); ++i) {
            const NodePat& np = p.nodes[i];
            if (np.var && scope.has(*np.var)) {
                if (np.label || !np.props.empty()) {
                    throw Error(ErrorKind::TypeMismatch, "CREATE cannot add labels or properties to bound '" + *np.var + "'");
                }
                slot[i] = scope.require(*np.var, VarKind::Node);
            } else if (np.var && local.count(*np.var)) {
                same_as[i] = static_cast<int>(local[*np.var]);
            } else {
                NewNode nn;
                if (np.label) nn.labels.push_back(*np.label);
                for (const auto& [k, e] : np.props) nn.props.emplace_back(k, CompiledExpr(e, scope.slots));
                fresh[i] = std::move(nn);
                if (np.var) local[*np.var] = i;
            }
        }
        for (const RelPat& rp : p.rels) {
            if (!rp.type) throw Error(ErrorKind::TypeMismatch, "CREATE needs a relationship type");
            if (rp.varlen) throw Error(ErrorKind::TypeMismatch, "CREATE cannot create variable-length relationships");
            if (rp.dir == Direction::Both) throw Error(ErrorKind::TypeMismatch, "CREATE needs a directed relationship");
        }

        for (const Row& row : rows) {
            std::vector<NodeId> ids(p.nodes.size(), 0);
            for (std::size_t i = 0; i < p.nodes.size(); ++i) {
                if (slot[i] >= 0) {
                    const Value& v = row[static_cast<std::size_t>(slot[i])];
                    if (!v.is_node()) throw Error(ErrorKind::TypeMismatch, "CREATE endpoint is " + v.type_name());
                    ids[i] = v.as_node().id;
                } else if (same_as[i] >= 0) {
                    ids[i] = ids[static_cast<std::size_t>(same_as[i])];
                } else {
                    graph::PropertyMap pm;
                    for (const auto& [k, e] : fresh[i]->props) pm[k] = e.eval(row.data(), g_);
                    ids[i] = g_.add_node(fresh[i]->labels, std::move(pm));
                    ++stats_.nodes_created;
                }
            }
            for (std::size_t r = 0; r < p.rels.size(); ++r) {
                const RelPat& rp = p.rels[r];
                NodeId src = ids[r];
                NodeId dst = ids[r + 1];
                if (rp.dir == Direction::In) std::swap(src, dst);
                g_.add_edge(src, dst, *rp.type);
                ++stats_.edges_created;
                if (opt_.symmetric_create && src != dst) {
                    g_.add_edge(dst, src, *rp.type);
                    ++stats_.edges_created;
                }
            }
        }
    }

    void run_return(const std::vector<Expr>& items, const Scope& scope, std::vector<Row>& rows,
                    ResultTable& result) {
        std::vector<CompiledExpr> exprs;
        // Bare variables are moved out of the row; each may be moved only once.
        std::vector<int> move_from;
        std::set<int> moved;
        result.columns.clear();
        result.rows.clear();
        for (const auto& e : items) {
            exprs.emplace_back(e, scope.slots);
            result.columns.push_back(print(e));
            int slot = -1;
            if (e.kind == Expr::Kind::Var) {
                slot = scope.slots.at(e.name);
                if (!moved.insert(slot).second) slot = -1;
            }
            move_from.push_back(slot);
        }
        result.rows.reserve(rows.size());
        for (Row& row : rows) {
            // Computed columns first, so they still see the variables.
            boost::container::small_vector<Value, 8> out(exprs.size());
            for (std::size_t i = 0; i < exprs.size(); ++i)
                if (move_from[i] < 0) out[i] = exprs[i].eval(row.data(), g_);
            for (std::size_t i = 0; i < exprs.size(); ++i)
                if (move_from[i] >= 0) out[i] = std::move(row[static_cast<std::size_t>(move_from[i])]);
            // The row's own buffer becomes the result row.
            row.assign(std::make_move_iterator(out.begin()), std::make_move_iterator(out.end()));
            result.rows.push_back(std::move(row));
        }
    }

    graph::Graph& g_;
    const ExecOptions& opt_;
    ExecStats& stats_;
    std::vector<EdgeId> used_;
    std::vector<NodeId> candidates_;
};

}  // namespace

ResultTable execute(const Script& script, graph::Graph& g, const ExecOptions& options) {
    bool returned = false;
    for (const auto& st : script.statements) {
        const bool mutates = st.terminal == Statement::Terminal::Merge || st.terminal == Statement::Terminal::Create;
        if (mutates && returned) throw Error(ErrorKind::MutationInRead, "MERGE or CREATE after RETURN");
        returned = returned || st.terminal == Statement::Terminal::Return;
    }

    ResultTable result;
    StatementRunner runner(g, options, result.stats);
    Scope scope;
    std::vector<Row> rows(1);
    for (const auto& st : script.statements) runner.run(st, scope, rows, result);
    return result;
}

}  // namespace linea::cypher
