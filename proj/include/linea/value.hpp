#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <boost/container/small_vector.hpp>

#include <nlohmann/json_fwd.hpp>

namespace linea::graph {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Null {
    friend bool operator==(Null, Null) { return true; }
};

struct NodeRef {
    NodeId id = 0;
    friend bool operator==(NodeRef, NodeRef) = default;
};

struct EdgeRef {
    EdgeId id = 0;
    friend bool operator==(EdgeRef, EdgeRef) = default;
};

// A matched path. Variable-length segments contribute only their end node.
struct PathRef {
    boost::container::small_vector<NodeId, 4> nodes;  // paths are short; avoids a heap block per row
    friend bool operator==(const PathRef&, const PathRef&) = default;
};

// Property and expression value. Equality is structural and type-sensitive:
// Value(1) != Value(1.0), and lists compare element-wise in order.
class Value {
public:
    using List = std::vector<Value>;
    using Storage = std::variant<Null, bool, std::int64_t, double, std::string, List, NodeRef, EdgeRef, PathRef>;

    Value() = default;
    Value(Null) {}
    Value(bool b) : v_(b) {}
    Value(int i) : v_(static_cast<std::int64_t>(i)) {}
    Value(std::int64_t i) : v_(i) {}
    Value(double d) : v_(d) {}
    Value(const char* s) : v_(std::string(s)) {}
    Value(std::string s) : v_(std::move(s)) {}
    Value(List l) : v_(std::move(l)) {}
    Value(NodeRef n) : v_(n) {}
    Value(EdgeRef e) : v_(e) {}
    Value(PathRef p) : v_(std::move(p)) {}

    [[nodiscard]] const Storage& storage() const { return v_; }

    [[nodiscard]] bool is_null() const { return std::holds_alternative<Null>(v_); }
    [[nodiscard]] bool is_bool() const { return std::holds_alternative<bool>(v_); }
    [[nodiscard]] bool is_int() const { return std::holds_alternative<std::int64_t>(v_); }
    [[nodiscard]] bool is_float() const { return std::holds_alternative<double>(v_); }
    [[nodiscard]] bool is_number() const { return is_int() || is_float(); }
    [[nodiscard]] bool is_string() const { return std::holds_alternative<std::string>(v_); }
    [[nodiscard]] bool is_list() const { return std::holds_alternative<List>(v_); }
    [[nodiscard]] bool is_node() const { return std::holds_alternative<NodeRef>(v_); }
    [[nodiscard]] bool is_edge() const { return std::holds_alternative<EdgeRef>(v_); }
    [[nodiscard]] bool is_path() const { return std::holds_alternative<PathRef>(v_); }

    [[nodiscard]] bool as_bool() const { return std::get<bool>(v_); }
    [[nodiscard]] std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
    [[nodiscard]] double as_float() const { return std::get<double>(v_); }
    // Numeric value with int promoted to double.
    [[nodiscard]] double as_number() const { return is_int() ? static_cast<double>(as_int()) : as_float(); }
    [[nodiscard]] const std::string& as_string() const { return std::get<std::string>(v_); }
    [[nodiscard]] const List& as_list() const { return std::get<List>(v_); }
    [[nodiscard]] NodeRef as_node() const { return std::get<NodeRef>(v_); }
    [[nodiscard]] EdgeRef as_edge() const { return std::get<EdgeRef>(v_); }
    [[nodiscard]] const PathRef& as_path() const { return std::get<PathRef>(v_); }

    [[nodiscard]] std::string type_name() const;

    friend bool operator==(const Value&, const Value&) = default;

private:
    Storage v_;
};

std::size_t hash_value(const Value& v);

struct ValueHash {
    std::size_t operator()(const Value& v) const { return hash_value(v); }
};

// Readable rendering used in result tables and error messages.
std::string to_string(const Value& v);

void to_json(nlohmann::json& j, const Value& v);

}  // namespace linea::graph
