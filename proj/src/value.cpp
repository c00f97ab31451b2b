#include "linea/value.hpp"

#include <functional>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace linea::graph {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t mix(std::size_t seed, std::size_t h) { return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)); }

}  // namespace

std::string Value::type_name() const {
    return std::visit(Overloaded{[](Null) { return std::string("null"); },
                                 [](bool) { return std::string("boolean"); },
                                 [](std::int64_t) { return std::string("integer"); },
                                 [](double) { return std::string("float"); },
                                 [](const std::string&) { return std::string("string"); },
                                 [](const List&) { return std::string("list"); },
                                 [](NodeRef) { return std::string("node"); },
                                 [](EdgeRef) { return std::string("relationship"); },
                                 [](const PathRef&) { return std::string("path"); }},
                      v_);
}

std::size_t hash_value(const Value& v) {
    const std::size_t tag = v.storage().index();
    return std::visit(Overloaded{[&](Null) { return mix(tag, 0); },
                                 [&](bool b) { return mix(tag, b ? 1 : 0); },
                                 [&](std::int64_t i) { return mix(tag, std::hash<std::int64_t>{}(i)); },
                                 [&](double d) { return mix(tag, std::hash<double>{}(d)); },
                                 [&](const std::string& s) { return mix(tag, std::hash<std::string>{}(s)); },
                                 [&](const Value::List& l) {
                                     std::size_t h = mix(tag, l.size());
                                     for (const auto& e : l) h = mix(h, hash_value(e));
                                     return h;
                                 },
                                 [&](NodeRef n) { return mix(tag, n.id); },
                                 [&](EdgeRef e) { return mix(tag, e.id); },
                                 [&](const PathRef& p) {
                                     std::size_t h = mix(tag, p.nodes.size());
                                     for (auto n : p.nodes) h = mix(h, n);
                                     return h;
                                 }},
                      v.storage());
}

std::string to_string(const Value& v) {
    return std::visit(Overloaded{[](Null) { return std::string("null"); },
                                 [](bool b) { return std::string(b ? "true" : "false"); },
                                 [](std::int64_t i) { return fmt::format("{}", i); },
                                 [](double d) { return fmt::format("{}", d); },
                                 [](const std::string& s) { return fmt::format("'{}'", s); },
                                 [](const Value::List& l) {
                                     std::string out = "[";
                                     for (std::size_t i = 0; i < l.size(); ++i) {
                                         if (i) out += ", ";
                                         out += to_string(l[i]);
                                     }
                                     return out + "]";
                                 },
                                 [](NodeRef n) { return fmt::format("(#{})", n.id); },
                                 [](EdgeRef e) { return fmt::format("[#{}]", e.id); },
                                 [](const PathRef& p) {
                                     std::string out = "<";
                                     for (std::size_t i = 0; i < p.nodes.size(); ++i) {
                                         if (i) out += "..";
                                         out += fmt::format("#{}", p.nodes[i]);
                                     }
                                     return out + ">";
                                 }},
                      v.storage());
}

void to_json(nlohmann::json& j, const Value& v) {
    std::visit(Overloaded{[&](Null) { j = nullptr; }, [&](bool b) { j = b; }, [&](std::int64_t i) { j = i; },
                          [&](double d) { j = d; }, [&](const std::string& s) { j = s; },
                          [&](const Value::List& l) {
                              j = nlohmann::json::array();
                              for (const auto& e : l) {
                                  nlohmann::json x;
                                  to_json(x, e);
                                  j.push_back(std::move(x));
                              }
                          },
                          [&](NodeRef n) { j = nlohmann::json{{"node", n.id}}; },
                          [&](EdgeRef e) { j = nlohmann::json{{"edge", e.id}}; },
                          [&](const PathRef& p) { j = nlohmann::json{{"path", p.nodes}}; }},
               v.storage());
}

}  // namespace linea::graph
