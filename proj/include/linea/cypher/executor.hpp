#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "linea/cypher/ast.hpp"
#include "linea/property_graph.hpp"

namespace linea::cypher {

struct ExecOptions {
    // CREATE of a directed relationship also creates the reverse edge.
    bool symmetric_create = false;
    // Cartesian MATCH over list-overlap conditions probes an inverted index
    // instead of scanning every candidate node.
    bool use_list_index = true;
};

struct ExecStats {
    std::size_t nodes_created = 0;
    std::size_t edges_created = 0;
    std::size_t merges_matched = 0;
    std::size_t rows_matched = 0;
};

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<graph::Value>> rows;
    ExecStats stats;

    // Sorts rows by a total order on values (node ids for bindings).
    void sort_canonical();
};

// Total order over values: by type, then by content.
bool value_less(const graph::Value& a, const graph::Value& b);

// Runs the statements in order against g. The result holds the rows of the
// last RETURN (empty when there is none). Throws MutationInRead before any
// mutation when MERGE or CREATE follows a RETURN.
ResultTable execute(const Script& script, graph::Graph& g, const ExecOptions& options = {});

}  // namespace linea::cypher
