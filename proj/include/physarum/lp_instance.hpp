#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "physarum/types.hpp"

namespace physarum {

/// An equality-form linear program: minimize costs.dot(x) subject to
/// constraint_matrix * x = rhs, x >= 0. Costs are strictly positive and the
/// constraint matrix has full row rank; both are enforced by validate().
struct LpInstance {
    Matrix constraint_matrix;  // rows() x cols()
    Vector rhs;                // one entry per row
    Vector costs;              // one entry per column, all > 0
    std::string name;

    Index rows() const { return constraint_matrix.rows(); }
    Index cols() const { return constraint_matrix.cols(); }
};

/// Directed network for the transshipment construction. Supplies must sum to
/// zero; positive entries are sources, negative are sinks.
struct NetworkSpec {
    struct Edge {
        int tail;
        int head;
        double cost;
    };
    int node_count = 0;
    std::vector<Edge> edges;
    Vector supplies;
};

struct ValidatedInstance {
    LpInstance instance;
    Index rank;
};

/// Checks shape consistency, positive costs, nonzero rhs, and full row rank
/// (rank-revealing QR, relative threshold 1e-10). Throws Error on rejection.
ValidatedInstance validate(const LpInstance& instance);

/// Builds the LP of a minimum-cost transshipment problem: the signed
/// node-edge incidence matrix (+1 at tail, -1 at head) with the grounded
/// node's row deleted so the matrix regains full row rank on connected
/// graphs. Defaults to grounding the highest-index node.
LpInstance build_transshipment(const NetworkSpec& spec,
                               std::optional<int> grounded_node = std::nullopt);

/// JSON (de)serialization. Accepts either the LP object format
/// {"name"?, "A", "b", "c"} or the network format
/// {"nodes", "edges", "supplies", "ground"?}, which is run through
/// build_transshipment. save_json always emits the LP format.
LpInstance load_json(const std::string& text);
std::string save_json(const LpInstance& instance);
LpInstance load_file(const std::string& path);

/// Deterministic random instance with a known interior feasible point:
/// rhs is constructed as constraint_matrix * feasible_point, so the LP is
/// feasible and bounded by construction.
struct GeneratedInstance {
    LpInstance instance;
    Vector feasible_point;
};
GeneratedInstance random_instance(Index rows, Index cols, std::uint64_t seed);

/// Random connected network with balanced supplies and positive costs.
NetworkSpec random_network(int node_count, int edge_count, std::uint64_t seed);

}  // namespace physarum
