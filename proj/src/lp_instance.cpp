#include "physarum/lp_instance.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "physarum/error.hpp"

namespace physarum {

namespace {

constexpr double kRankThreshold = 1e-10;

Index numerical_row_rank(const Matrix& a) {
    Eigen::ColPivHouseholderQR<Matrix> qr(a.transpose());
    qr.setThreshold(kRankThreshold);
    return qr.rank();
}

}  // namespace

ValidatedInstance validate(const LpInstance& instance) {
    const Index n = instance.rows();
    const Index e = instance.cols();
    if (n < 1 || e < 1) {
        throw Error(ErrorCode::EmptyInstance, "constraint matrix is empty");
    }
    if (instance.rhs.size() != n) {
        throw Error(ErrorCode::DimensionMismatch,
                    "rhs length " + std::to_string(instance.rhs.size()) + " vs " +
                        std::to_string(n) + " rows");
    }
    if (instance.costs.size() != e) {
        throw Error(ErrorCode::DimensionMismatch,
                    "cost length " + std::to_string(instance.costs.size()) + " vs " +
                        std::to_string(e) + " columns");
    }
    for (Index j = 0; j < e; ++j) {
        if (!(instance.costs(j) > 0.0)) {
            throw Error(ErrorCode::NonPositiveCost,
                        "cost at index " + std::to_string(j) + " is " +
                            std::to_string(instance.costs(j)));
        }
    }
    if (instance.rhs.lpNorm<Eigen::Infinity>() == 0.0) {
        // A zero rhs forces the optimum x* = 0; the dynamics needs a nonzero
        // optimal solution, so such instances are rejected up front.
        throw Error(ErrorCode::ZeroRhs, "rhs is the zero vector");
    }
    const Index rank = numerical_row_rank(instance.constraint_matrix);
    if (rank < n) {
        throw Error(ErrorCode::RankDeficient,
                    "numerical row rank " + std::to_string(rank) + " < " +
                        std::to_string(n));
    }
    return ValidatedInstance{instance, rank};
}

LpInstance build_transshipment(const NetworkSpec& spec, std::optional<int> grounded_node) {
    const int n = spec.node_count;
    const Index e = static_cast<Index>(spec.edges.size());
    if (n < 2 || e < 1) {
        throw Error(ErrorCode::EmptyInstance,
                    "need at least two nodes and one edge, got " + std::to_string(n) +
                        " nodes, " + std::to_string(e) + " edges");
    }
    if (spec.supplies.size() != n) {
        throw Error(ErrorCode::DimensionMismatch,
                    "supplies length " + std::to_string(spec.supplies.size()) + " vs " +
                        std::to_string(n) + " nodes");
    }
    const double imbalance = spec.supplies.sum();
    if (std::abs(imbalance) > 1e-12 * std::max(1.0, spec.supplies.cwiseAbs().sum())) {
        throw Error(ErrorCode::UnbalancedSupplies,
                    "supplies sum to " + std::to_string(imbalance));
    }
    const int ground = grounded_node.value_or(n - 1);
    if (ground < 0 || ground >= n) {
        throw Error(ErrorCode::InvalidArgument,
                    "grounded node " + std::to_string(ground) + " out of range");
    }

    Matrix incidence = Matrix::Zero(n, e);
    Vector costs(e);
    for (Index j = 0; j < e; ++j) {
        const auto& edge = spec.edges[static_cast<std::size_t>(j)];
        if (edge.tail < 0 || edge.tail >= n || edge.head < 0 || edge.head >= n) {
            throw Error(ErrorCode::InvalidArgument,
                        "edge " + std::to_string(j) + " references a missing node");
        }
        if (!(edge.cost > 0.0)) {
            throw Error(ErrorCode::NonPositiveCost,
                        "edge " + std::to_string(j) + " has cost " +
                            std::to_string(edge.cost));
        }
        incidence(edge.tail, j) += 1.0;
        incidence(edge.head, j) -= 1.0;
        costs(j) = edge.cost;
    }

    LpInstance out;
    out.constraint_matrix.resize(n - 1, e);
    out.rhs.resize(n - 1);
    Index r = 0;
    for (int i = 0; i < n; ++i) {
        if (i == ground) continue;
        out.constraint_matrix.row(r) = incidence.row(i);
        out.rhs(r) = spec.supplies(i);
        ++r;
    }
    out.costs = costs;

    if (numerical_row_rank(out.constraint_matrix) < n - 1) {
        throw Error(ErrorCode::DisconnectedGraph,
                    "grounded incidence matrix is rank deficient; graph not connected");
    }
    return out;
}

// ---- JSON -----------------------------------------------------------------

namespace {

using nlohmann::json;

const json& require_field(const json& obj, const char* key, const char* meaning) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw Error(ErrorCode::SchemaError,
                    std::string("missing field \"") + key + "\" (" + meaning + ")");
    }
    return *it;
}

Vector parse_number_array(const json& arr, const char* key) {
    if (!arr.is_array()) {
        throw Error(ErrorCode::SchemaError, std::string("\"") + key + "\" must be an array");
    }
    Vector v(static_cast<Index>(arr.size()));
    Index i = 0;
    for (const auto& entry : arr) {
        if (!entry.is_number()) {
            throw Error(ErrorCode::ParseError,
                        std::string("non-numeric entry in \"") + key + "\" at position " +
                            std::to_string(i));
        }
        v(i++) = entry.get<double>();
    }
    return v;
}

LpInstance parse_lp_object(const json& obj) {
    const json& a = require_field(obj, "A", "constraint matrix");
    if (!a.is_array() || a.empty()) {
        throw Error(ErrorCode::ParseError, "\"A\" must be a nonempty array of rows");
    }
    const Index rows = static_cast<Index>(a.size());
    Index cols = -1;
    LpInstance out;
    for (Index i = 0; i < rows; ++i) {
        Vector row = parse_number_array(a[static_cast<std::size_t>(i)], "A");
        if (cols < 0) {
            cols = row.size();
            out.constraint_matrix.resize(rows, cols);
        } else if (row.size() != cols) {
            throw Error(ErrorCode::ParseError,
                        "row " + std::to_string(i) + " of \"A\" has length " +
                            std::to_string(row.size()) + ", expected " +
                            std::to_string(cols));
        }
        out.constraint_matrix.row(i) = row;
    }
    out.rhs = parse_number_array(require_field(obj, "b", "right-hand side"), "b");
    out.costs = parse_number_array(require_field(obj, "c", "costs"), "c");
    if (out.rhs.size() != rows) {
        throw Error(ErrorCode::ParseError,
                    "\"b\" has length " + std::to_string(out.rhs.size()) + ", expected " +
                        std::to_string(rows));
    }
    if (out.costs.size() != cols) {
        throw Error(ErrorCode::ParseError,
                    "\"c\" has length " + std::to_string(out.costs.size()) +
                        ", expected " + std::to_string(cols));
    }
    if (auto it = obj.find("name"); it != obj.end() && it->is_string()) {
        out.name = it->get<std::string>();
    }
    return out;
}

LpInstance parse_network_object(const json& obj) {
    NetworkSpec spec;
    const json& nodes = require_field(obj, "nodes", "node count");
    if (!nodes.is_number_integer()) {
        throw Error(ErrorCode::ParseError, "\"nodes\" must be an integer");
    }
    spec.node_count = nodes.get<int>();
    const json& edges = require_field(obj, "edges", "edge list");
    if (!edges.is_array()) {
        throw Error(ErrorCode::ParseError, "\"edges\" must be an array");
    }
    for (const auto& entry : edges) {
        if (!entry.is_array() || entry.size() != 3) {
            throw Error(ErrorCode::ParseError,
                        "each edge must be a [tail, head, cost] triple");
        }
        spec.edges.push_back(NetworkSpec::Edge{entry[0].get<int>(), entry[1].get<int>(),
                                               entry[2].get<double>()});
    }
    spec.supplies = parse_number_array(require_field(obj, "supplies", "node supplies"),
                                       "supplies");
    std::optional<int> ground;
    if (auto it = obj.find("ground"); it != obj.end()) {
        if (!it->is_number_integer()) {
            throw Error(ErrorCode::ParseError, "\"ground\" must be an integer");
        }
        ground = it->get<int>();
    }
    LpInstance out = build_transshipment(spec, ground);
    if (auto it = obj.find("name"); it != obj.end() && it->is_string()) {
        out.name = it->get<std::string>();
    }
    return out;
}

}  // namespace

LpInstance load_json(const std::string& text) {
    json obj;
    try {
        obj = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    if (!obj.is_object()) {
        throw Error(ErrorCode::ParseError, "top-level JSON value must be an object");
    }
    LpInstance instance =
        obj.contains("edges") ? parse_network_object(obj) : parse_lp_object(obj);
    return validate(instance).instance;
}

std::string save_json(const LpInstance& instance) {
    json obj;
    if (!instance.name.empty()) {
        obj["name"] = instance.name;
    }
    json rows = json::array();
    for (Index i = 0; i < instance.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < instance.cols(); ++j) {
            row.push_back(instance.constraint_matrix(i, j));
        }
        rows.push_back(std::move(row));
    }
    obj["A"] = std::move(rows);
    obj["b"] = std::vector<double>(instance.rhs.begin(), instance.rhs.end());
    obj["c"] = std::vector<double>(instance.costs.begin(), instance.costs.end());
    return obj.dump(2);
}

LpInstance load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot open " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_json(buffer.str());
}

// ---- generators -------------------------------------------------------------

GeneratedInstance random_instance(Index rows, Index cols, std::uint64_t seed) {
    if (rows < 1 || cols < rows) {
        throw Error(ErrorCode::InvalidArgument,
                    "need 1 <= rows <= cols, got " + std::to_string(rows) + "x" +
                        std::to_string(cols));
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    std::uniform_real_distribution<double> cost_range(0.5, 2.0);
    std::uniform_real_distribution<double> point_range(0.2, 1.5);

    for (int attempt = 0; attempt < 100; ++attempt) {
        GeneratedInstance gen;
        gen.instance.constraint_matrix =
            Matrix::NullaryExpr(rows, cols, [&]() { return entry(rng); });
        gen.instance.costs = Vector::NullaryExpr(cols, [&]() { return cost_range(rng); });
        gen.feasible_point = Vector::NullaryExpr(cols, [&]() { return point_range(rng); });
        gen.instance.rhs = gen.instance.constraint_matrix * gen.feasible_point;
        gen.instance.name = "random-" + std::to_string(rows) + "x" + std::to_string(cols) +
                            "-" + std::to_string(seed);
        try {
            validate(gen.instance);
            return gen;
        } catch (const Error&) {
            continue;  // rank-deficient or degenerate draw; redraw
        }
    }
    throw Error(ErrorCode::InvalidArgument, "random instance generation did not converge");
}

NetworkSpec random_network(int node_count, int edge_count, std::uint64_t seed) {
    if (node_count < 2 || edge_count < node_count - 1) {
        throw Error(ErrorCode::InvalidArgument,
                    "need node_count >= 2 and enough edges for a spanning tree");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> cost_range(0.5, 2.0);
    std::uniform_real_distribution<double> supply_range(-1.0, 1.0);
    std::uniform_int_distribution<int> node_pick(0, node_count - 1);

    NetworkSpec spec;
    spec.node_count = node_count;
    // Random spanning tree first so the graph is connected, then extra edges.
    for (int v = 1; v < node_count; ++v) {
        std::uniform_int_distribution<int> prior(0, v - 1);
        spec.edges.push_back(NetworkSpec::Edge{prior(rng), v, cost_range(rng)});
    }
    while (static_cast<int>(spec.edges.size()) < edge_count) {
        int tail = node_pick(rng);
        int head = node_pick(rng);
        if (tail == head) continue;
        spec.edges.push_back(NetworkSpec::Edge{tail, head, cost_range(rng)});
    }
    spec.supplies = Vector::NullaryExpr(node_count, [&]() { return supply_range(rng); });
    spec.supplies(node_count - 1) -= spec.supplies.sum();
    return spec;
}

}  // namespace physarum
