#include "physarum/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "physarum/error.hpp"

namespace physarum {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kCostTieTol = 1e-9;
constexpr std::size_t kMaxBases = 1'000'000;
constexpr Index kMaxColumns = 20;

// Overflow-safe C(n, k) capped at kMaxBases + 1.
std::size_t basis_count(Index n, Index k) {
    double value = 1.0;
    for (Index i = 1; i <= k; ++i) {
        value *= static_cast<double>(n - k + i) / static_cast<double>(i);
        if (value > static_cast<double>(kMaxBases) + 1.0) {
            return kMaxBases + 1;
        }
    }
    return static_cast<std::size_t>(value + 0.5);
}

bool next_combination(std::vector<Index>& idx, Index n) {
    const Index k = static_cast<Index>(idx.size());
    for (Index i = k - 1; i >= 0; --i) {
        if (idx[static_cast<std::size_t>(i)] < n - k + i) {
            ++idx[static_cast<std::size_t>(i)];
            for (Index j = i + 1; j < k; ++j) {
                idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
            }
            return true;
        }
    }
    return false;
}

// Coordinates compared in index order; smaller entry at the first
// significant difference wins.
bool lexicographically_less(const Vector& a, const Vector& b) {
    for (Index j = 0; j < a.size(); ++j) {
        const double diff = a(j) - b(j);
        if (std::abs(diff) > 1e-9) {
            return diff < 0.0;
        }
    }
    return false;
}

}  // namespace

std::vector<Vector> enumerate_feasible_vertices(const LpInstance& instance) {
    const Index n = instance.rows();
    const Index e = instance.cols();
    if (e > kMaxColumns || basis_count(e, n) > kMaxBases) {
        throw Error(ErrorCode::TooLarge,
                    "basis enumeration guard: " + std::to_string(e) + " columns, " +
                        std::to_string(n) + " rows");
    }

    const double rhs_scale = std::max(1.0, instance.rhs.lpNorm<Eigen::Infinity>());
    std::vector<Vector> vertices;

    std::vector<Index> basis(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) basis[static_cast<std::size_t>(i)] = i;
    Matrix columns(n, n);
    do {
        for (Index k = 0; k < n; ++k) {
            columns.col(k) = instance.constraint_matrix.col(basis[static_cast<std::size_t>(k)]);
        }
        Eigen::ColPivHouseholderQR<Matrix> qr(columns);
        qr.setThreshold(1e-10);
        if (qr.rank() < n) {
            continue;  // singular basis
        }
        const Vector basic = qr.solve(instance.rhs);
        if ((basic.array() < -kFeasTol).any()) {
            continue;
        }
        Vector vertex = Vector::Zero(e);
        for (Index k = 0; k < n; ++k) {
            vertex(basis[static_cast<std::size_t>(k)]) = std::max(basic(k), 0.0);
        }
        // Ill-conditioned bases can solve inaccurately; only keep vertices
        // that genuinely satisfy the constraints.
        const double residual =
            (instance.constraint_matrix * vertex - instance.rhs).lpNorm<Eigen::Infinity>();
        if (residual > kFeasTol * rhs_scale) {
            continue;
        }
        const auto duplicate =
            std::find_if(vertices.begin(), vertices.end(), [&](const Vector& v) {
                return (v - vertex).lpNorm<Eigen::Infinity>() <= 1e-9;
            });
        if (duplicate == vertices.end()) {
            vertices.push_back(std::move(vertex));
        }
    } while (next_combination(basis, e));
    return vertices;
}

OracleSolution solve_exact(const LpInstance& instance) {
    const std::vector<Vector> vertices = enumerate_feasible_vertices(instance);
    if (vertices.empty()) {
        throw Error(ErrorCode::Infeasible, "no nonnegative basic solution exists");
    }

    OracleSolution solution;
    solution.opt = instance.costs.dot(vertices.front());
    for (const Vector& v : vertices) {
        solution.opt = std::min(solution.opt, instance.costs.dot(v));
    }
    for (const Vector& v : vertices) {
        if (instance.costs.dot(v) <= solution.opt + kCostTieTol) {
            solution.all_optimal_vertices.push_back(v);
        }
    }
    solution.x_star = solution.all_optimal_vertices.front();
    for (const Vector& v : solution.all_optimal_vertices) {
        if (lexicographically_less(v, solution.x_star)) {
            solution.x_star = v;
        }
    }
    return solution;
}

Vector solve_flow_kkt(const LpInstance& instance, const Vector& resistances) {
    const Index n = instance.rows();
    const Index e = instance.cols();
    if (resistances.size() != e) {
        throw Error(ErrorCode::DimensionMismatch, "resistance vector has wrong length");
    }
    for (Index j = 0; j < e; ++j) {
        if (!(resistances(j) > 0.0)) {
            throw Error(ErrorCode::InvalidArgument,
                        "resistance at index " + std::to_string(j) + " not positive");
        }
    }
    // Stationarity of min f^T R f over A f = b, as one symmetric block solve:
    //   [ R  A^T ] [ f  ]   [ 0 ]
    //   [ A   0  ] [ nu ] = [ b ]   with nu = -lambda.
    const Index dim = e + n;
    Matrix kkt = Matrix::Zero(dim, dim);
    kkt.topLeftCorner(e, e) = resistances.asDiagonal();
    kkt.topRightCorner(e, n) = instance.constraint_matrix.transpose();
    kkt.bottomLeftCorner(n, e) = instance.constraint_matrix;
    Vector rhs = Vector::Zero(dim);
    rhs.tail(n) = instance.rhs;

    Eigen::FullPivLU<Matrix> lu(kkt);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) {
        throw Error(ErrorCode::SingularSystem, "stationarity system is singular");
    }
    const Vector solution = lu.solve(rhs);
    return solution.head(e);
}

}  // namespace physarum
