#pragma once

#include <vector>

#include "physarum/lp_instance.hpp"
#include "physarum/types.hpp"

namespace physarum {

/// Exact reference optimum from exhaustive basis enumeration. x_star is the
/// lexicographically smallest optimal vertex; all vertices whose cost ties
/// the optimum within 1e-9 are listed.
struct OracleSolution {
    double opt = 0.0;
    Vector x_star;
    std::vector<Vector> all_optimal_vertices;
    static constexpr const char* chosen_rule = "lexicographic-min";
};

/// Enumerates all row-count-sized column bases, solves each nonsingular one,
/// and keeps the nonnegative basic solutions. Guarded to cols() <= 20 and at
/// most 1e6 bases (TooLarge otherwise); throws Infeasible when no
/// nonnegative basic solution exists.
OracleSolution solve_exact(const LpInstance& instance);

/// All nonnegative basic solutions, deduplicated. Same guard as solve_exact;
/// empty result is reported as Infeasible there, returned as-is here.
std::vector<Vector> enumerate_feasible_vertices(const LpInstance& instance);

/// Independent route to the flow: solves the stationarity system of
/// min f^T R f s.t. A f = b, i.e. the dense symmetric indefinite block system
/// [R A^T; A 0], by direct factorization. Cross-checks derive().flow.
Vector solve_flow_kkt(const LpInstance& instance, const Vector& resistances);

}  // namespace physarum
