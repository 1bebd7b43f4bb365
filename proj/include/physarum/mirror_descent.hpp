#pragma once

#include <vector>

#include "physarum/integrator.hpp"
#include "physarum/lp_instance.hpp"
#include "physarum/types.hpp"

namespace physarum {

/// Negative-entropy primal/dual coordinate maps: y_j = 1 + ln x_j and
/// x_j = exp(y_j - 1). Mutually inverse on x > 0.
Vector to_dual(const Vector& x);
Vector to_primal(const Vector& y);

/// Legendre dual of the negative entropy: sum_j exp(y_j - 1). Its gradient
/// is to_primal.
double legendre_dual_value(const Vector& y);

/// Bregman divergence of the negative entropy (unnormalized relative
/// entropy): sum_j x'_j ln(x'_j / x_j) + sum_j x_j - sum_j x'_j, with
/// 0 ln 0 = 0. Nonnegative, zero iff the arguments coincide. Coincides with
/// kl_divergence when both arguments sum to one.
double bregman_negentropy(const Vector& x_prime, const Vector& x);

/// True when the feasible region is the unit simplex: a single all-ones
/// constraint row with right-hand side one.
bool is_simplex_instance(const LpInstance& instance);

/// The descent objective on simplex instances: F(x) = sum_j x_j + ln E(x)
/// with E(x) = (sum_k x_k / c_k)^{-1}.
double md_objective(const LpInstance& instance, const Vector& x);

/// Gradient of the objective: (grad F)_j = 1 - E(x) / c_j.
/// Throws NotSimplexInstance on non-simplex instances.
Vector md_objective_gradient(const LpInstance& instance, const Vector& x);

/// Dual-space velocity y' = -grad F(to_primal(y)), i.e. E(x)/c_j - 1.
Vector md_rhs(const LpInstance& instance, const Vector& y);

/// Bregman divergence from the reference optimum to x under the negative
/// entropy; traced for inspection, no monotonicity is asserted.
double bregman_lyapunov(const Vector& x_star, const Vector& x);

/// Integrates the flow in primal space and the descent dynamics in dual
/// space with identical integrator settings, maps the dual trajectory back,
/// and reports the sup-norm gap at every shared sample time. The initial
/// point need not be feasible.
struct MdComparisonReport {
    double max_deviation = 0.0;
    std::vector<double> sample_times;
    std::vector<double> deviations;
    /// Bregman divergence to the exact optimum along the primal samples;
    /// empty when the instance exceeds the oracle guard.
    std::vector<double> lyapunov;
    IntegrationStats primal_stats;
    IntegrationStats dual_stats;
};
MdComparisonReport compare_trajectories(const LpInstance& instance, const Vector& x0,
                                        double horizon, const IntegrationConfig& config);

}  // namespace physarum
