#pragma once

#include <optional>
#include <vector>

#include "physarum/lp_instance.hpp"
#include "physarum/oracle.hpp"
#include "physarum/trace.hpp"
#include "physarum/types.hpp"

namespace physarum {

double cost(const LpInstance& instance, const Vector& x);

/// Euclidean norm of the constraint residual A x - b.
double infeasibility(const LpInstance& instance, const Vector& x);

/// Cost-weighted normalization xi_j = c_j x_j / (c^T x). Sums to one, strictly
/// positive for x > 0. Throws ZeroCost when c^T x == 0.
Vector xi(const LpInstance& instance, const Vector& x);

/// Relative entropy sum_j p_star_j ln(p_star_j / p_j) with 0 ln 0 = 0.
/// Both arguments must sum to one within 1e-9 (NotNormalized) and p must be
/// positive wherever p_star is (AbsoluteContinuityViolation).
double kl_divergence(const Vector& p_star, const Vector& p);

/// The dimensionless potential ln(cost(x)/opt) + KL(xi*, xi(x)). Nonnegative
/// on feasible points; the first term can be negative for infeasible x with
/// cost below opt.
double potential(const LpInstance& instance, const Vector& x, const OracleSolution& oracle);

/// Time after which cost(x(t)) <= (1+eps) opt is guaranteed from a feasible
/// start: (6/eps) * (ln(cost(x0)/opt) + KL(xi*, xi(x0))).
/// Throws InfeasibleStart when ||A x0 - b|| > 1e-8.
double bound_time_kl(const LpInstance& instance, const Vector& x0,
                     const OracleSolution& oracle, double eps);

/// Relaxation of bound_time_kl through mu = max_j x*_j / x0_j:
/// (6/eps) * (2 ln(cost(x0)/opt) + ln mu). Always >= bound_time_kl.
double bound_time_mu(const LpInstance& instance, const Vector& x0,
                     const OracleSolution& oracle, double eps);

/// Full scalar snapshot at one point.
struct DiagnosticRecord {
    double t = 0.0;
    double cost = 0.0;
    double energy = 0.0;
    double infeasibility = 0.0;
    Vector xi;
    std::optional<double> kl;
    std::optional<double> potential;
    double energy_cost_ratio = 0.0;
};
DiagnosticRecord diagnose(const LpInstance& instance, const Vector& x, double t,
                          const OracleSolution* oracle = nullptr);

/// Per-sample differential inequalities checked along a feasible-start trace
/// by finite differences (central in the interior, one-sided at the ends):
///   (a) d/dt ln cost        <= sqrt(E/cost) - 1 + tol
///   (b) d/dt KL(xi*, xi)    <= sqrt(E/cost) - E/opt + tol
///   (c) d/dt potential      <= -eps/2 + tol, wherever cost >= (1+eps)^2 opt
/// The default tol of 1e-3 is calibrated for trace intervals <= 1e-2.
struct RateViolation {
    double t = 0.0;
    char check = '?';  // 'a', 'b' or 'c'
    double observed = 0.0;
    double limit = 0.0;
};
struct RateCheckReport {
    std::vector<RateViolation> violations;
    long samples_checked = 0;
    long improvement_samples_tested = 0;  // samples where the (c) gate held
    bool pass() const { return violations.empty(); }
};
RateCheckReport lemma_rate_checks(const TrajectoryTrace& trace, const LpInstance& instance,
                                  const OracleSolution& oracle, double eps = 0.1,
                                  double tol = 1e-3);

}  // namespace physarum
