#include "physarum/mirror_descent.hpp"

#include <cmath>
#include <string>

#include "ode_driver.hpp"
#include "physarum/core.hpp"
#include "physarum/error.hpp"
#include "physarum/oracle.hpp"

namespace physarum {

namespace {

void check_primal(const Vector& x) {
    for (Index j = 0; j < x.size(); ++j) {
        if (!(x(j) > 0.0)) {
            throw Error(ErrorCode::NonPositivePrimal,
                        "x[" + std::to_string(j) + "] = " + std::to_string(x(j)));
        }
    }
}

void check_simplex(const LpInstance& instance) {
    if (!is_simplex_instance(instance)) {
        throw Error(ErrorCode::NotSimplexInstance,
                    "feasible region must be the unit simplex (single all-ones row, "
                    "rhs one)");
    }
}

// E(x) on simplex instances in closed form.
double simplex_energy(const LpInstance& instance, const Vector& x) {
    return 1.0 / x.cwiseQuotient(instance.costs).sum();
}

}  // namespace

Vector to_dual(const Vector& x) {
    check_primal(x);
    return (x.array().log() + 1.0).matrix();
}

Vector to_primal(const Vector& y) {
    return (y.array() - 1.0).exp().matrix();
}

double legendre_dual_value(const Vector& y) {
    return (y.array() - 1.0).exp().sum();
}

double bregman_negentropy(const Vector& x_prime, const Vector& x) {
    if (x_prime.size() != x.size()) {
        throw Error(ErrorCode::DimensionMismatch, "arguments differ in length");
    }
    double sum = 0.0;
    for (Index j = 0; j < x.size(); ++j) {
        if (!(x(j) > 0.0)) {
            if (x_prime(j) > 0.0) {
                throw Error(ErrorCode::AbsoluteContinuityViolation,
                            "x_prime[" + std::to_string(j) + "] > 0 but x[" +
                                std::to_string(j) + "] <= 0");
            }
            throw Error(ErrorCode::NonPositivePrimal,
                        "x[" + std::to_string(j) + "] = " + std::to_string(x(j)));
        }
        if (x_prime(j) < 0.0) {
            throw Error(ErrorCode::InvalidArgument,
                        "x_prime[" + std::to_string(j) + "] must be nonnegative");
        }
        if (x_prime(j) > 0.0) {
            sum += x_prime(j) * std::log(x_prime(j) / x(j));
        }
        sum += x(j) - x_prime(j);
    }
    return sum < 0.0 && sum > -1e-12 ? 0.0 : sum;
}

bool is_simplex_instance(const LpInstance& instance) {
    if (instance.rows() != 1 || instance.cols() < 1) {
        return false;
    }
    if (std::abs(instance.rhs(0) - 1.0) > 1e-12) {
        return false;
    }
    return (instance.constraint_matrix.row(0).array() - 1.0).abs().maxCoeff() <= 1e-12;
}

double md_objective(const LpInstance& instance, const Vector& x) {
    check_simplex(instance);
    check_primal(x);
    return x.sum() + std::log(simplex_energy(instance, x));
}

Vector md_objective_gradient(const LpInstance& instance, const Vector& x) {
    check_simplex(instance);
    check_primal(x);
    const double e = simplex_energy(instance, x);
    return (1.0 - e * instance.costs.cwiseInverse().array()).matrix();
}

Vector md_rhs(const LpInstance& instance, const Vector& y) {
    return -md_objective_gradient(instance, to_primal(y));
}

double bregman_lyapunov(const Vector& x_star, const Vector& x) {
    return bregman_negentropy(x_star, x);
}

MdComparisonReport compare_trajectories(const LpInstance& instance, const Vector& x0,
                                        double horizon, const IntegrationConfig& config) {
    check_simplex(instance);
    check_primal(x0);
    if (!(horizon > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "horizon must be positive");
    }

    detail::DriveConfig cfg;
    cfg.scheme = config.method == Method::Rk4 ? detail::StepScheme::Rk4
                                              : detail::StepScheme::Euler;
    cfg.start_time = 0.0;
    cfg.end_time = horizon;
    cfg.initial_step = config.initial_step;
    cfg.adaptive = config.adaptive;
    cfg.rel_tol = config.rel_tol;
    cfg.trace_interval = config.trace_interval;
    // Run both flows to the full horizon so sample grids coincide.
    cfg.stop_on_stationary = false;

    cfg.positivity_floor_ratio = config.positivity_floor_ratio;
    const auto primal_rhs = [&](const Vector& v) -> Vector {
        return dynamics_rhs(instance, v);
    };
    const detail::DriveResult primal = detail::drive(primal_rhs, x0, cfg);

    // Dual coordinates are unconstrained; the primal image is positive by
    // construction.
    cfg.positivity_floor_ratio = 0.0;
    const auto dual_rhs = [&](const Vector& y) -> Vector { return md_rhs(instance, y); };
    const detail::DriveResult dual = detail::drive(dual_rhs, to_dual(x0), cfg);

    if (primal.samples.size() != dual.samples.size()) {
        throw Error(ErrorCode::InvalidArgument,
                    "integrations produced mismatched sample grids");
    }

    const Vector* x_star = nullptr;
    OracleSolution oracle;
    try {
        oracle = solve_exact(instance);
        x_star = &oracle.x_star;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::TooLarge) throw;
    }

    MdComparisonReport report;
    report.primal_stats = primal.stats;
    report.dual_stats = dual.stats;
    for (std::size_t i = 0; i < primal.samples.size(); ++i) {
        const auto& ps = primal.samples[i];
        const auto& ds = dual.samples[i];
        if (std::abs(ps.t - ds.t) > 1e-9) {
            throw Error(ErrorCode::InvalidArgument, "sample times diverged");
        }
        const double gap = (ps.x - to_primal(ds.x)).lpNorm<Eigen::Infinity>();
        report.sample_times.push_back(ps.t);
        report.deviations.push_back(gap);
        report.max_deviation = std::max(report.max_deviation, gap);
        if (x_star != nullptr) {
            report.lyapunov.push_back(bregman_lyapunov(*x_star, ps.x));
        }
    }
    return report;
}

}  // namespace physarum
