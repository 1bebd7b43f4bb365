#include "physarum/integrator.hpp"

#include <cmath>
#include <string>

#include "ode_driver.hpp"
#include "physarum/diagnostics.hpp"
#include "physarum/error.hpp"

namespace physarum {

namespace {

void check_config(const IntegrationConfig& config) {
    if (!(config.initial_step > 0.0) || !(config.max_time > 0.0) ||
        !(config.trace_interval > 0.0) || !(config.rel_tol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "step, max_time, trace_interval and rel_tol must be positive");
    }
    if (!(config.positivity_floor_ratio > 0.0) ||
        !(config.positivity_floor_ratio < 1.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "positivity_floor_ratio must lie in (0, 1)");
    }
}

detail::StepScheme scheme_of(Method method) {
    return method == Method::Rk4 ? detail::StepScheme::Rk4 : detail::StepScheme::Euler;
}

// Stage-checked evaluation for the single-step entry point: reports which
// coordinate left the domain and at which stage.
Vector checked_rhs(const LpInstance& instance, const Vector& v, const char* stage) {
    for (Index j = 0; j < v.size(); ++j) {
        if (!(v(j) > 0.0)) {
            throw Error(ErrorCode::PositivityViolation,
                        "x[" + std::to_string(j) + "] = " + std::to_string(v(j)) +
                            " at " + stage);
        }
    }
    return dynamics_rhs(instance, v);
}

}  // namespace

PhysarumState step(const LpInstance& instance, const PhysarumState& state, double h,
                   Method method) {
    if (!(h > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "step size must be positive");
    }
    Vector next;
    if (method == Method::ExplicitEuler) {
        next = state.x + h * checked_rhs(instance, state.x, "stage 1");
    } else {
        const Vector k1 = checked_rhs(instance, state.x, "stage 1");
        const Vector k2 = checked_rhs(instance, state.x + (0.5 * h) * k1, "stage 2");
        const Vector k3 = checked_rhs(instance, state.x + (0.5 * h) * k2, "stage 3");
        const Vector k4 = checked_rhs(instance, state.x + h * k3, "stage 4");
        next = state.x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    for (Index j = 0; j < next.size(); ++j) {
        if (!(next(j) > 0.0)) {
            throw Error(ErrorCode::PositivityViolation,
                        "x[" + std::to_string(j) + "] = " + std::to_string(next(j)) +
                            " at step result");
        }
    }
    return PhysarumState{std::move(next), state.t + h};
}

TrajectoryTrace integrate(const LpInstance& instance, const PhysarumState& initial,
                          const IntegrationConfig& config, const OracleSolution* oracle) {
    check_config(config);
    if (initial.x.size() != instance.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "initial state has wrong length");
    }
    for (Index j = 0; j < initial.x.size(); ++j) {
        if (!(initial.x(j) > 0.0)) {
            throw Error(ErrorCode::NonPositiveState,
                        "initial x[" + std::to_string(j) + "] = " +
                            std::to_string(initial.x(j)));
        }
    }

    long regularizations = 0;
    const auto rhs = [&](const Vector& v) -> Vector {
        const DerivedQuantities d = derive(instance, v);
        if (d.laplacian_factorization.regularization_applied > 0.0) {
            ++regularizations;
        }
        return d.flow - v;
    };

    detail::DriveConfig cfg;
    cfg.scheme = scheme_of(config.method);
    cfg.start_time = initial.t;
    cfg.end_time = config.max_time;
    cfg.initial_step = config.initial_step;
    cfg.adaptive = config.adaptive;
    cfg.rel_tol = config.rel_tol;
    cfg.trace_interval = config.trace_interval;
    cfg.positivity_floor_ratio = config.positivity_floor_ratio;
    cfg.stop_on_stationary = true;

    detail::DriveResult run = detail::drive(rhs, initial.x, cfg);

    TrajectoryTrace trace;
    trace.stats = run.stats;
    trace.stats.regularizations = regularizations;
    trace.records.reserve(run.samples.size());
    for (const auto& sample : run.samples) {
        const DiagnosticRecord d = diagnose(instance, sample.x, sample.t, oracle);
        TraceRecord rec;
        rec.t = sample.t;
        rec.x = sample.x;
        rec.cost = d.cost;
        rec.energy = d.energy;
        rec.infeasibility = d.infeasibility;
        rec.kl = d.kl;
        rec.potential = d.potential;
        trace.records.push_back(std::move(rec));
    }
    return trace;
}

}  // namespace physarum
