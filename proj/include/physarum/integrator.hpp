#pragma once

#include "physarum/core.hpp"
#include "physarum/lp_instance.hpp"
#include "physarum/oracle.hpp"
#include "physarum/trace.hpp"

namespace physarum {

enum class Method {
    ExplicitEuler,
    Rk4,
};

struct IntegrationConfig {
    Method method = Method::Rk4;
    double initial_step = 1e-2;
    double max_time = 30.0;
    /// A step may not reduce any coordinate below this fraction of its
    /// current value; offending steps are halved instead of clamped.
    double positivity_floor_ratio = 0.5;
    /// Step-doubling error control with this relative tolerance.
    bool adaptive = true;
    double rel_tol = 1e-6;
    /// Time between recorded trace samples.
    double trace_interval = 0.1;
};

/// One explicit step of the flow x' = q - x from state.x with step size h.
/// For Rk4 all internal stage points must stay strictly positive; throws
/// PositivityViolation (naming coordinate and stage) otherwise, so the
/// caller can halve h.
PhysarumState step(const LpInstance& instance, const PhysarumState& state, double h,
                   Method method);

/// Integrates x' = q - x from initial.x until max_time or stationarity
/// (relative sup-norm of q - x below 1e-9). Steps that would breach the
/// positivity floor are halved, up to 40 times (StepCollapse beyond that).
/// Samples are recorded every trace_interval plus the final state; when an
/// oracle is supplied each record also carries KL divergence to the optimum
/// and the potential.
TrajectoryTrace integrate(const LpInstance& instance, const PhysarumState& initial,
                          const IntegrationConfig& config,
                          const OracleSolution* oracle = nullptr);

}  // namespace physarum
