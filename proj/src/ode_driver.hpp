#pragma once

// Internal step-doubling RK driver shared by the primal flow integrator and
// the dual-space descent integration. Not installed; include from src only.

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "physarum/error.hpp"
#include "physarum/trace.hpp"
#include "physarum/types.hpp"

namespace physarum::detail {

enum class StepScheme { Euler, Rk4 };

template <class Rhs>
Vector scheme_step(const Rhs& rhs, const Vector& x, double h, StepScheme scheme) {
    if (scheme == StepScheme::Euler) {
        return x + h * rhs(x);
    }
    const Vector k1 = rhs(x);
    const Vector k2 = rhs(x + (0.5 * h) * k1);
    const Vector k3 = rhs(x + (0.5 * h) * k2);
    const Vector k4 = rhs(x + h * k3);
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct DriveConfig {
    StepScheme scheme = StepScheme::Rk4;
    double start_time = 0.0;
    double end_time = 0.0;
    double initial_step = 1e-2;
    bool adaptive = true;
    double rel_tol = 1e-6;
    double trace_interval = 0.1;
    /// Reject steps that shrink a coordinate below this fraction of its
    /// current value; <= 0 disables the guard (dual-space integration).
    double positivity_floor_ratio = 0.5;
    bool stop_on_stationary = true;
    double stationarity_tol = 1e-9;
    int max_halvings = 40;
};

struct DriveSample {
    double t;
    Vector x;
};

struct DriveResult {
    std::vector<DriveSample> samples;
    IntegrationStats stats;
    double final_time = 0.0;
    Vector final_state;
};

inline bool retryable(const Error& e) {
    switch (e.code()) {
        case ErrorCode::PositivityViolation:
        case ErrorCode::NonPositiveState:
        case ErrorCode::SingularLaplacian:
            return true;
        default:
            return false;
    }
}

inline std::string format_state(double t, const Vector& x) {
    std::ostringstream out;
    out << "t = " << t << ", x = [";
    for (Index j = 0; j < x.size(); ++j) {
        out << (j ? ", " : "") << x(j);
    }
    out << "]";
    return out.str();
}

// Integrates x' = rhs(x) from x0 over [start_time, end_time], recording a
// sample every trace_interval plus the final state. rhs may signal a bad
// trial state by throwing a retryable Error; the step is then halved.
template <class Rhs>
DriveResult drive(const Rhs& rhs, const Vector& x0, const DriveConfig& cfg) {
    const int scheme_order = cfg.scheme == StepScheme::Rk4 ? 4 : 1;
    const double grow_exponent = 1.0 / (scheme_order + 1);

    DriveResult result;
    Vector x = x0;
    double t = cfg.start_time;
    double h = cfg.initial_step;
    double next_sample = t + cfg.trace_interval;
    result.samples.push_back({t, x});

    const auto floor_ok = [&](const Vector& from, const Vector& to) {
        if (cfg.positivity_floor_ratio <= 0.0) return true;
        return (to.array() >= cfg.positivity_floor_ratio * from.array()).all();
    };

    while (t < cfg.end_time - 1e-14) {
        if (cfg.stop_on_stationary) {
            const Vector velocity = rhs(x);
            if (velocity.lpNorm<Eigen::Infinity>() <=
                cfg.stationarity_tol * x.lpNorm<Eigen::Infinity>()) {
                result.stats.converged = true;
                break;
            }
        }

        const double t_target = std::min(next_sample, cfg.end_time);
        double h_try = std::min(h, t_target - t);
        int halvings = 0;
        int control_shrinks = 0;
        Vector accepted;
        double est = 0.0;

        for (;;) {
            bool rejected_by_domain = false;
            try {
                if (cfg.adaptive) {
                    const Vector full = scheme_step(rhs, x, h_try, cfg.scheme);
                    const Vector mid = scheme_step(rhs, x, 0.5 * h_try, cfg.scheme);
                    const Vector halved = scheme_step(rhs, mid, 0.5 * h_try, cfg.scheme);
                    if (!floor_ok(x, full) || !floor_ok(x, halved)) {
                        rejected_by_domain = true;
                    } else {
                        const double scale_floor =
                            1e-12 * std::max(1.0, x.lpNorm<Eigen::Infinity>());
                        est = 0.0;
                        for (Index j = 0; j < x.size(); ++j) {
                            const double scale = std::max(
                                {std::abs(x(j)), std::abs(halved(j)), scale_floor});
                            est = std::max(est, std::abs(full(j) - halved(j)) / scale);
                        }
                        if (est > cfg.rel_tol) {
                            ++result.stats.rejections;
                            if (++control_shrinks > 200) {
                                throw Error(ErrorCode::StepCollapse,
                                            "error control stalled at " +
                                                format_state(t, x));
                            }
                            const double factor = std::clamp(
                                0.9 * std::pow(cfg.rel_tol / est, grow_exponent), 0.1,
                                0.9);
                            h_try *= factor;
                            continue;
                        }
                        accepted = halved;
                        break;
                    }
                } else {
                    const Vector next = scheme_step(rhs, x, h_try, cfg.scheme);
                    if (!floor_ok(x, next)) {
                        rejected_by_domain = true;
                    } else {
                        accepted = next;
                        break;
                    }
                }
            } catch (const Error& e) {
                if (!retryable(e)) throw;
                rejected_by_domain = true;
            }
            if (rejected_by_domain) {
                ++result.stats.rejections;
                if (++halvings > cfg.max_halvings) {
                    throw Error(ErrorCode::StepCollapse,
                                std::to_string(cfg.max_halvings) +
                                    " halvings exhausted at " + format_state(t, x));
                }
                h_try *= 0.5;
            }
        }

        x = std::move(accepted);
        const bool hit_target = h_try >= t_target - t - 1e-14 * std::max(1.0, t_target);
        t = hit_target ? t_target : t + h_try;
        ++result.stats.steps;

        if (cfg.adaptive) {
            const double factor =
                est > 0.0
                    ? std::clamp(0.9 * std::pow(cfg.rel_tol / est, grow_exponent), 0.5, 4.0)
                    : 4.0;
            h = h_try * factor;
        } else {
            h = cfg.initial_step;
        }

        if (t >= next_sample - 1e-12) {
            result.samples.push_back({t, x});
            next_sample += cfg.trace_interval;
        }
    }

    result.final_time = t;
    result.final_state = x;
    if (std::abs(result.samples.back().t - t) > 1e-12) {
        result.samples.push_back({t, x});
    } else {
        result.samples.back() = {t, x};
    }
    return result;
}

}  // namespace physarum::detail
