#include "physarum.h"

#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "physarum/diagnostics.hpp"
#include "physarum/error.hpp"
#include "physarum/integrator.hpp"
#include "physarum/lp_instance.hpp"
#include "physarum/mirror_descent.hpp"
#include "physarum/oracle.hpp"

struct phys_instance {
    physarum::LpInstance value;
};

struct phys_oracle {
    physarum::OracleSolution value;
};

struct phys_trace {
    physarum::TrajectoryTrace value;
    bool has_diagnostics = false;
};

namespace {

thread_local std::string g_last_error;

void set_last_error(const std::string& message) { g_last_error = message; }

phys_status map_code(physarum::ErrorCode code) {
    using physarum::ErrorCode;
    switch (code) {
        case ErrorCode::EmptyInstance: return PHYS_ERR_EMPTY_INSTANCE;
        case ErrorCode::RankDeficient: return PHYS_ERR_RANK_DEFICIENT;
        case ErrorCode::NonPositiveCost: return PHYS_ERR_NONPOSITIVE_COST;
        case ErrorCode::ZeroRhs: return PHYS_ERR_ZERO_RHS;
        case ErrorCode::DisconnectedGraph: return PHYS_ERR_DISCONNECTED_GRAPH;
        case ErrorCode::UnbalancedSupplies: return PHYS_ERR_UNBALANCED_SUPPLIES;
        case ErrorCode::ParseError: return PHYS_ERR_PARSE;
        case ErrorCode::SchemaError: return PHYS_ERR_SCHEMA;
        case ErrorCode::NotPositiveDefinite: return PHYS_ERR_NOT_POSITIVE_DEFINITE;
        case ErrorCode::AsymmetricInput: return PHYS_ERR_ASYMMETRIC_INPUT;
        case ErrorCode::DimensionMismatch: return PHYS_ERR_DIMENSION_MISMATCH;
        case ErrorCode::SingularLaplacian: return PHYS_ERR_SINGULAR_LAPLACIAN;
        case ErrorCode::NonPositiveState: return PHYS_ERR_NONPOSITIVE_STATE;
        case ErrorCode::StepCollapse: return PHYS_ERR_STEP_COLLAPSE;
        case ErrorCode::PositivityViolation: return PHYS_ERR_POSITIVITY_VIOLATION;
        case ErrorCode::ZeroCost: return PHYS_ERR_ZERO_COST;
        case ErrorCode::NotNormalized: return PHYS_ERR_NOT_NORMALIZED;
        case ErrorCode::AbsoluteContinuityViolation: return PHYS_ERR_ABSOLUTE_CONTINUITY;
        case ErrorCode::InfeasibleStart: return PHYS_ERR_INFEASIBLE_START;
        case ErrorCode::InfeasibleCandidate: return PHYS_ERR_INFEASIBLE_CANDIDATE;
        case ErrorCode::Infeasible: return PHYS_ERR_INFEASIBLE;
        case ErrorCode::TooLarge: return PHYS_ERR_TOO_LARGE;
        case ErrorCode::SingularSystem: return PHYS_ERR_SINGULAR_SYSTEM;
        case ErrorCode::NotSimplexInstance: return PHYS_ERR_NOT_SIMPLEX;
        case ErrorCode::NonPositivePrimal: return PHYS_ERR_NONPOSITIVE_PRIMAL;
        case ErrorCode::InvalidArgument: return PHYS_ERR_INVALID_ARGUMENT;
    }
    return PHYS_ERR_INTERNAL;
}

template <class Fn>
phys_status guarded(Fn&& fn) noexcept {
    try {
        fn();
        return PHYS_OK;
    } catch (const physarum::Error& e) {
        set_last_error(e.what());
        return map_code(e.code());
    } catch (const std::bad_alloc&) {
        set_last_error("out of memory");
        return PHYS_ERR_INTERNAL;
    } catch (const std::exception& e) {
        set_last_error(e.what());
        return PHYS_ERR_INTERNAL;
    } catch (...) {
        set_last_error("unknown failure");
        return PHYS_ERR_INTERNAL;
    }
}

phys_status invalid(const char* message) {
    set_last_error(message);
    return PHYS_ERR_INVALID_ARGUMENT;
}

physarum::Vector to_vector(const double* data, int n) {
    return Eigen::Map<const physarum::Vector>(data, n);
}

physarum::IntegrationConfig to_config(const phys_integration_config* config) {
    physarum::IntegrationConfig out;
    if (config == nullptr) {
        return out;
    }
    out.method = config->method == PHYS_METHOD_EULER ? physarum::Method::ExplicitEuler
                                                     : physarum::Method::Rk4;
    out.initial_step = config->initial_step;
    out.max_time = config->max_time;
    out.positivity_floor_ratio = config->positivity_floor_ratio;
    out.adaptive = config->adaptive != 0;
    out.rel_tol = config->rel_tol;
    out.trace_interval = config->trace_interval;
    return out;
}

}  // namespace

extern "C" {

const char* phys_version(void) { return "1.0.0"; }

const char* phys_status_name(phys_status status) {
    switch (status) {
        case PHYS_OK: return "ok";
        case PHYS_ERR_EMPTY_INSTANCE: return "EmptyInstance";
        case PHYS_ERR_RANK_DEFICIENT: return "RankDeficient";
        case PHYS_ERR_NONPOSITIVE_COST: return "NonPositiveCost";
        case PHYS_ERR_ZERO_RHS: return "ZeroRhs";
        case PHYS_ERR_DISCONNECTED_GRAPH: return "DisconnectedGraph";
        case PHYS_ERR_UNBALANCED_SUPPLIES: return "UnbalancedSupplies";
        case PHYS_ERR_PARSE: return "ParseError";
        case PHYS_ERR_SCHEMA: return "SchemaError";
        case PHYS_ERR_NOT_POSITIVE_DEFINITE: return "NotPositiveDefinite";
        case PHYS_ERR_ASYMMETRIC_INPUT: return "AsymmetricInput";
        case PHYS_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
        case PHYS_ERR_SINGULAR_LAPLACIAN: return "SingularLaplacian";
        case PHYS_ERR_NONPOSITIVE_STATE: return "NonPositiveState";
        case PHYS_ERR_STEP_COLLAPSE: return "StepCollapse";
        case PHYS_ERR_POSITIVITY_VIOLATION: return "PositivityViolation";
        case PHYS_ERR_ZERO_COST: return "ZeroCost";
        case PHYS_ERR_NOT_NORMALIZED: return "NotNormalized";
        case PHYS_ERR_ABSOLUTE_CONTINUITY: return "AbsoluteContinuityViolation";
        case PHYS_ERR_INFEASIBLE_START: return "InfeasibleStart";
        case PHYS_ERR_INFEASIBLE_CANDIDATE: return "InfeasibleCandidate";
        case PHYS_ERR_INFEASIBLE: return "Infeasible";
        case PHYS_ERR_TOO_LARGE: return "TooLarge";
        case PHYS_ERR_SINGULAR_SYSTEM: return "SingularSystem";
        case PHYS_ERR_NOT_SIMPLEX: return "NotSimplexInstance";
        case PHYS_ERR_NONPOSITIVE_PRIMAL: return "NonPositivePrimal";
        case PHYS_ERR_INVALID_ARGUMENT: return "InvalidArgument";
        case PHYS_ERR_IO: return "IoError";
        case PHYS_ERR_INTERNAL: return "InternalError";
    }
    return "UnknownStatus";
}

const char* phys_last_error(void) { return g_last_error.c_str(); }

/* ---- instances ------------------------------------------------------- */

phys_status phys_instance_load_json(const char* text, phys_instance** out) {
    if (text == nullptr || out == nullptr) return invalid("null argument");
    return guarded([&] {
        auto* handle = new phys_instance{physarum::load_json(text)};
        *out = handle;
    });
}

phys_status phys_instance_load_file(const char* path, phys_instance** out) {
    if (path == nullptr || out == nullptr) return invalid("null argument");
    return guarded([&] {
        auto* handle = new phys_instance{physarum::load_file(path)};
        *out = handle;
    });
}

phys_status phys_instance_create(int rows, int cols, const double* a, const double* b,
                                 const double* c, const char* name, phys_instance** out) {
    if (a == nullptr || b == nullptr || c == nullptr || out == nullptr) {
        return invalid("null argument");
    }
    if (rows < 1 || cols < 1) return invalid("rows and cols must be positive");
    return guarded([&] {
        physarum::LpInstance instance;
        instance.constraint_matrix =
            Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                           Eigen::RowMajor>>(a, rows, cols);
        instance.rhs = to_vector(b, rows);
        instance.costs = to_vector(c, cols);
        if (name != nullptr) instance.name = name;
        *out = new phys_instance{physarum::validate(instance).instance};
    });
}

phys_status phys_instance_random(int rows, int cols, unsigned long long seed,
                                 double* feasible_point, phys_instance** out) {
    if (out == nullptr) return invalid("null argument");
    return guarded([&] {
        physarum::GeneratedInstance gen = physarum::random_instance(rows, cols, seed);
        if (feasible_point != nullptr) {
            Eigen::Map<physarum::Vector>(feasible_point, cols) = gen.feasible_point;
        }
        *out = new phys_instance{std::move(gen.instance)};
    });
}

phys_status phys_instance_save_json(const phys_instance* inst, char** out) {
    if (inst == nullptr || out == nullptr) return invalid("null argument");
    return guarded([&] {
        const std::string text = physarum::save_json(inst->value);
        char* buffer = new char[text.size() + 1];
        std::memcpy(buffer, text.c_str(), text.size() + 1);
        *out = buffer;
    });
}

void phys_string_free(char* s) { delete[] s; }

void phys_instance_free(phys_instance* inst) { delete inst; }

int phys_instance_rows(const phys_instance* inst) {
    return inst == nullptr ? 0 : static_cast<int>(inst->value.rows());
}

int phys_instance_cols(const phys_instance* inst) {
    return inst == nullptr ? 0 : static_cast<int>(inst->value.cols());
}

const char* phys_instance_name(const phys_instance* inst) {
    return inst == nullptr ? "" : inst->value.name.c_str();
}

int phys_instance_is_simplex(const phys_instance* inst) {
    return inst != nullptr && physarum::is_simplex_instance(inst->value) ? 1 : 0;
}

phys_status phys_instance_costs(const phys_instance* inst, double* out, int len) {
    if (inst == nullptr || out == nullptr) return invalid("null argument");
    if (len < inst->value.cols()) return invalid("output buffer too small");
    Eigen::Map<physarum::Vector>(out, inst->value.cols()) = inst->value.costs;
    return PHYS_OK;
}

/* ---- oracle ----------------------------------------------------------- */

phys_status phys_oracle_solve(const phys_instance* inst, phys_oracle** out) {
    if (inst == nullptr || out == nullptr) return invalid("null argument");
    return guarded([&] { *out = new phys_oracle{physarum::solve_exact(inst->value)}; });
}

double phys_oracle_opt(const phys_oracle* oracle) {
    return oracle == nullptr ? std::numeric_limits<double>::quiet_NaN()
                             : oracle->value.opt;
}

phys_status phys_oracle_x_star(const phys_oracle* oracle, double* out, int len) {
    if (oracle == nullptr || out == nullptr) return invalid("null argument");
    if (len < oracle->value.x_star.size()) return invalid("output buffer too small");
    Eigen::Map<physarum::Vector>(out, oracle->value.x_star.size()) = oracle->value.x_star;
    return PHYS_OK;
}

int phys_oracle_vertex_count(const phys_oracle* oracle) {
    return oracle == nullptr ? 0
                             : static_cast<int>(oracle->value.all_optimal_vertices.size());
}

phys_status phys_oracle_vertex(const phys_oracle* oracle, int k, double* out, int len) {
    if (oracle == nullptr || out == nullptr) return invalid("null argument");
    if (k < 0 || k >= phys_oracle_vertex_count(oracle)) return invalid("vertex index");
    const physarum::Vector& v =
        oracle->value.all_optimal_vertices[static_cast<std::size_t>(k)];
    if (len < v.size()) return invalid("output buffer too small");
    Eigen::Map<physarum::Vector>(out, v.size()) = v;
    return PHYS_OK;
}

void phys_oracle_free(phys_oracle* oracle) { delete oracle; }

/* ---- integration ------------------------------------------------------ */

void phys_integration_config_init(phys_integration_config* config) {
    if (config == nullptr) return;
    const physarum::IntegrationConfig defaults;
    config->method = PHYS_METHOD_RK4;
    config->initial_step = defaults.initial_step;
    config->max_time = defaults.max_time;
    config->positivity_floor_ratio = defaults.positivity_floor_ratio;
    config->adaptive = defaults.adaptive ? 1 : 0;
    config->rel_tol = defaults.rel_tol;
    config->trace_interval = defaults.trace_interval;
}

phys_status phys_integrate(const phys_instance* inst, const double* x0, int n,
                           const phys_integration_config* config,
                           const phys_oracle* oracle, phys_trace** out) {
    if (inst == nullptr || x0 == nullptr || out == nullptr) return invalid("null argument");
    if (n != inst->value.cols()) return invalid("x0 length must match column count");
    return guarded([&] {
        physarum::PhysarumState initial{to_vector(x0, n), 0.0};
        auto* handle = new phys_trace;
        try {
            handle->value = physarum::integrate(inst->value, initial, to_config(config),
                                                oracle ? &oracle->value : nullptr);
        } catch (...) {
            delete handle;
            throw;
        }
        handle->has_diagnostics = oracle != nullptr;
        *out = handle;
    });
}

int phys_trace_size(const phys_trace* trace) {
    return trace == nullptr ? 0 : static_cast<int>(trace->value.size());
}

int phys_trace_has_diagnostics(const phys_trace* trace) {
    return trace != nullptr && trace->has_diagnostics ? 1 : 0;
}

phys_status phys_trace_record(const phys_trace* trace, int i, double* t, double* x,
                              int x_len, double* cost, double* energy,
                              double* infeasibility, double* kl, double* potential) {
    if (trace == nullptr) return invalid("null trace");
    if (i < 0 || i >= phys_trace_size(trace)) return invalid("record index");
    const physarum::TraceRecord& rec = trace->value.records[static_cast<std::size_t>(i)];
    if (x != nullptr) {
        if (x_len < rec.x.size()) return invalid("state buffer too small");
        Eigen::Map<physarum::Vector>(x, rec.x.size()) = rec.x;
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (t != nullptr) *t = rec.t;
    if (cost != nullptr) *cost = rec.cost;
    if (energy != nullptr) *energy = rec.energy;
    if (infeasibility != nullptr) *infeasibility = rec.infeasibility;
    if (kl != nullptr) *kl = rec.kl.value_or(nan);
    if (potential != nullptr) *potential = rec.potential.value_or(nan);
    return PHYS_OK;
}

phys_status phys_trace_stats(const phys_trace* trace, phys_run_stats* out) {
    if (trace == nullptr || out == nullptr) return invalid("null argument");
    out->steps = trace->value.stats.steps;
    out->rejections = trace->value.stats.rejections;
    out->regularizations = trace->value.stats.regularizations;
    out->converged = trace->value.stats.converged ? 1 : 0;
    out->final_time = trace->value.records.empty() ? 0.0 : trace->value.back().t;
    return PHYS_OK;
}

void phys_trace_free(phys_trace* trace) { delete trace; }

/* ---- diagnostics ------------------------------------------------------- */

phys_status phys_cost(const phys_instance* inst, const double* x, int n, double* out) {
    if (inst == nullptr || x == nullptr || out == nullptr) return invalid("null argument");
    return guarded([&] { *out = physarum::cost(inst->value, to_vector(x, n)); });
}

phys_status phys_energy(const phys_instance* inst, const double* x, int n, double* out) {
    if (inst == nullptr || x == nullptr || out == nullptr) return invalid("null argument");
    return guarded([&] { *out = physarum::energy(inst->value, to_vector(x, n)); });
}

phys_status phys_infeasibility(const phys_instance* inst, const double* x, int n,
                               double* out) {
    if (inst == nullptr || x == nullptr || out == nullptr) return invalid("null argument");
    return guarded([&] { *out = physarum::infeasibility(inst->value, to_vector(x, n)); });
}

phys_status phys_potential(const phys_instance* inst, const double* x, int n,
                           const phys_oracle* oracle, double* out) {
    if (inst == nullptr || x == nullptr || oracle == nullptr || out == nullptr) {
        return invalid("null argument");
    }
    return guarded(
        [&] { *out = physarum::potential(inst->value, to_vector(x, n), oracle->value); });
}

phys_status phys_bound_time_kl(const phys_instance* inst, const double* x0, int n,
                               const phys_oracle* oracle, double eps, double* out) {
    if (inst == nullptr || x0 == nullptr || oracle == nullptr || out == nullptr) {
        return invalid("null argument");
    }
    return guarded([&] {
        *out = physarum::bound_time_kl(inst->value, to_vector(x0, n), oracle->value, eps);
    });
}

phys_status phys_bound_time_mu(const phys_instance* inst, const double* x0, int n,
                               const phys_oracle* oracle, double eps, double* out) {
    if (inst == nullptr || x0 == nullptr || oracle == nullptr || out == nullptr) {
        return invalid("null argument");
    }
    return guarded([&] {
        *out = physarum::bound_time_mu(inst->value, to_vector(x0, n), oracle->value, eps);
    });
}

phys_status phys_feasible_interior_point(const phys_instance* inst, double* out, int len) {
    if (inst == nullptr || out == nullptr) return invalid("null argument");
    if (len < inst->value.cols()) return invalid("output buffer too small");
    return guarded([&] {
        const std::vector<physarum::Vector> vertices =
            physarum::enumerate_feasible_vertices(inst->value);
        if (vertices.empty()) {
            throw physarum::Error(physarum::ErrorCode::Infeasible,
                                  "no nonnegative basic solution exists");
        }
        physarum::Vector avg = physarum::Vector::Zero(inst->value.cols());
        for (const auto& v : vertices) avg += v;
        avg /= static_cast<double>(vertices.size());
        if ((avg.array() <= 0.0).any()) {
            throw physarum::Error(physarum::ErrorCode::Infeasible,
                                  "vertex average touches the boundary; no strictly "
                                  "positive start available");
        }
        Eigen::Map<physarum::Vector>(out, avg.size()) = avg;
    });
}

/* ---- mirror descent ----------------------------------------------------- */

phys_status phys_md_compare(const phys_instance* inst, const double* x0, int n,
                            double horizon, const phys_integration_config* config,
                            double* max_deviation) {
    if (inst == nullptr || x0 == nullptr || max_deviation == nullptr) {
        return invalid("null argument");
    }
    if (n != inst->value.cols()) return invalid("x0 length must match column count");
    return guarded([&] {
        const physarum::MdComparisonReport report = physarum::compare_trajectories(
            inst->value, to_vector(x0, n), horizon, to_config(config));
        *max_deviation = report.max_deviation;
    });
}

}  // extern "C"
