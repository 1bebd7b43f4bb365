#include "physarum/diagnostics.hpp"

#include <cmath>
#include <string>

#include "physarum/core.hpp"
#include "physarum/error.hpp"

namespace physarum {

namespace {

void check_length(const LpInstance& instance, const Vector& x) {
    if (x.size() != instance.cols()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "vector length " + std::to_string(x.size()) + " vs " +
                        std::to_string(instance.cols()) + " columns");
    }
}

void check_positive(const Vector& x, const char* what) {
    for (Index j = 0; j < x.size(); ++j) {
        if (!(x(j) > 0.0)) {
            throw Error(ErrorCode::NonPositiveState,
                        std::string(what) + "[" + std::to_string(j) + "] = " +
                            std::to_string(x(j)));
        }
    }
}

void check_feasible_start(const LpInstance& instance, const Vector& x0) {
    const double residual = infeasibility(instance, x0);
    if (residual > 1e-8) {
        throw Error(ErrorCode::InfeasibleStart,
                    "||A x0 - b||_2 = " + std::to_string(residual));
    }
}

}  // namespace

double cost(const LpInstance& instance, const Vector& x) {
    check_length(instance, x);
    return instance.costs.dot(x);
}

double infeasibility(const LpInstance& instance, const Vector& x) {
    check_length(instance, x);
    return (instance.constraint_matrix * x - instance.rhs).norm();
}

Vector xi(const LpInstance& instance, const Vector& x) {
    check_length(instance, x);
    const double total = instance.costs.dot(x);
    if (total == 0.0) {
        throw Error(ErrorCode::ZeroCost, "cannot normalize a zero-cost point");
    }
    return instance.costs.cwiseProduct(x) / total;
}

double kl_divergence(const Vector& p_star, const Vector& p) {
    if (p_star.size() != p.size()) {
        throw Error(ErrorCode::DimensionMismatch, "distributions differ in length");
    }
    if (std::abs(p_star.sum() - 1.0) > 1e-9 || std::abs(p.sum() - 1.0) > 1e-9) {
        throw Error(ErrorCode::NotNormalized, "inputs must sum to one within 1e-9");
    }
    double sum = 0.0;
    for (Index j = 0; j < p.size(); ++j) {
        if (p_star(j) == 0.0) {
            continue;  // 0 ln 0 convention
        }
        if (p_star(j) < 0.0 || p(j) < 0.0) {
            throw Error(ErrorCode::NotNormalized,
                        "negative probability at index " + std::to_string(j));
        }
        if (p(j) == 0.0) {
            throw Error(ErrorCode::AbsoluteContinuityViolation,
                        "p_star[" + std::to_string(j) + "] > 0 but p[" +
                            std::to_string(j) + "] = 0");
        }
        sum += p_star(j) * std::log(p_star(j) / p(j));
    }
    return sum < 0.0 && sum > -1e-12 ? 0.0 : sum;
}

double potential(const LpInstance& instance, const Vector& x, const OracleSolution& oracle) {
    check_positive(x, "x");
    return std::log(cost(instance, x) / oracle.opt) +
           kl_divergence(xi(instance, oracle.x_star), xi(instance, x));
}

double bound_time_kl(const LpInstance& instance, const Vector& x0,
                     const OracleSolution& oracle, double eps) {
    if (!(eps > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "eps must be positive");
    }
    check_positive(x0, "x0");
    check_feasible_start(instance, x0);
    return 6.0 / eps * potential(instance, x0, oracle);
}

double bound_time_mu(const LpInstance& instance, const Vector& x0,
                     const OracleSolution& oracle, double eps) {
    if (!(eps > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "eps must be positive");
    }
    check_positive(x0, "x0");
    check_feasible_start(instance, x0);
    const double mu = oracle.x_star.cwiseQuotient(x0).maxCoeff();
    return 6.0 / eps *
           (2.0 * std::log(cost(instance, x0) / oracle.opt) + std::log(mu));
}

DiagnosticRecord diagnose(const LpInstance& instance, const Vector& x, double t,
                          const OracleSolution* oracle) {
    DiagnosticRecord rec;
    rec.t = t;
    rec.cost = cost(instance, x);
    rec.energy = energy(instance, x);
    rec.infeasibility = infeasibility(instance, x);
    rec.xi = xi(instance, x);
    rec.energy_cost_ratio = rec.energy / rec.cost;
    if (oracle != nullptr) {
        rec.kl = kl_divergence(xi(instance, oracle->x_star), rec.xi);
        rec.potential = std::log(rec.cost / oracle->opt) + *rec.kl;
    }
    return rec;
}

RateCheckReport lemma_rate_checks(const TrajectoryTrace& trace, const LpInstance& instance,
                                  const OracleSolution& oracle, double eps, double tol) {
    RateCheckReport report;
    const auto& records = trace.records;
    if (records.size() < 2) {
        return report;
    }
    if (!records.front().kl.has_value() || !records.front().potential.has_value()) {
        throw Error(ErrorCode::InvalidArgument,
                    "trace lacks oracle diagnostics; integrate with an oracle");
    }
    check_feasible_start(instance, records.front().x);

    const auto deriv = [&](auto&& value, std::size_t i) {
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 == records.size() ? i : i + 1;
        return (value(records[hi]) - value(records[lo])) /
               (records[hi].t - records[lo].t);
    };
    const auto ln_cost = [](const TraceRecord& r) { return std::log(r.cost); };
    const auto kl_of = [](const TraceRecord& r) { return *r.kl; };
    const auto phi_of = [](const TraceRecord& r) { return *r.potential; };

    const double gate = (1.0 + eps) * (1.0 + eps) * oracle.opt;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const TraceRecord& r = records[i];
        ++report.samples_checked;
        const double ratio_root = std::sqrt(r.energy / r.cost);

        const double dlncost = deriv(ln_cost, i);
        if (dlncost > ratio_root - 1.0 + tol) {
            report.violations.push_back({r.t, 'a', dlncost, ratio_root - 1.0 + tol});
        }
        const double dkl = deriv(kl_of, i);
        if (dkl > ratio_root - r.energy / oracle.opt + tol) {
            report.violations.push_back(
                {r.t, 'b', dkl, ratio_root - r.energy / oracle.opt + tol});
        }
        if (r.cost >= gate) {
            ++report.improvement_samples_tested;
            const double dphi = deriv(phi_of, i);
            if (dphi > -eps / 2.0 + tol) {
                report.violations.push_back({r.t, 'c', dphi, -eps / 2.0 + tol});
            }
        }
    }
    return report;
}

}  // namespace physarum
