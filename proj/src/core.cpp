#include "physarum/core.hpp"

#include <cmath>
#include <string>

#include "physarum/error.hpp"

namespace physarum {

namespace {

void check_point(const LpInstance& instance, const Vector& x) {
    if (x.size() != instance.cols()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "state length " + std::to_string(x.size()) + " vs " +
                        std::to_string(instance.cols()) + " columns");
    }
    for (Index j = 0; j < x.size(); ++j) {
        if (!(x(j) > 0.0)) {
            throw Error(ErrorCode::NonPositiveState,
                        "x[" + std::to_string(j) + "] = " + std::to_string(x(j)));
        }
    }
}

void check_candidate(const LpInstance& instance, const Vector& f) {
    if (f.size() != instance.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "candidate flow has wrong length");
    }
    const double residual =
        (instance.constraint_matrix * f - instance.rhs).lpNorm<Eigen::Infinity>();
    if (residual > 1e-8) {
        throw Error(ErrorCode::InfeasibleCandidate,
                    "||A f - b||_inf = " + std::to_string(residual));
    }
}

}  // namespace

DerivedQuantities derive(const LpInstance& instance, const Vector& x) {
    check_point(instance, x);
    DerivedQuantities d;
    d.conductances = x.cwiseQuotient(instance.costs);
    d.resistances = instance.costs.cwiseQuotient(x);

    const Matrix weighted = instance.constraint_matrix * d.conductances.asDiagonal();
    const Matrix laplacian = weighted * instance.constraint_matrix.transpose();
    try {
        d.laplacian_factorization = spd_factorize(laplacian);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NotPositiveDefinite) {
            throw Error(ErrorCode::SingularLaplacian,
                        std::string("state numerically at the boundary: ") + e.what());
        }
        throw;
    }
    d.potentials = spd_solve(d.laplacian_factorization, instance.rhs);
    d.flow = d.conductances.cwiseProduct(instance.constraint_matrix.transpose() *
                                         d.potentials);
    d.energy = instance.rhs.dot(d.potentials);
    return d;
}

DerivedQuantities derive(const LpInstance& instance, const PhysarumState& state) {
    return derive(instance, state.x);
}

Vector dynamics_rhs(const LpInstance& instance, const Vector& x) {
    return derive(instance, x).flow - x;
}

Vector dynamics_rhs(const LpInstance& instance, const PhysarumState& state) {
    return dynamics_rhs(instance, state.x);
}

double energy(const LpInstance& instance, const Vector& x) {
    return derive(instance, x).energy;
}

ThomsonComparison verify_thomson(const LpInstance& instance, const Vector& x,
                                 const Vector& candidate_flow) {
    check_candidate(instance, candidate_flow);
    const DerivedQuantities d = derive(instance, x);
    ThomsonComparison cmp;
    cmp.candidate_energy =
        candidate_flow.dot(d.resistances.cwiseProduct(candidate_flow));
    cmp.energy = d.energy;
    cmp.difference = cmp.candidate_energy - cmp.energy;
    return cmp;
}

double tellegen_check(const LpInstance& instance, const Vector& x, const Vector& f) {
    check_candidate(instance, f);
    const DerivedQuantities d = derive(instance, x);
    return f.dot(instance.constraint_matrix.transpose() * d.potentials) - d.energy;
}

}  // namespace physarum
