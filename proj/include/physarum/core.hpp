#pragma once

#include "physarum/linalg.hpp"
#include "physarum/lp_instance.hpp"
#include "physarum/types.hpp"

namespace physarum {

/// A point of the dynamics: strictly positive coordinates plus a clock.
struct PhysarumState {
    Vector x;
    double t = 0.0;
};

/// Everything the dynamics evaluates at a point x > 0:
///   conductances g_j = x_j / c_j, resistances r_j = c_j / x_j,
///   the weighted Gram matrix A diag(g) A^T and its factorization,
///   node potentials p solving (A diag(g) A^T) p = b,
///   the induced flow q = diag(g) A^T p, and the energy b^T p.
struct DerivedQuantities {
    Vector conductances;
    Vector resistances;
    SpdFactorization laplacian_factorization;
    Vector potentials;
    Vector flow;
    double energy = 0.0;
};

/// Evaluates all derived quantities at x. Throws NonPositiveState if any
/// coordinate of x is not strictly positive, SingularLaplacian if the
/// weighted Gram matrix cannot be factorized (x numerically at the boundary).
DerivedQuantities derive(const LpInstance& instance, const Vector& x);
DerivedQuantities derive(const LpInstance& instance, const PhysarumState& state);

/// Right-hand side of the flow: q - x.
Vector dynamics_rhs(const LpInstance& instance, const Vector& x);
Vector dynamics_rhs(const LpInstance& instance, const PhysarumState& state);

/// Energy at x, computed as b^T p.
double energy(const LpInstance& instance, const Vector& x);

/// Energy comparison against a candidate feasible flow f:
/// candidate_energy = f^T R f, difference = candidate_energy - energy.
/// The flow q minimizes f^T R f over { A f = b }, so difference >= 0 up to
/// roundoff. Throws InfeasibleCandidate when A f != b beyond 1e-8.
struct ThomsonComparison {
    double candidate_energy = 0.0;
    double energy = 0.0;
    double difference = 0.0;
};
ThomsonComparison verify_thomson(const LpInstance& instance, const Vector& x,
                                 const Vector& candidate_flow);

/// Returns f^T A^T p - energy for a feasible f; zero up to roundoff for
/// every feasible flow. Throws InfeasibleCandidate when A f != b beyond 1e-8.
double tellegen_check(const LpInstance& instance, const Vector& x, const Vector& f);

}  // namespace physarum
