#pragma once

#include "physarum/types.hpp"

namespace physarum {

/// Lower-triangular Cholesky factor of a symmetric positive definite matrix,
/// possibly computed after adding a small multiple of the identity.
/// factor * factor^T reconstructs input + regularization_applied * I.
struct SpdFactorization {
    Matrix factor;
    Index dimension = 0;
    double regularization_applied = 0.0;
};

/// Cholesky factorization with a single regularization retry: if a pivot
/// falls below 1e-14 times the largest diagonal entry, the factorization is
/// restarted once with 1e-12 * max_diagonal added to the diagonal.
/// Throws NotPositiveDefinite if the retry also fails, AsymmetricInput if
/// the input is asymmetric beyond 1e-12 relative.
SpdFactorization spd_factorize(const Matrix& m);

/// Solves M x = rhs given the factorization of M.
Vector spd_solve(const SpdFactorization& f, const Vector& rhs);

}  // namespace physarum
