#include "physarum/linalg.hpp"

#include <cmath>
#include <string>

#include "physarum/error.hpp"

namespace physarum {

namespace {

constexpr double kPivotFloorRatio = 1e-14;
constexpr double kRegularizationRatio = 1e-12;

// Plain left-looking Cholesky on the lower triangle. Returns false when a
// pivot falls below pivot_floor.
bool cholesky_lower(const Matrix& m, double shift, double pivot_floor, Matrix& out) {
    const Index n = m.rows();
    out.setZero(n, n);
    for (Index j = 0; j < n; ++j) {
        double d = m(j, j) + shift - out.row(j).head(j).squaredNorm();
        if (d < pivot_floor) {
            return false;
        }
        out(j, j) = std::sqrt(d);
        for (Index i = j + 1; i < n; ++i) {
            const double s = out.row(i).head(j).dot(out.row(j).head(j));
            out(i, j) = (m(i, j) + (i == j ? shift : 0.0) - s) / out(j, j);
        }
    }
    return true;
}

}  // namespace

SpdFactorization spd_factorize(const Matrix& m) {
    const Index n = m.rows();
    if (n == 0 || m.cols() != n) {
        throw Error(ErrorCode::DimensionMismatch,
                    "spd_factorize expects a nonempty square matrix");
    }
    const double scale = m.cwiseAbs().maxCoeff();
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale) {
        throw Error(ErrorCode::AsymmetricInput,
                    "relative asymmetry " + std::to_string(asym / scale) + " exceeds 1e-12");
    }

    const double max_diag = m.diagonal().maxCoeff();
    if (!(max_diag > 0.0)) {
        throw Error(ErrorCode::NotPositiveDefinite, "no positive diagonal entry");
    }
    const double pivot_floor = kPivotFloorRatio * max_diag;

    SpdFactorization f;
    f.dimension = n;
    if (cholesky_lower(m, 0.0, pivot_floor, f.factor)) {
        return f;
    }
    // One retry with a diagonal shift before giving up.
    const double delta = kRegularizationRatio * max_diag;
    if (cholesky_lower(m, delta, pivot_floor, f.factor)) {
        f.regularization_applied = delta;
        return f;
    }
    throw Error(ErrorCode::NotPositiveDefinite,
                "pivot below " + std::to_string(pivot_floor) +
                    " persists after regularization");
}

Vector spd_solve(const SpdFactorization& f, const Vector& rhs) {
    if (rhs.size() != f.dimension) {
        throw Error(ErrorCode::DimensionMismatch,
                    "rhs length " + std::to_string(rhs.size()) + " vs dimension " +
                        std::to_string(f.dimension));
    }
    const Matrix& l = f.factor;
    const Index n = f.dimension;
    Vector y(n);
    for (Index i = 0; i < n; ++i) {
        y(i) = (rhs(i) - l.row(i).head(i).dot(y.head(i))) / l(i, i);
    }
    Vector x(n);
    for (Index i = n - 1; i >= 0; --i) {
        x(i) = (y(i) - l.col(i).tail(n - i - 1).dot(x.tail(n - i - 1))) / l(i, i);
    }
    return x;
}

}  // namespace physarum
