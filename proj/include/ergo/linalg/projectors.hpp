#pragma once

#include <cmath>

#include "ergo/linalg/dense.hpp"

namespace ergo {

/// Normalization tolerance for oblique-projector anchors (w^T 1 = 1).
inline constexpr double kAnchorSumTolerance = 1e-10;

/// P_v = I - v v^T / |v|^2, the orthogonal projector onto <v>^perp.
inline Matrix orthogonal_projector(const Vector& v) {
    require_finite(v, "anchor vector");
    const double nrm2 = v.squaredNorm();
    if (v.size() == 0 || nrm2 == 0.0) throw InputError("orthogonal_projector: zero vector");
    const auto n = v.size();
    return Matrix::Identity(n, n) - (v * v.transpose()) / nrm2;
}

/// Pi_n = I - 1 1^T / n.
inline Matrix agreement_projector(Eigen::Index n) {
    if (n < 1) throw InputError("agreement_projector: n must be positive");
    return Matrix::Identity(n, n) - Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
}

/// Q_w = I - 1 w^T. Idempotent, w^T Q_w = 0, image <w>^perp, kernel <1>.
inline Matrix oblique_projector(const Vector& w) {
    require_finite(w, "oblique anchor");
    if (w.size() == 0) throw InputError("oblique_projector: empty vector");
    if (std::abs(w.sum() - 1.0) > kAnchorSumTolerance)
        throw PreconditionError("oblique_projector: anchor must satisfy w^T 1 = 1");
    const auto n = w.size();
    return Matrix::Identity(n, n) - Vector::Ones(n) * w.transpose();
}

/// Oriented incidence matrix of the complete graph on n nodes, one column per
/// ordered pair (i, j), i != j, in lexicographic order: +1 at i (head), -1 at j.
inline Matrix incidence_complete(Eigen::Index n) {
    if (n < 2) throw InputError("incidence_complete: n must be at least 2");
    Matrix c = Matrix::Zero(n, n * (n - 1));
    Eigen::Index e = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) continue;
            c(i, e) = 1.0;
            c(j, e) = -1.0;
            ++e;
        }
    return c;
}

}  // namespace ergo
