#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "ergo/error.hpp"
#include "ergo/linalg/pnorm.hpp"

namespace ergo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline void require_finite(const Matrix& a, const char* what = "matrix") {
    if (!a.allFinite()) throw InputError(std::string(what) + " has non-finite entries");
}

inline void require_finite(const Vector& x, const char* what = "vector") {
    if (!x.allFinite()) throw InputError(std::string(what) + " has non-finite entries");
}

inline void require_square(const Matrix& a, const char* what = "matrix") {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw InputError(std::string(what) + " must be square and nonempty");
}

inline Vector ones(Eigen::Index n) { return Vector::Ones(n); }

inline double vector_pnorm(const Vector& x, PNorm p) {
    switch (p) {
        case PNorm::One: return x.lpNorm<1>();
        case PNorm::Two: return x.norm();
        case PNorm::Inf: return x.size() == 0 ? 0.0 : x.lpNorm<Eigen::Infinity>();
    }
    return 0.0;
}

inline double max_abs_column_sum(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().colwise().sum().maxCoeff();
}

inline double max_abs_row_sum(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().rowwise().sum().maxCoeff();
}

inline double spectral_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

/// Exact operator norm of A : (R^n, l_p) -> (R^m, l_p) for p in {1, 2, inf}.
inline double induced_pnorm(const Matrix& a, PNorm p) {
    require_finite(a);
    switch (p) {
        case PNorm::One: return max_abs_column_sum(a);
        case PNorm::Two: return spectral_norm(a);
        case PNorm::Inf: return max_abs_row_sum(a);
    }
    return 0.0;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InputError("shape mismatch in comparison");
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace ergo
