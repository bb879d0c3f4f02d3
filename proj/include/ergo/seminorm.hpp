#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "ergo/linalg/dense.hpp"
#include "ergo/linalg/eigen.hpp"
#include "ergo/linalg/lp.hpp"
#include "ergo/linalg/projectors.hpp"
#include "ergo/linalg/restricted.hpp"
#include "ergo/oracle.hpp"
#include "ergo/weight.hpp"

namespace ergo {

/// Largest n for which the vertex-enumeration oracle is used as a route.
inline constexpr Eigen::Index kOracleRouteCap = 5;

enum class SeminormRoute {
    RangeRestricted,    // R A R^+ on range(R) = u^perp, square weights
    IncidenceRowGap,    // 1/2 max_{i,j} |A_i - A_j|_1, incidence weight, p = inf
    IncidenceAgreement, // |Pi A Pi|_2, incidence weight, p = 2
    Oracle,             // vertex enumeration
};

inline std::string to_string(SeminormRoute r) {
    switch (r) {
        case SeminormRoute::RangeRestricted: return "range-restricted";
        case SeminormRoute::IncidenceRowGap: return "incidence-rowgap";
        case SeminormRoute::IncidenceAgreement: return "incidence-agreement";
        case SeminormRoute::Oracle: return "oracle";
    }
    return "?";
}

struct SeminormResult {
    double value = 0.0;
    SeminormRoute route = SeminormRoute::RangeRestricted;
    double kernel_residual = 0.0;
};

/// Weighted induced seminorm
///   |||A|||_{p,R} = max { |R A x|_p : |R x|_p <= 1, x ⟂ ker R }.
///
/// For square R with range(R) = u^perp every feasible x is R^+ y with y in
/// u^perp, so the value is the norm of R A R^+ restricted to u^perp, which
/// restricted_norm evaluates exactly. A non-invariant kernel is handed to the
/// oracle for n <= 5 and rejected otherwise.
inline SeminormResult induced_seminorm(const Matrix& a, const SeminormWeight& w, PNorm p) {
    require_finite(a);
    if (a.rows() != a.cols() || a.cols() != w.dimension())
        throw InputError("induced_seminorm: A must be square with the weight's dimension");
    const auto n = w.dimension();
    SeminormResult out;
    out.kernel_residual = kernel_invariance_residual(a, w);

    auto via_oracle = [&](const char* why) {
        if (n > kOracleRouteCap)
            throw PreconditionError(std::string("induced_seminorm: ") + why + " and n exceeds the oracle cap");
        out.route = SeminormRoute::Oracle;
        out.value = oracle::oracle_weighted_seminorm(a, w, p).value;
        return out;
    };

    if (!kernel_is_invariant(a, w)) return via_oracle("kernel is not A-invariant");

    if (w.kind() == WeightKind::Incidence) {
        switch (p) {
            case PNorm::Inf: {
                double best = 0.0;
                for (Eigen::Index i = 0; i < n; ++i)
                    for (Eigen::Index j = i + 1; j < n; ++j)
                        best = std::max(best, (a.row(i) - a.row(j)).lpNorm<1>());
                out.route = SeminormRoute::IncidenceRowGap;
                out.value = 0.5 * best;
                return out;
            }
            case PNorm::Two: {
                const Matrix pi = agreement_projector(n);
                out.route = SeminormRoute::IncidenceAgreement;
                out.value = spectral_norm(pi * a * pi);
                return out;
            }
            case PNorm::One: return via_oracle("incidence weight with p = 1 has no closed form");
        }
    }

    const Matrix& r = w.matrix();
    out.route = SeminormRoute::RangeRestricted;
    out.value = restricted_norm(r * a * pseudo_inverse(r), w.range_normal(), p);
    return out;
}

/// Plain matrix-norm expressions for the square weights:
/// |P_v A|_p, |Q_w A|_p, |Pi A|_p and |R A R^+|_p for factored R. Each is an
/// upper bound on induced_seminorm and coincides with it for p = 2 on
/// orthogonal weights.
inline double seminorm_matrix_formula(const Matrix& a, const SeminormWeight& w, PNorm p) {
    require_finite(a);
    if (a.rows() != a.cols() || a.cols() != w.dimension())
        throw InputError("seminorm_matrix_formula: dimension mismatch");
    const Matrix& r = w.matrix();
    switch (w.kind()) {
        case WeightKind::Orthogonal:
        case WeightKind::Oblique:
        case WeightKind::Agreement: return induced_pnorm(r * a, p);
        case WeightKind::Factored: return induced_pnorm(r * a * pseudo_inverse(r), p);
        case WeightKind::Incidence: break;
    }
    throw InputError("seminorm_matrix_formula: incidence weight is not square");
}

struct DeflationResult {
    double value = 0.0;       // min_c |A - v c^T|_q
    Vector c_star;            // a minimizer
    PNorm q = PNorm::Two;
    double projection_value;  // |A - v c_p^T|_q at c_p = A^T v / |v|^2
    Vector c_projection;
};

/// Deflated induced norm Psi_q(v, A) = min_c |A - v c^T|_q.
///
/// q = 2: c = A^T v / |v|^2 is optimal.
/// q = 1: columns decouple; each c_k is a weighted median.
/// q = inf: solved as a linear program. The projection c is kept when it is
///          optimal to within 1e-12.
inline DeflationResult deflated_norm(const Vector& v, const Matrix& a, PNorm q) {
    require_finite(a);
    require_finite(v, "deflation vector");
    if (v.size() != a.rows()) throw InputError("deflated_norm: v length must equal the row count of A");
    if (v.squaredNorm() == 0.0) throw InputError("deflated_norm: zero vector");
    DeflationResult out;
    out.q = q;
    out.c_projection = a.transpose() * v / v.squaredNorm();
    out.projection_value = induced_pnorm(a - v * out.c_projection.transpose(), q);
    out.c_star = out.c_projection;
    out.value = out.projection_value;
    if (q == PNorm::Two) return out;

    Vector c(a.cols());
    if (q == PNorm::One) {
        for (Eigen::Index k = 0; k < a.cols(); ++k) c(k) = best_l1_multiple(a.col(k), v).t;
    } else {
        c = detail::best_deflation_lp(v, a, q);
    }
    const double val = induced_pnorm(a - v * c.transpose(), q);
    if (out.projection_value > val + 1e-12) {
        out.c_star = c;
        out.value = val;
    } else {
        out.value = std::min(out.value, val);
    }
    return out;
}

struct LmiResult {
    double b = 0.0;  // min { b : A^T P A <= b P }
    Vector kernel;   // spanning vector of ker P
};

/// Smallest b with A^T P A ⪯ b P, from the pencil (U^T A^T P A U, U^T P U)
/// on an orthonormal basis U of (ker P)^perp.
inline LmiResult lmi_l2(const Matrix& a, const Matrix& p) {
    require_finite(a);
    require_finite(p, "P");
    require_square(a);
    require_square(p, "P");
    if (a.rows() != p.rows()) throw InputError("lmi_l2: A and P dimensions differ");
    const auto n = p.rows();
    if (max_abs_diff(p, p.transpose()) > 1e-10 * std::max(1.0, p.cwiseAbs().maxCoeff()))
        throw PreconditionError("lmi_l2: P is not symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (p + p.transpose()));
    const Vector& ev = es.eigenvalues();
    const double top = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    if (ev(0) < -1e-10 * top) throw PreconditionError("lmi_l2: P is not positive semidefinite");
    const double zero_tol = 1e-10 * top;
    const auto kernel_dim = (ev.array() <= zero_tol).count();
    if (kernel_dim != 1) throw PreconditionError("lmi_l2: kernel of P is not one-dimensional");
    LmiResult out;
    out.kernel = es.eigenvectors().col(0);
    const Vector ak = a * out.kernel;
    if ((ak - out.kernel.dot(ak) * out.kernel).norm() > 1e-8 * std::max(1.0, a.cwiseAbs().maxCoeff()))
        throw PreconditionError("lmi_l2: kernel of P is not A-invariant");
    if (n == 1) return out;
    const Matrix u = orthogonal_complement(out.kernel);
    const Matrix lhs = u.transpose() * a.transpose() * p * a * u;
    const Matrix rhs = u.transpose() * p * u;
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(0.5 * (lhs + lhs.transpose()), 0.5 * (rhs + rhs.transpose()),
                                                       Eigen::EigenvaluesOnly);
    if (ges.info() != Eigen::Success) throw NumericalError("lmi_l2: generalized eigensolver failed");
    out.b = std::max(0.0, ges.eigenvalues().maxCoeff());
    return out;
}

/// Whether b P - A^T P A is positive semidefinite (within 1e-12 relative).
inline bool lmi_feasible(const Matrix& a, const Matrix& p, double b) {
    const Matrix g = b * p - a.transpose() * p * a;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (g + g.transpose()), Eigen::EigenvaluesOnly);
    const double scale = std::max({1.0, std::abs(b), p.cwiseAbs().maxCoeff()});
    return es.eigenvalues().minCoeff() >= -1e-12 * scale;
}

}  // namespace ergo
