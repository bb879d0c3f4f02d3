#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "ergo/ergodicity.hpp"
#include "ergo/linalg/dense.hpp"
#include "ergo/linalg/eigen.hpp"
#include "ergo/linalg/projectors.hpp"
#include "ergo/linalg/stochastic.hpp"
#include "ergo/seminorm.hpp"
#include "ergo/weight.hpp"

namespace ergo {

/// Eigenvalues within this distance of 1 count as the unit eigenvalue.
inline constexpr double kUnitEigenvalueTolerance = 1e-8;

struct SpectralReport {
    double rho_ess = 0.0;
    std::vector<double> eigen_moduli;  // descending
    bool diagonalizable = false;
    bool stochastic = false;
    Vector dominant_v;
    /// rho(P_v A) and its gap to rho_ess (NaN when v is unavailable).
    double projected_radius = std::nan("");
    double cross_check_residual = std::nan("");
};

inline bool looks_row_stochastic(const Matrix& a, double tol = kStochasticTolerance) {
    if (a.rows() != a.cols() || (a.array() < -tol).any()) return false;
    return ((a.rowwise().sum().array() - 1.0).abs() <= tol).all();
}

namespace detail {

/// Real eigenvector for a simple real dominant eigenvalue, or an empty vector.
inline Vector dominant_real_vector(const Matrix& a, const EigenDecomposition& ed) {
    const auto n = a.rows();
    if (n == 0) return {};
    const auto lam = ed.eigenvalues[0];
    const double scale = std::max(1.0, ed.moduli[0]);
    if (std::abs(lam.imag()) > kRealSpectrumTolerance * scale) return {};
    if (n > 1 && std::abs(ed.moduli[0] - ed.moduli[1]) <= 1e-12 * scale) return {};
    Eigen::FullPivLU<Matrix> lu(a - lam.real() * Matrix::Identity(n, n));
    lu.setThreshold(1e-9);
    const Matrix ker = lu.kernel();
    if (ker.cols() != 1) return {};
    Vector v = ker.col(0);
    Eigen::Index k;
    v.cwiseAbs().maxCoeff(&k);
    return v / v(k);
}

}  // namespace detail

/// Essential spectral radius. For row-stochastic A this is the largest
/// modulus over spec(A) \ {1} (zero when every eigenvalue is 1); otherwise the
/// second-largest eigenvalue modulus. When a simple real dominant eigenvector
/// v exists the value is compared against rho(P_v A).
inline SpectralReport ess_spectral_radius(const Matrix& a) {
    require_finite(a);
    require_square(a);
    const auto ed = eigendecompose(a);
    SpectralReport out;
    out.eigen_moduli = ed.moduli;
    out.diagonalizable = ed.diagonalizable;
    out.stochastic = looks_row_stochastic(a);
    const auto n = a.rows();
    if (out.stochastic) {
        for (const auto& z : ed.eigenvalues)
            if (std::abs(z - std::complex<double>(1.0, 0.0)) > kUnitEigenvalueTolerance)
                out.rho_ess = std::max(out.rho_ess, std::abs(z));
        out.dominant_v = Vector::Ones(n);
        if (!is_primitive(a)) return out;
    } else {
        out.rho_ess = n > 1 ? ed.moduli[1] : 0.0;
        out.dominant_v = detail::dominant_real_vector(a, ed);
        if (out.dominant_v.size() == 0) return out;
    }
    const Matrix pa = orthogonal_projector(out.dominant_v) * a;
    const auto pe = eigendecompose(pa);
    out.projected_radius = pe.moduli.empty() ? 0.0 : pe.moduli[0];
    out.cross_check_residual = std::abs(out.projected_radius - out.rho_ess);
    if (out.cross_check_residual > 1e-6 * std::max(1.0, ed.moduli[0]))
        throw NumericalError("ess_spectral_radius: rho(P_v A) = " + std::to_string(out.projected_radius) +
                             " disagrees with " + std::to_string(out.rho_ess));
    return out;
}

enum class WeightRegime { Exact, SchurSurrogate };

inline std::string to_string(WeightRegime r) {
    return r == WeightRegime::Exact ? "exact" : "schur-surrogate";
}

struct OptimalWeight {
    double epsilon = 0.0;
    SeminormWeight weight = SeminormWeight::agreement(1);
    double certified_value = 0.0;  // |||A|||_{inf,R}, computed exactly
    double rho_ess = 0.0;
    WeightRegime regime = WeightRegime::Exact;
    /// A priori bound from the construction: rho_ess in the exact regime,
    /// max diagonal-block norm + delta |N|_inf otherwise.
    double bound = 0.0;
    double delta = 1.0;  // off-diagonal scaling used in the surrogate regime
    bool within_epsilon = false;
};

/// Near-optimal weight R = S P_v for the l_inf seminorm, where v is the
/// dominant eigenvector and U spans v^perp.
///
/// When B = U^T A U is real diagonalizable, B = V diag(lambda) V^{-1} and
/// S stacks v^T/|v| over V^{-1} U^T, which makes |||A|||_{inf,R} = rho_ess
/// exactly. Otherwise B = Q T Q^T (real Schur) and S stacks v^T/|v| over
/// D Q^T U^T, with D balancing each 2x2 block and damping the strictly upper
/// part by powers of delta; delta is chosen from epsilon and clipped so that
/// cond(S) stays below the factored-weight limit.
inline OptimalWeight optimal_weight(const Matrix& a, double epsilon = 1e-3) {
    require_finite(a);
    require_square(a);
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InputError("optimal_weight: epsilon must be positive");
    const auto n = a.rows();
    if (n < 2) throw InputError("optimal_weight: need n >= 2");
    const SpectralReport spec = ess_spectral_radius(a);
    if (spec.dominant_v.size() == 0)
        throw PreconditionError("optimal_weight: no simple real dominant eigenvector");
    if (spec.stochastic && !is_primitive(a)) throw PreconditionError("optimal_weight: matrix is not primitive");
    const Vector v = spec.dominant_v;
    const Matrix u = orthogonal_complement(v);
    const Matrix b = u.transpose() * a * u;
    const auto m = n - 1;

    OptimalWeight out;
    out.epsilon = epsilon;
    out.rho_ess = spec.rho_ess;

    auto assemble = [&](const Matrix& t) {
        Matrix s(n, n);
        s.row(0) = v.transpose() / v.norm();
        s.bottomRows(m) = t * u.transpose();
        return s;
    };

    const auto be = eigendecompose(b);
    if (be.real_spectrum && be.diagonalizable) {
        out.regime = WeightRegime::Exact;
        out.bound = spec.rho_ess;
        out.weight = SeminormWeight::factored(assemble(be.eigenvectors.inverse()), v);
    } else {
        out.regime = WeightRegime::SchurSurrogate;
        const Matrix& q = be.schur_vectors;
        const Matrix& ts = be.schur_form;
        // Block structure of the quasi-triangular factor.
        std::vector<Eigen::Index> block_of(static_cast<size_t>(m));
        std::vector<double> balance(static_cast<size_t>(m), 1.0);
        Eigen::Index nb = 0;
        for (Eigen::Index i = 0; i < m;) {
            if (i + 1 < m && ts(i + 1, i) != 0.0) {
                block_of[static_cast<size_t>(i)] = block_of[static_cast<size_t>(i + 1)] = nb;
                const double bij = ts(i, i + 1), cji = ts(i + 1, i);
                if (bij != 0.0) balance[static_cast<size_t>(i)] = std::sqrt(std::abs(cji / bij));
                i += 2;
            } else {
                block_of[static_cast<size_t>(i)] = nb;
                i += 1;
            }
            ++nb;
        }
        auto scaling = [&](double delta) {
            Vector d(m);
            for (Eigen::Index i = 0; i < m; ++i)
                d(i) = balance[static_cast<size_t>(i)] *
                       std::pow(delta, -static_cast<double>(block_of[static_cast<size_t>(i)]));
            return d;
        };
        // Strictly block-upper part N and the norm of the block diagonal.
        const Vector d1 = scaling(1.0);
        const Matrix tb = d1.asDiagonal() * ts * d1.cwiseInverse().asDiagonal();
        Matrix diag_part = Matrix::Zero(m, m), upper = Matrix::Zero(m, m);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j) {
                const auto bi = block_of[static_cast<size_t>(i)], bj = block_of[static_cast<size_t>(j)];
                (bi == bj ? diag_part : upper)(i, j) = bi <= bj ? tb(i, j) : 0.0;
            }
        const double nrm = max_abs_row_sum(upper);
        double delta = nrm > 0.0 ? std::min(1.0, epsilon / nrm) : 1.0;
        Matrix s = assemble(scaling(delta).asDiagonal() * q.transpose());
        while (!(condition_number(s) < 0.5 * kFactorCondition) && delta < 1.0) {
            delta = std::min(1.0, 2.0 * delta);
            s = assemble(scaling(delta).asDiagonal() * q.transpose());
        }
        out.delta = delta;
        out.bound = max_abs_row_sum(diag_part) + delta * nrm;
        out.weight = SeminormWeight::factored(s, v);
    }
    out.certified_value = induced_seminorm(a, out.weight, PNorm::Inf).value;
    out.within_epsilon = out.certified_value <= out.rho_ess + epsilon + 1e-8;
    return out;
}

struct SymmetricIdentity {
    double value = 0.0;    // |P_v A|_2 = |||A|||_{2,P_v}
    double rho_ess = 0.0;
    double residual = 0.0;
};

/// For primitive symmetric A with Perron vector v, |||A|||_{2,P_v} = |P_v A|_2
/// equals the essential spectral radius; a gap above 1e-9 is an error.
inline SymmetricIdentity symmetric_l2_identity(const Matrix& a) {
    require_finite(a);
    require_square(a);
    if (max_abs_row_sum(a - a.transpose()) > 1e-12) throw PreconditionError("symmetric_l2_identity: matrix is not symmetric");
    if (!is_primitive(a)) throw PreconditionError("symmetric_l2_identity: matrix is not primitive");
    const auto n = a.rows();
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.transpose()));
    Vector v = es.eigenvectors().col(n - 1);
    if (v.sum() < 0.0) v = -v;
    SymmetricIdentity out;
    out.value = spectral_norm(orthogonal_projector(v) * a);
    const auto& ev = es.eigenvalues();
    out.rho_ess = 0.0;
    if (looks_row_stochastic(a)) {
        out.rho_ess = ess_spectral_radius(a).rho_ess;
    } else {
        for (Eigen::Index i = 0; i + 1 < n; ++i) out.rho_ess = std::max(out.rho_ess, std::abs(ev(i)));
    }
    out.residual = std::abs(out.value - out.rho_ess);
    if (out.residual > 1e-9)
        throw NumericalError("symmetric_l2_identity: |P_v A|_2 and rho_ess differ by " + std::to_string(out.residual));
    return out;
}

struct SubunitCheck {
    double tau2 = 0.0;
    bool subunit = false;
};

/// tau_2(1, A) for primitive doubly stochastic A with positive diagonal.
inline SubunitCheck tau2_subunit_check(const StochasticMatrix& s) {
    if (!s.primitive()) throw PreconditionError("tau2_subunit_check: matrix is not primitive");
    if (!s.doubly_stochastic()) throw PreconditionError("tau2_subunit_check: matrix is not doubly stochastic");
    if (!s.positive_diagonal()) throw PreconditionError("tau2_subunit_check: diagonal has zero entries");
    SubunitCheck out;
    out.tau2 = tau(Vector::Ones(s.size()), s.matrix(), PNorm::Two).value;
    out.subunit = out.tau2 < 1.0;
    return out;
}

}  // namespace ergo
