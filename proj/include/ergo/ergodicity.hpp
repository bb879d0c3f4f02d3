#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "ergo/linalg/dense.hpp"
#include "ergo/linalg/projectors.hpp"
#include "ergo/linalg/restricted.hpp"
#include "ergo/linalg/stochastic.hpp"

namespace ergo {

enum class ErgodicityRoute {
    ProjectorForm,     // sigma_max(P_v A), p = 2
    PairwiseForm,      // max_{i,j} |v_j A_i - v_i A_j|_1 / (|v_i| + |v_j|), p = 1
    MedianForm,        // max_k min_t |A e_k - t v|_1, p = inf
    ObliqueForm,       // norm of A restricted to w^perp, w stationary
    DobrushinHalfsum,  // 1/2 max_{i,j} sum_k |A_ik - A_jk|
    DobrushinMinsum,   // 1 - min_{i,j} sum_k min(A_ik, A_jk)
};

inline std::string to_string(ErgodicityRoute r) {
    switch (r) {
        case ErgodicityRoute::ProjectorForm: return "projector-form";
        case ErgodicityRoute::PairwiseForm: return "pairwise-form";
        case ErgodicityRoute::MedianForm: return "median-form";
        case ErgodicityRoute::ObliqueForm: return "oblique-form";
        case ErgodicityRoute::DobrushinHalfsum: return "dobrushin-halfsum";
        case ErgodicityRoute::DobrushinMinsum: return "dobrushin-minsum";
    }
    return "?";
}

struct ErgodicityResult {
    double value = 0.0;
    PNorm p = PNorm::One;
    ErgodicityRoute route = ErgodicityRoute::ProjectorForm;
    Vector anchor;
};

/// l_p ergodicity coefficient
///   tau_p(v, A) = max { |A^T x|_p : |x|_p <= 1, x ⟂ v },   A is m x n, v in R^m.
///
/// Each p has its own exact closed form (see ErgodicityRoute). Only the p = 2
/// value coincides with |P_v A|_2; for p in {1, inf} the projector expression
/// |P_v A|_q is an upper bound (see projector_form_norm).
inline ErgodicityResult tau(const Vector& v, const Matrix& a, PNorm p) {
    require_finite(a);
    require_finite(v, "anchor vector");
    if (v.size() != a.rows()) throw InputError("tau: anchor length must equal the row count of A");
    if (v.squaredNorm() == 0.0) throw InputError("tau: zero anchor vector");
    ErgodicityResult r;
    r.p = p;
    r.anchor = v;
    switch (p) {
        case PNorm::Two:
            r.route = ErgodicityRoute::ProjectorForm;
            r.value = spectral_norm(orthogonal_projector(v) * a);
            break;
        case PNorm::One:
            r.route = ErgodicityRoute::PairwiseForm;
            r.value = restricted_norm(a.transpose(), v, PNorm::One);
            break;
        case PNorm::Inf:
            r.route = ErgodicityRoute::MedianForm;
            r.value = restricted_norm(a.transpose(), v, PNorm::Inf);
            break;
    }
    return r;
}

/// |P_v A|_q, i.e. |A - v c^T|_q at c = A^T v / |v|^2. Always >= tau_p(v, A)
/// with 1/p + 1/q = 1; equal when p = q = 2.
inline double projector_form_norm(const Vector& v, const Matrix& a, PNorm q) {
    if (v.size() != a.rows()) throw InputError("projector_form_norm: dimension mismatch");
    return induced_pnorm(orthogonal_projector(v) * a, q);
}

struct DobrushinFormulas {
    double halfsum;
    double minsum;
};

inline DobrushinFormulas dobrushin_formulas(const StochasticMatrix& s) {
    const Matrix& a = s.matrix();
    const auto n = a.rows();
    double half = 0.0;
    double overlap = 1.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
            half = std::max(half, 0.5 * (a.row(i) - a.row(j)).lpNorm<1>());
            overlap = std::min(overlap, a.row(i).cwiseMin(a.row(j)).sum());
        }
    return {half, 1.0 - overlap};
}

/// Dobrushin coefficient tau_1(A) of a row-stochastic matrix. Both classical
/// formulas are evaluated; disagreement beyond 1e-12 is an error.
inline ErgodicityResult dobrushin(const StochasticMatrix& s) {
    const auto f = dobrushin_formulas(s);
    if (std::abs(f.halfsum - f.minsum) > 1e-12)
        throw NumericalError("dobrushin: halfsum " + std::to_string(f.halfsum) + " and minsum " +
                             std::to_string(f.minsum) + " disagree");
    return {f.halfsum, PNorm::One, ErgodicityRoute::DobrushinHalfsum, Vector::Ones(s.size())};
}

/// tau_p(w, A^T) = max { |A x|_p : |x|_p <= 1, x ⟂ w } for the stationary w.
/// Equals the Q_w-weighted induced seminorm of A.
inline ErgodicityResult tau_oblique(const StochasticMatrix& s, PNorm p) {
    const auto pair = dominant_pair(s);
    const Vector& w = pair.left.vector();
    ErgodicityResult r;
    r.p = p;
    r.route = ErgodicityRoute::ObliqueForm;
    r.anchor = w;
    r.value = restricted_norm(s.matrix(), w, p);
    return r;
}

/// |A - 1 w^T|_p with w stationary. An upper bound on tau_oblique(A, p),
/// attained for doubly stochastic A when p = 2.
inline double oblique_deflation_norm(const StochasticMatrix& s, PNorm p) {
    const auto pair = dominant_pair(s);
    const auto n = s.size();
    return induced_pnorm(s.matrix() - Vector::Ones(n) * pair.left.vector().transpose(), p);
}

}  // namespace ergo
