#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "ergo/linalg/dense.hpp"
#include "ergo/linalg/eigen.hpp"
#include "ergo/linalg/projectors.hpp"

namespace ergo {

/// Factor matrices with condition number at or above this are rejected.
inline constexpr double kFactorCondition = 1e12;

enum class WeightKind { Orthogonal, Oblique, Agreement, Incidence, Factored };

inline std::string to_string(WeightKind k) {
    switch (k) {
        case WeightKind::Orthogonal: return "orthogonal";
        case WeightKind::Oblique: return "oblique";
        case WeightKind::Agreement: return "agreement";
        case WeightKind::Incidence: return "incidence";
        case WeightKind::Factored: return "factored";
    }
    return "?";
}

/// Weight matrix R of a seminorm x -> |R x|_p, together with its
/// one-dimensional kernel.
class SeminormWeight {
public:
    /// R = P_v, kernel <v>.
    static SeminormWeight orthogonal(Vector v) {
        SeminormWeight w(WeightKind::Orthogonal);
        w.r_ = orthogonal_projector(v);
        w.kernel_ = v;
        w.anchor_ = std::move(v);
        return w;
    }

    /// R = Q_w = I - 1 w^T, kernel <1>.
    static SeminormWeight oblique(Vector anchor) {
        SeminormWeight w(WeightKind::Oblique);
        w.r_ = oblique_projector(anchor);
        w.kernel_ = Vector::Ones(anchor.size());
        w.anchor_ = std::move(anchor);
        return w;
    }

    /// R = Pi_n, kernel <1>.
    static SeminormWeight agreement(Eigen::Index n) {
        SeminormWeight w(WeightKind::Agreement);
        w.r_ = agreement_projector(n);
        w.kernel_ = Vector::Ones(n);
        w.anchor_ = w.kernel_;
        return w;
    }

    /// R = C_n^T (n(n-1) x n), kernel <1>.
    static SeminormWeight incidence(Eigen::Index n) {
        SeminormWeight w(WeightKind::Incidence);
        w.r_ = incidence_complete(n).transpose();
        w.kernel_ = Vector::Ones(n);
        w.anchor_ = w.kernel_;
        return w;
    }

    /// R = S P_v with S nonsingular, kernel <v>.
    static SeminormWeight factored(Matrix s, Vector v) {
        require_finite(s, "weight factor");
        require_square(s, "weight factor");
        if (s.rows() != v.size()) throw InputError("factored weight: S and v dimensions differ");
        const double cond = condition_number(s);
        if (!(cond < kFactorCondition))
            throw PreconditionError("factored weight: S is singular or too ill-conditioned (cond " +
                                    std::to_string(cond) + ")");
        SeminormWeight w(WeightKind::Factored);
        w.r_ = s * orthogonal_projector(v);
        w.kernel_ = v;
        w.anchor_ = std::move(v);
        w.factor_ = std::move(s);
        return w;
    }

    WeightKind kind() const noexcept { return kind_; }
    const Matrix& matrix() const noexcept { return r_; }
    /// Spanning vector of ker R.
    const Vector& kernel() const noexcept { return kernel_; }
    /// v for orthogonal/factored, w for oblique, 1 otherwise.
    const Vector& anchor() const noexcept { return anchor_; }
    const std::optional<Matrix>& factor() const noexcept { return factor_; }
    Eigen::Index dimension() const noexcept { return r_.cols(); }
    bool square() const noexcept { return r_.rows() == r_.cols(); }

    /// For square R of rank n-1, a normal u with range(R) = <u>^perp.
    Vector range_normal() const {
        switch (kind_) {
            case WeightKind::Orthogonal:
            case WeightKind::Agreement: return kernel_;
            case WeightKind::Oblique: return anchor_;
            case WeightKind::Factored: return factor_->transpose().fullPivLu().solve(anchor_);
            case WeightKind::Incidence: break;
        }
        throw InputError("range_normal: weight is not square");
    }

private:
    explicit SeminormWeight(WeightKind k) : kind_(k) {}

    WeightKind kind_;
    Matrix r_;
    Vector kernel_;
    Vector anchor_;
    std::optional<Matrix> factor_;
};

/// |R x|_p.
inline double vector_seminorm(const Vector& x, const SeminormWeight& w, PNorm p) {
    if (x.size() != w.dimension()) throw InputError("vector_seminorm: dimension mismatch");
    return vector_pnorm(w.matrix() * x, p);
}

/// |A k - (k^T A k) k|_2 for the normalized kernel vector k.
inline double kernel_invariance_residual(const Matrix& a, const SeminormWeight& w) {
    if (a.rows() != a.cols() || a.cols() != w.dimension())
        throw InputError("kernel invariance: A must be square with the weight's dimension");
    const Vector k = w.kernel().normalized();
    const Vector ak = a * k;
    return (ak - k.dot(ak) * k).norm();
}

inline bool kernel_is_invariant(const Matrix& a, const SeminormWeight& w) {
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    return kernel_invariance_residual(a, w) <= 1e-8 * scale;
}

}  // namespace ergo
