#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "ergo/linalg/dense.hpp"

namespace ergo {

/// Row-sum / nonnegativity tolerance for stochastic input.
inline constexpr double kStochasticTolerance = 1e-10;

/// Nonnegative with an entrywise-positive power. Decided exactly by boolean
/// powering to the Wielandt exponent (n-1)^2 + 1.
inline bool is_primitive(const Matrix& a) {
    require_square(a);
    if ((a.array() < 0.0).any()) return false;
    const auto n = a.rows();
    Matrix pattern = (a.array() > 0.0).cast<double>().matrix();
    Matrix result = Matrix::Identity(n, n);
    long long exp = (n - 1) * (n - 1) + 1;
    auto booleanize = [](Matrix& m) { m = (m.array() > 0.0).cast<double>().matrix(); };
    while (exp > 0) {
        if (exp & 1) {
            result = result * pattern;
            booleanize(result);
        }
        exp >>= 1;
        if (exp > 0) {
            pattern = pattern * pattern;
            booleanize(pattern);
        }
    }
    return (result.array() > 0.0).all();
}

/// A point of the probability simplex.
class Distribution {
public:
    explicit Distribution(Vector entries, double tolerance = kStochasticTolerance)
        : p_(std::move(entries)) {
        require_finite(p_, "distribution");
        if (p_.size() == 0) throw InputError("distribution must be nonempty");
        if ((p_.array() < -tolerance).any())
            throw PreconditionError("distribution has negative entries");
        p_ = p_.cwiseMax(0.0);
        const double s = p_.sum();
        if (std::abs(s - 1.0) > tolerance)
            throw PreconditionError("distribution entries must sum to 1");
        p_ /= s;
    }

    const Vector& vector() const noexcept { return p_; }
    Eigen::Index size() const noexcept { return p_.size(); }
    double operator[](Eigen::Index i) const { return p_(i); }

private:
    Vector p_;
};

/// Validated row-stochastic square matrix with cached structural flags.
///
/// Entries down to -tolerance are clamped to zero and rows whose sums deviate
/// from one by at most the tolerance are renormalized; anything worse is
/// rejected rather than repaired.
class StochasticMatrix {
public:
    explicit StochasticMatrix(Matrix a, double tolerance = kStochasticTolerance)
        : a_(std::move(a)), tol_(tolerance) {
        require_finite(a_);
        require_square(a_, "stochastic matrix");
        if ((a_.array() < -tol_).any())
            throw PreconditionError("stochastic matrix has negative entries");
        a_ = a_.cwiseMax(0.0);
        for (Eigen::Index i = 0; i < a_.rows(); ++i) {
            const double s = a_.row(i).sum();
            if (std::abs(s - 1.0) > tol_)
                throw PreconditionError("row " + std::to_string(i) + " of stochastic matrix sums to " +
                                        std::to_string(s));
            a_.row(i) /= s;
        }
        const Vector col = a_.colwise().sum().transpose();
        doubly_ = ((col.array() - 1.0).abs() <= tol_).all();
        positive_diag_ = (a_.diagonal().array() > 0.0).all();
        primitive_ = is_primitive(a_);
    }

    const Matrix& matrix() const noexcept { return a_; }
    Eigen::Index size() const noexcept { return a_.rows(); }
    double tolerance() const noexcept { return tol_; }
    bool primitive() const noexcept { return primitive_; }
    bool doubly_stochastic() const noexcept { return doubly_; }
    bool positive_diagonal() const noexcept { return positive_diag_; }

    void require_primitive(const char* op) const {
        if (!primitive_)
            throw PreconditionError(std::string(op) +
                                    ": matrix is not primitive (stationary distribution not unique)");
    }

private:
    Matrix a_;
    double tol_;
    bool primitive_ = false;
    bool doubly_ = false;
    bool positive_diag_ = false;
};

struct DominantPair {
    Vector right;       // 1_n
    Distribution left;  // stationary distribution pi
    double residual;    // |A^T pi - pi|_1
};

/// Dominant right/left eigenvectors of a primitive stochastic matrix.
///
/// The stationary distribution is obtained from the bordered linear system
/// (A^T - I) pi = 0, 1^T pi = 1 and then polished by power steps pi <- A^T pi
/// until the residual reaches 1e-12.
inline DominantPair dominant_pair(const StochasticMatrix& a) {
    a.require_primitive("dominant_pair");
    const auto n = a.size();
    const Matrix& m = a.matrix();
    Matrix sys = m.transpose() - Matrix::Identity(n, n);
    sys.row(n - 1).setOnes();
    Vector rhs = Vector::Zero(n);
    rhs(n - 1) = 1.0;
    Vector pi = sys.fullPivLu().solve(rhs);
    pi = pi.cwiseMax(0.0);
    pi /= pi.sum();

    constexpr double kTarget = 1e-12;
    double res = (m.transpose() * pi - pi).lpNorm<1>();
    for (int it = 0; it < 10000 && res > kTarget; ++it) {
        pi = m.transpose() * pi;
        pi = pi.cwiseMax(0.0);
        pi /= pi.sum();
        res = (m.transpose() * pi - pi).lpNorm<1>();
    }
    if (!(res <= kTarget))
        throw NumericalError("dominant_pair: stationary residual " + std::to_string(res) +
                             " above 1e-12");
    return DominantPair{Vector::Ones(n), Distribution(pi), res};
}

}  // namespace ergo
