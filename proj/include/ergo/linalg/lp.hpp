#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "ergo/linalg/dense.hpp"

namespace ergo::detail {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    Vector x;
};

/// Dense tableau simplex for   maximize c^T x  s.t.  G x <= h,  x >= 0.
///
/// Bland's rule on ties; a single auxiliary column drives phase one when some
/// h_i < 0. Meant for the few-hundred-variable programs that arise here.
class Simplex {
public:
    Simplex(const Matrix& g, const Vector& h, const Vector& c)
        : m_(static_cast<int>(h.size())), n_(static_cast<int>(c.size())),
          basis_(static_cast<size_t>(m_)), nonbasis_(static_cast<size_t>(n_ + 1)),
          t_(m_ + 2, n_ + 2) {
        t_.setZero();
        for (int i = 0; i < m_; ++i) {
            for (int j = 0; j < n_; ++j) t_(i, j) = g(i, j);
            basis_[static_cast<size_t>(i)] = n_ + i;
            t_(i, n_) = -1.0;
            t_(i, n_ + 1) = h(i);
        }
        for (int j = 0; j < n_; ++j) {
            nonbasis_[static_cast<size_t>(j)] = j;
            t_(m_, j) = -c(j);
        }
        nonbasis_[static_cast<size_t>(n_)] = -1;
        t_(m_ + 1, n_) = 1.0;
    }

    LpSolution solve() {
        LpSolution out;
        int r = 0;
        for (int i = 1; i < m_; ++i)
            if (t_(i, n_ + 1) < t_(r, n_ + 1)) r = i;
        if (m_ > 0 && t_(r, n_ + 1) < -kEps) {
            pivot(r, n_);
            if (!run(1) || t_(m_ + 1, n_ + 1) < -kEps) {
                out.status = LpStatus::Infeasible;
                return out;
            }
            for (int i = 0; i < m_; ++i)
                if (basis_[static_cast<size_t>(i)] == -1) {
                    int s = -1;
                    for (int j = 0; j <= n_; ++j)
                        if (s == -1 || t_(i, j) < t_(i, s) ||
                            (t_(i, j) == t_(i, s) && nb(j) < nb(s)))
                            s = j;
                    pivot(i, s);
                }
        }
        if (!run(2)) {
            out.status = LpStatus::Unbounded;
            return out;
        }
        out.status = LpStatus::Optimal;
        out.x = Vector::Zero(n_);
        for (int i = 0; i < m_; ++i)
            if (basis_[static_cast<size_t>(i)] < n_) out.x(basis_[static_cast<size_t>(i)]) = t_(i, n_ + 1);
        out.objective = t_(m_, n_ + 1);
        return out;
    }

private:
    static constexpr double kEps = 1e-12;

    int nb(int j) const { return nonbasis_[static_cast<size_t>(j)]; }

    void pivot(int r, int s) {
        const double inv = 1.0 / t_(r, s);
        for (int i = 0; i < m_ + 2; ++i)
            if (i != r)
                for (int j = 0; j < n_ + 2; ++j)
                    if (j != s) t_(i, j) -= t_(r, j) * t_(i, s) * inv;
        for (int j = 0; j < n_ + 2; ++j)
            if (j != s) t_(r, j) *= inv;
        for (int i = 0; i < m_ + 2; ++i)
            if (i != r) t_(i, s) *= -inv;
        t_(r, s) = inv;
        std::swap(basis_[static_cast<size_t>(r)], nonbasis_[static_cast<size_t>(s)]);
    }

    bool run(int phase) {
        const int row = phase == 1 ? m_ + 1 : m_;
        for (int guard = 0; guard < 100000; ++guard) {
            int s = -1;
            for (int j = 0; j <= n_; ++j) {
                if (phase == 2 && nb(j) == -1) continue;
                if (s == -1 || t_(row, j) < t_(row, s) || (t_(row, j) == t_(row, s) && nb(j) < nb(s)))
                    s = j;
            }
            if (t_(row, s) > -kEps) return true;
            int r = -1;
            for (int i = 0; i < m_; ++i) {
                if (t_(i, s) < kEps) continue;
                if (r == -1) {
                    r = i;
                    continue;
                }
                const double lhs = t_(i, n_ + 1) / t_(i, s);
                const double rhs = t_(r, n_ + 1) / t_(r, s);
                if (lhs < rhs || (lhs == rhs && basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(r)]))
                    r = i;
            }
            if (r == -1) return false;
            pivot(r, s);
        }
        throw NumericalError("simplex: iteration limit reached");
    }

    int m_, n_;
    std::vector<int> basis_, nonbasis_;
    Matrix t_;
};

/// min over c in R^n of |A - v c^T|_q for q in {1, inf}, as a linear program.
/// Returns the optimal c.
inline Vector best_deflation_lp(const Vector& v, const Matrix& a, PNorm q) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    // Variables: c+ (n), c- (n), e (m*n), t (1); maximize -t.
    const int nv = 2 * n + m * n + 1;
    const int ne = 2 * m * n + (q == PNorm::Inf ? m : n);
    Matrix g = Matrix::Zero(ne, nv);
    Vector h = Vector::Zero(ne);
    auto e_idx = [&](int i, int k) { return 2 * n + i * n + k; };
    int row = 0;
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < n; ++k) {
            // A_ik - v_i c_k <= e_ik
            g(row, k) = -v(i);
            g(row, n + k) = v(i);
            g(row, e_idx(i, k)) = -1.0;
            h(row++) = -a(i, k);
            // v_i c_k - A_ik <= e_ik
            g(row, k) = v(i);
            g(row, n + k) = -v(i);
            g(row, e_idx(i, k)) = -1.0;
            h(row++) = a(i, k);
        }
    if (q == PNorm::Inf) {
        for (int i = 0; i < m; ++i) {
            for (int k = 0; k < n; ++k) g(row, e_idx(i, k)) = 1.0;
            g(row++, nv - 1) = -1.0;
        }
    } else {
        for (int k = 0; k < n; ++k) {
            for (int i = 0; i < m; ++i) g(row, e_idx(i, k)) = 1.0;
            g(row++, nv - 1) = -1.0;
        }
    }
    Vector obj = Vector::Zero(nv);
    obj(nv - 1) = -1.0;
    const LpSolution sol = Simplex(g, h, obj).solve();
    if (sol.status != LpStatus::Optimal) throw NumericalError("deflation LP did not reach an optimum");
    return sol.x.head(n) - sol.x.segment(n, n);
}

}  // namespace ergo::detail
