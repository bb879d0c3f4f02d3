#pragma once

// Brute-force evaluators that work from the defining maximization or
// minimization problems directly. They share no closed form with the rest of
// the library and exist to validate it at desk scale.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "ergo/linalg/dense.hpp"
#include "ergo/linalg/eigen.hpp"
#include "ergo/linalg/projectors.hpp"
#include "ergo/weight.hpp"

namespace ergo::oracle {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024ULL;

struct OracleResult {
    double value = 0.0;
    bool exact = false;
    Vector witness;  // maximizer found
    std::size_t samples_used = 0;
};

struct OracleOptions {
    Eigen::Index cap = 6;            // exact-mode size limit
    std::size_t samples = 10000;     // random samples for p = 2
    std::size_t restarts = 8;        // iteration restarts for p = 2
    std::uint64_t seed = kDefaultSeed;
};

namespace detail {

inline Vector random_unit_in(const Vector& normal, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector x(normal.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = g(rng);
    x -= (normal.dot(x) / normal.squaredNorm()) * normal;
    const double n = x.norm();
    return n > 0.0 ? Vector(x / n) : x;
}

/// Calls f(subset) for every increasing index subset of size k from [0, n).
template <class F>
void for_each_subset(int n, int k, F&& f) {
    if (k < 0 || k > n) return;
    std::vector<int> idx(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
    while (true) {
        f(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + i) --i;
        if (i < 0) return;
        ++idx[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
}

}  // namespace detail

/// tau_p(v, A) = max { |A^T x|_p : |x|_p <= 1, x ⟂ v }, evaluated literally.
///
/// p = 1:   every intersection of a cross-polytope edge with v^perp.
/// p = inf: every intersection of a hypercube edge with v^perp.
/// p = 2:   random sampling of the unit sphere in v^perp plus power iteration
///          on P_v A A^T P_v from several starts (exact = false).
inline OracleResult oracle_tau(const Vector& v, const Matrix& a, PNorm p, const OracleOptions& opt = {}) {
    require_finite(a);
    require_finite(v);
    if (v.size() != a.rows()) throw InputError("oracle_tau: dimension mismatch");
    if (v.squaredNorm() == 0.0) throw InputError("oracle_tau: zero anchor");
    const auto m = v.size();
    const Matrix at = a.transpose();
    OracleResult out;
    out.witness = Vector::Zero(m);

    auto consider = [&](const Vector& x) {
        const double val = vector_pnorm(at * x, p);
        ++out.samples_used;
        if (val > out.value) {
            out.value = val;
            out.witness = x;
        }
    };

    if (p == PNorm::One) {
        if (m > opt.cap) throw PreconditionError("oracle_tau: size cap exceeded in exact mode");
        out.exact = true;
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = i + 1; j < m; ++j)
                for (double si : {1.0, -1.0})
                    for (double sj : {1.0, -1.0}) {
                        const double a0 = si * v(i), a1 = sj * v(j);
                        if (a0 == 0.0 && a1 == 0.0) {
                            Vector x = Vector::Zero(m);
                            x(i) = si;
                            consider(x);
                            x.setZero();
                            x(j) = sj;
                            consider(x);
                            continue;
                        }
                        if (a0 == a1) continue;
                        const double theta = a0 / (a0 - a1);
                        if (theta < 0.0 || theta > 1.0) continue;
                        Vector x = Vector::Zero(m);
                        x(i) = (1.0 - theta) * si;
                        x(j) = theta * sj;
                        consider(x);
                    }
        return out;
    }

    if (p == PNorm::Inf) {
        if (m > opt.cap) throw PreconditionError("oracle_tau: size cap exceeded in exact mode");
        out.exact = true;
        const std::uint64_t patterns = std::uint64_t{1} << (m - 1);
        for (Eigen::Index f = 0; f < m; ++f)
            for (std::uint64_t bits = 0; bits < patterns; ++bits) {
                Vector x = Vector::Zero(m);
                double partial = 0.0;
                int b = 0;
                for (Eigen::Index i = 0; i < m; ++i) {
                    if (i == f) continue;
                    x(i) = ((bits >> b++) & 1U) ? -1.0 : 1.0;
                    partial += v(i) * x(i);
                }
                if (v(f) != 0.0) {
                    const double xf = -partial / v(f);
                    if (std::abs(xf) > 1.0) continue;
                    x(f) = xf;
                    consider(x);
                } else if (partial == 0.0) {
                    for (double s : {1.0, -1.0}) {
                        x(f) = s;
                        consider(x);
                    }
                }
            }
        return out;
    }

    // p = 2
    std::mt19937_64 rng(opt.seed);
    if (m == 1) return out;
    for (std::size_t s = 0; s < opt.samples; ++s) consider(detail::random_unit_in(v, rng));
    const Matrix pv = orthogonal_projector(v);
    const Matrix op = pv * a * at * pv;
    for (std::size_t r = 0; r <= opt.restarts; ++r) {
        Vector x = r == 0 ? out.witness : detail::random_unit_in(v, rng);
        if (x.norm() == 0.0) continue;
        double prev = -1.0;
        for (int it = 0; it < 200000; ++it) {
            Vector y = op * x;
            const double ny = y.norm();
            if (ny == 0.0) break;
            x = pv * (y / ny);
            x.normalize();
            const double val = (at * x).norm();
            if (std::abs(val - prev) <= 1e-15 * std::max(1.0, val)) break;
            prev = val;
        }
        consider(x);
    }
    return out;
}

/// Weighted induced seminorm from its definition:
///   max { |R A x|_p : |R x|_p <= 1, x ⟂ ker R }.
///
/// p = inf: vertices of the feasible polytope solve n-1 active constraints
///          r_i^T x = ±1 together with kernel^T x = 0.
/// p = 1:   the ball is cut into cones by the hyperplanes r_i^T x = 0; its
///          vertices are the rays where n-2 of them meet inside ker^perp.
/// p = 2:   generalized Rayleigh (power) iteration on the pencil
///          ((RA)^T RA, R^T R) restricted to ker^perp (exact = false).
inline OracleResult oracle_weighted_seminorm(const Matrix& a, const SeminormWeight& w, PNorm p,
                                             OracleOptions opt = {.cap = 5}) {
    const Matrix& r = w.matrix();
    const Vector kappa = w.kernel().normalized();
    const auto n = w.dimension();
    if (a.rows() != n || a.cols() != n) throw InputError("oracle_weighted_seminorm: dimension mismatch");
    require_finite(a);
    const Matrix ra = r * a;
    const int k = static_cast<int>(r.rows());
    OracleResult out;
    out.witness = Vector::Zero(n);
    if (n == 1) {
        out.exact = p != PNorm::Two;
        return out;
    }

    auto consider = [&](const Vector& x) {
        const double val = vector_pnorm(ra * x, p);
        ++out.samples_used;
        if (val > out.value) {
            out.value = val;
            out.witness = x;
        }
    };
    bool any_vertex = false;

    if (p == PNorm::Inf) {
        if (n > opt.cap) throw PreconditionError("oracle_weighted_seminorm: size cap exceeded in exact mode");
        out.exact = true;
        const int d = static_cast<int>(n) - 1;
        detail::for_each_subset(k, d, [&](const std::vector<int>& rows) {
            Matrix sys(n, n);
            for (int i = 0; i < d; ++i) sys.row(i) = r.row(rows[static_cast<size_t>(i)]);
            sys.row(d) = kappa.transpose();
            Eigen::FullPivLU<Matrix> lu(sys);
            if (lu.rank() < n) return;
            // x and -x give the same objective; fix the first sign.
            const std::uint64_t patterns = std::uint64_t{1} << (d - 1);
            for (std::uint64_t bits = 0; bits < patterns; ++bits) {
                Vector rhs = Vector::Zero(n);
                rhs(0) = 1.0;
                for (int i = 1; i < d; ++i) rhs(i) = ((bits >> (i - 1)) & 1U) ? -1.0 : 1.0;
                const Vector x = lu.solve(rhs);
                if ((r * x).lpNorm<Eigen::Infinity>() > 1.0 + 1e-10) continue;
                any_vertex = true;
                consider(x);
            }
        });
        if (!any_vertex) throw PreconditionError("oracle_weighted_seminorm: degenerate weight");
        return out;
    }

    if (p == PNorm::One) {
        if (n > opt.cap) throw PreconditionError("oracle_weighted_seminorm: size cap exceeded in exact mode");
        out.exact = true;
        const int d = static_cast<int>(n) - 2;
        detail::for_each_subset(k, d, [&](const std::vector<int>& rows) {
            Matrix sys(d + 1, n);
            for (int i = 0; i < d; ++i) sys.row(i) = r.row(rows[static_cast<size_t>(i)]);
            sys.row(d) = kappa.transpose();
            Eigen::FullPivLU<Matrix> lu(sys);
            const Matrix ker = lu.kernel();
            if (ker.cols() != 1) return;
            Vector x = ker.col(0);
            const double g = (r * x).lpNorm<1>();
            if (g <= 1e-14 * x.norm()) return;
            x /= g;
            any_vertex = true;
            consider(x);
        });
        if (!any_vertex) throw PreconditionError("oracle_weighted_seminorm: degenerate weight");
        return out;
    }

    // p = 2
    const Matrix u = orthogonal_complement(kappa);
    const Matrix m1 = u.transpose() * ra.transpose() * ra * u;
    const Matrix m2 = u.transpose() * r.transpose() * r * u;
    Eigen::LLT<Matrix> llt(m2);
    if (llt.info() != Eigen::Success || m2.diagonal().minCoeff() <= 0.0)
        throw PreconditionError("oracle_weighted_seminorm: degenerate weight");
    const Matrix linv = llt.matrixL().solve(Matrix::Identity(n - 1, n - 1));
    const Matrix c = linv * m1 * linv.transpose();
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> g(0.0, 1.0);
    double best = -1.0;
    Vector best_y;
    for (std::size_t s = 0; s <= opt.restarts; ++s) {
        Vector y(n - 1);
        for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = g(rng);
        y.normalize();
        double prev = -1.0, lambda = 0.0;
        for (int it = 0; it < 200000; ++it) {
            Vector z = c * y;
            const double nz = z.norm();
            if (nz == 0.0) break;
            y = z / nz;
            lambda = y.dot(c * y);
            if (std::abs(lambda - prev) <= 1e-16 * std::max(1.0, lambda)) break;
            prev = lambda;
        }
        ++out.samples_used;
        if (lambda > best) {
            best = lambda;
            best_y = y;
        }
    }
    out.value = std::sqrt(std::max(0.0, best));
    Vector x = u * (linv.transpose() * best_y);
    const double nx = (r * x).norm();
    out.witness = nx > 0.0 ? Vector(x / nx) : x;
    return out;
}

/// min over c of |A - v c^T|_q by local search: exact line minimization
/// (golden section on a bracketed interval; the objective is convex) along
/// coordinate and random directions, started from c = 0, c = A^T v / |v|^2 and
/// `trials` random points.
inline double oracle_deflation(const Vector& v, const Matrix& a, PNorm q, std::size_t trials,
                               std::uint64_t seed = kDefaultSeed) {
    if (trials < 1) throw InputError("oracle_deflation: trials must be >= 1");
    if (v.size() != a.rows()) throw InputError("oracle_deflation: dimension mismatch");
    const auto n = a.cols();
    auto f = [&](const Vector& c) { return induced_pnorm(a - v * c.transpose(), q); };

    auto line_min = [&](Vector& c, const Vector& d, double& fc) {
        auto g = [&](double t) { return f(c + t * d); };
        double step = 1.0;
        double lo = -step, hi = step;
        while (g(hi) < fc && hi < 1e8) hi *= 2.0;
        while (g(lo) < fc && lo > -1e8) lo *= 2.0;
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
        double f1 = g(x1), f2 = g(x2);
        for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
            if (f1 <= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - phi * (hi - lo);
                f1 = g(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + phi * (hi - lo);
                f2 = g(x2);
            }
        }
        const double t = f1 <= f2 ? x1 : x2;
        const double ft = std::min(f1, f2);
        if (ft < fc) {
            c += t * d;
            fc = ft;
        }
    };

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Vector c_proj = a.transpose() * v / v.squaredNorm();
    std::vector<Vector> starts{Vector::Zero(n), c_proj};
    for (std::size_t t = 0; t < trials; ++t) {
        Vector c(n);
        for (Eigen::Index i = 0; i < n; ++i) c(i) = c_proj(i) + gauss(rng);
        starts.push_back(c);
    }
    double best = std::numeric_limits<double>::infinity();
    for (Vector c : starts) {
        double fc = f(c);
        for (int sweep = 0; sweep < 400; ++sweep) {
            const double before = fc;
            for (Eigen::Index k = 0; k < n; ++k) line_min(c, Vector::Unit(n, k), fc);
            for (Eigen::Index k = 0; k < 2 * n; ++k) {
                Vector d(n);
                for (Eigen::Index i = 0; i < n; ++i) d(i) = gauss(rng);
                line_min(c, d.normalized(), fc);
            }
            if (before - fc <= 1e-15 * std::max(1.0, fc) && sweep > 3) break;
        }
        best = std::min(best, fc);
    }
    return best;
}

}  // namespace ergo::oracle
