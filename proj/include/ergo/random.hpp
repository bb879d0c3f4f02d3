#pragma once

// Random instance families shared by the verification suites and tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "ergo/linalg/dense.hpp"
#include "ergo/linalg/eigen.hpp"

namespace ergo::random {

using Rng = std::mt19937_64;

/// Independent generator for trial `index` of a run seeded with `seed`.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

inline Eigen::Index dimension(Rng& rng, Eigen::Index lo, Eigen::Index hi) {
    return std::uniform_int_distribution<Eigen::Index>(lo, hi)(rng);
}

inline Matrix uniform(Rng& rng, Eigen::Index rows, Eigen::Index cols, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = u(rng);
    return m;
}

inline Vector uniform_vector(Rng& rng, Eigen::Index n, double lo = -1.0, double hi = 1.0) {
    return uniform(rng, n, 1, lo, hi).col(0);
}

inline Vector gaussian_vector(Rng& rng, Eigen::Index n) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = g(rng);
    return x;
}

/// Rows of U(0,1) entries normalized to sum one (entrywise positive).
inline Matrix stochastic(Rng& rng, Eigen::Index n) {
    Matrix m = uniform(rng, n, n, 0.0, 1.0).array() + 1e-3;
    for (Eigen::Index i = 0; i < n; ++i) m.row(i) /= m.row(i).sum();
    return m;
}

/// Stochastic with roughly half the entries zeroed, kept only if primitive.
inline Matrix sparse_stochastic(Rng& rng, Eigen::Index n, bool (*accept)(const Matrix&)) {
    std::bernoulli_distribution keep(0.5);
    for (;;) {
        Matrix m = uniform(rng, n, n, 0.0, 1.0);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j)
                if (!keep(rng)) m(i, j) = 0.0;
            if (m.row(i).sum() == 0.0) m(i, (i + 1) % n) = 1.0;
            m.row(i) /= m.row(i).sum();
        }
        if (accept(m)) return m;
    }
}

inline Matrix permutation(Rng& rng, Eigen::Index n) {
    std::vector<Eigen::Index> p(static_cast<size_t>(n));
    std::iota(p.begin(), p.end(), Eigen::Index{0});
    std::shuffle(p.begin(), p.end(), rng);
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, p[static_cast<size_t>(i)]) = 1.0;
    return m;
}

/// Convex combination of I, a few permutations and J/n, all weights positive:
/// doubly stochastic, positive diagonal, primitive.
inline Matrix doubly_stochastic(Rng& rng, Eigen::Index n) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    const int terms = 3;
    std::vector<double> w(terms + 2);
    for (auto& x : w) x = u(rng);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    Matrix m = (w[0] / total) * Matrix::Identity(n, n) + (w[1] / total) * Matrix::Constant(n, n, 1.0 / n);
    for (int t = 0; t < terms; ++t) m += (w[static_cast<size_t>(t + 2)] / total) * permutation(rng, n);
    return m;
}

/// Symmetric, doubly stochastic, primitive.
inline Matrix symmetric_stochastic(Rng& rng, Eigen::Index n) {
    const Matrix d = doubly_stochastic(rng, n);
    return 0.5 * (d + d.transpose());
}

/// Reversible chain D^{-1} W with W symmetric positive: primitive, real
/// spectrum, diagonalizable.
inline Matrix reversible_stochastic(Rng& rng, Eigen::Index n) {
    Matrix w = uniform(rng, n, n, 0.0, 1.0).array() + 1e-2;
    w = 0.5 * (w + w.transpose()).eval();
    for (Eigen::Index i = 0; i < n; ++i) w.row(i) /= w.row(i).sum();
    return w;
}

struct EigenPair {
    Matrix a;
    double lambda;
    Vector v;
};

/// Random A with entries U[-1,1] and one of its real eigenpairs (resampled
/// until a well-separated real eigenvalue exists).
inline EigenPair real_eigenpair(Rng& rng, Eigen::Index n) {
    for (;;) {
        Matrix a = uniform(rng, n, n);
        Eigen::EigenSolver<Matrix> es(a, true);
        if (es.info() != Eigen::Success) continue;
        std::vector<Eigen::Index> real_idx;
        for (Eigen::Index i = 0; i < n; ++i)
            if (std::abs(es.eigenvalues()(i).imag()) < 1e-12) real_idx.push_back(i);
        if (real_idx.empty()) continue;
        const auto pick = real_idx[std::uniform_int_distribution<size_t>(0, real_idx.size() - 1)(rng)];
        const double lambda = es.eigenvalues()(pick).real();
        bool separated = true;
        for (Eigen::Index i = 0; i < n; ++i)
            if (i != pick && std::abs(es.eigenvalues()(i) - es.eigenvalues()(pick)) < 1e-3) separated = false;
        if (!separated) continue;
        Eigen::JacobiSVD<Matrix> svd(a - lambda * Matrix::Identity(n, n), Eigen::ComputeFullV);
        Vector v = svd.matrixV().col(n - 1);
        const double res = (a * v - lambda * v).norm();
        if (res > 1e-12) continue;
        return {a, lambda, v};
    }
}

}  // namespace ergo::random
