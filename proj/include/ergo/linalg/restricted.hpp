#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "ergo/linalg/dense.hpp"
#include "ergo/linalg/projectors.hpp"

namespace ergo {

struct L1Fit {
    double value;  // min_t |b - t u|_1
    double t;      // a minimizer
};

/// min over scalar t of |b - t u|_1, solved exactly as a weighted median of
/// b_i / u_i with weights |u_i|.
inline L1Fit best_l1_multiple(const Vector& b, const Vector& u) {
    const auto n = b.size();
    const double scale = u.size() ? u.cwiseAbs().maxCoeff() : 0.0;
    std::vector<std::pair<double, double>> pts;  // (ratio, weight)
    pts.reserve(static_cast<size_t>(n));
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double w = std::abs(u(i));
        if (w <= 1e-15 * scale || w == 0.0) continue;
        pts.emplace_back(b(i) / u(i), w);
        total += w;
    }
    double t = 0.0;
    if (!pts.empty()) {
        std::sort(pts.begin(), pts.end());
        double acc = 0.0;
        for (const auto& [ratio, w] : pts) {
            acc += w;
            if (acc >= 0.5 * total) {
                t = ratio;
                break;
            }
        }
    }
    return {(b - t * u).lpNorm<1>(), t};
}

/// Operator norm of M restricted to the hyperplane u^perp:
///   max { |M z|_p : |z|_p <= 1, u^T z = 0 }.
///
/// p = 2: sigma_max(M P_u).
/// p = 1: the feasible set is the cross-polytope cut by u^perp; its vertices lie
///        on cross-polytope edges, so the maximum is over the O(k^2) points
///        (u_j e_i - u_i e_j) / (|u_i| + |u_j|) and e_i with u_i = 0.
/// p = inf: for each output row r, max r^T z over the cube cut by u^perp equals
///        min_t |r - t u|_1 by LP duality (a weighted median).
inline double restricted_norm(const Matrix& m, const Vector& u, PNorm p) {
    if (m.cols() != u.size()) throw InputError("restricted_norm: dimension mismatch");
    require_finite(m);
    require_finite(u);
    if (u.squaredNorm() == 0.0) throw InputError("restricted_norm: zero normal vector");
    const auto k = m.cols();
    switch (p) {
        case PNorm::Two: return spectral_norm(m * orthogonal_projector(u));
        case PNorm::One: {
            double best = 0.0;
            for (Eigen::Index i = 0; i < k; ++i) {
                if (u(i) == 0.0) best = std::max(best, m.col(i).lpNorm<1>());
                for (Eigen::Index j = i + 1; j < k; ++j) {
                    const double d = std::abs(u(i)) + std::abs(u(j));
                    if (d == 0.0) continue;
                    best = std::max(best, (u(j) * m.col(i) - u(i) * m.col(j)).lpNorm<1>() / d);
                }
            }
            return best;
        }
        case PNorm::Inf: {
            double best = 0.0;
            for (Eigen::Index r = 0; r < m.rows(); ++r)
                best = std::max(best, best_l1_multiple(m.row(r).transpose(), u).value);
            return best;
        }
    }
    return 0.0;
}

}  // namespace ergo
