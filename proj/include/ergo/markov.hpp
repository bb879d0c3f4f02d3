#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ergo/ergodicity.hpp"
#include "ergo/linalg/dense.hpp"
#include "ergo/linalg/stochastic.hpp"

namespace ergo {

inline constexpr long kMixingCap = 1'000'000;

/// 1/2 sum_j |xi_j - nu_j|.
inline double total_variation(const Distribution& xi, const Distribution& nu) {
    if (xi.size() != nu.size()) throw InputError("total_variation: length mismatch");
    return 0.5 * (xi.vector() - nu.vector()).lpNorm<1>();
}

namespace detail {

/// 1/2 max_i sum_j |M_ij - pi_j|.
inline double worst_row_distance(const Matrix& power, const Vector& pi) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < power.rows(); ++i)
        worst = std::max(worst, (power.row(i).transpose() - pi).lpNorm<1>());
    return 0.5 * worst;
}

inline void renormalize_rows(Matrix& m) {
    m = m.cwiseMax(0.0);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double s = m.row(i).sum();
        if (std::abs(s - 1.0) > 1e-12) m.row(i) /= s;
    }
}

inline Matrix stochastic_power(const Matrix& a, long k) {
    Matrix result = Matrix::Identity(a.rows(), a.cols());
    Matrix base = a;
    while (k > 0) {
        if (k & 1) {
            result = result * base;
            renormalize_rows(result);
        }
        k >>= 1;
        if (k > 0) {
            base = base * base;
            renormalize_rows(base);
        }
    }
    return result;
}

}  // namespace detail

struct StationarityDistance {
    double d = 0.0;             // 1/2 max_i |e_i^T A^k - pi^T|_1
    double half_tau_inf = 0.0;  // 1/2 tau_inf(pi, (A^k)^T)
    Vector pi;
};

/// d(A, k) alongside 1/2 tau_inf(pi, (A^k)^T). A^0 = I, so d(A, 0) = max_i (1 - pi_i).
inline StationarityDistance stationarity_distance(const StochasticMatrix& s, long k) {
    if (k < 0) throw InputError("distance_to_stationarity: k must be nonnegative");
    const auto pair = dominant_pair(s);
    StationarityDistance out;
    out.pi = pair.left.vector();
    const Matrix power = detail::stochastic_power(s.matrix(), k);
    out.d = detail::worst_row_distance(power, out.pi);
    out.half_tau_inf = 0.5 * tau(out.pi, power.transpose(), PNorm::Inf).value;
    return out;
}

/// Distance to stationarity d(A, k) = 1/2 max_i sum_j |[A^k]_ij - pi_j|.
inline double distance_to_stationarity(const StochasticMatrix& s, long k) {
    return stationarity_distance(s, k).d;
}

struct MixingReport {
    double epsilon = 0.0;
    long t_mix = 0;
    std::vector<std::pair<long, double>> trace;  // (k, d_k) for every scanned k
    std::vector<double> half_tau_trace;          // 1/2 tau_inf(pi, (A^k)^T), same k
    /// max_k |d_k - 1/2 tau_inf(pi, (A^k)^T)|. Reported, not enforced.
    double identity_residual = 0.0;
    Vector pi;
    std::vector<std::string> warnings;
};

/// Smallest k >= 0 with d(A, k) <= epsilon, by an incremental scan over A^k.
inline MixingReport mixing_time(const StochasticMatrix& s, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("mixing_time: epsilon must lie in (0, 1)");
    const auto pair = dominant_pair(s);
    MixingReport out;
    out.epsilon = epsilon;
    out.pi = pair.left.vector();
    const Matrix& a = s.matrix();
    Matrix power = Matrix::Identity(s.size(), s.size());
    double prev = 0.0;
    for (long k = 0;; ++k) {
        const double d = detail::worst_row_distance(power, out.pi);
        const double half_tau = 0.5 * tau(out.pi, power.transpose(), PNorm::Inf).value;
        out.trace.emplace_back(k, d);
        out.half_tau_trace.push_back(half_tau);
        out.identity_residual = std::max(out.identity_residual, std::abs(d - half_tau));
        if (k > 0 && d > prev + 1e-12)
            out.warnings.push_back("d(A,k) increased at k = " + std::to_string(k));
        if (d <= epsilon) {
            out.t_mix = k;
            return out;
        }
        if (k >= kMixingCap)
            throw PreconditionError("mixing_time: no k <= " + std::to_string(kMixingCap) + " reaches epsilon");
        prev = d;
        power = power * a;
        const double drift = (power.rowwise().sum().array() - 1.0).abs().maxCoeff();
        if (drift > 1e-12) detail::renormalize_rows(power);
    }
}

}  // namespace ergo
