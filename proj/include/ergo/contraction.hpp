#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ergo/ergodicity.hpp"
#include "ergo/linalg/dense.hpp"
#include "ergo/linalg/stochastic.hpp"
#include "ergo/seminorm.hpp"
#include "ergo/weight.hpp"

namespace ergo {

/// Nonempty list of row-stochastic matrices of one dimension.
class MatrixSequence {
public:
    explicit MatrixSequence(std::vector<StochasticMatrix> ms) : ms_(std::move(ms)) {
        if (ms_.empty()) throw InputError("matrix sequence is empty");
        for (const auto& m : ms_)
            if (m.size() != ms_.front().size()) throw InputError("matrix sequence has mixed dimensions");
    }

    const std::vector<StochasticMatrix>& matrices() const noexcept { return ms_; }
    std::size_t length() const noexcept { return ms_.size(); }
    Eigen::Index dimension() const noexcept { return ms_.front().size(); }
    const StochasticMatrix& operator[](std::size_t k) const { return ms_[k]; }

private:
    std::vector<StochasticMatrix> ms_;
};

struct Certificate {
    /// max_k of the exact one-step seminorm gain; the trajectory guarantee
    /// |||x(k)||| <= rate^k |||x(0)||| holds with this rate.
    double rate = 0.0;
    PNorm p = PNorm::Two;
    SeminormWeight weight = SeminormWeight::agreement(1);
    std::vector<double> per_step;
    bool contracting = false;
    std::string theorem_route;
    /// tau_q of each step (q conjugate to p) and their max.
    std::vector<double> ergodicity_per_step;
    double ergodicity_rate = 0.0;
};

/// Semicontraction certificate for x(k+1) = A(k) x(k) in the Pi_n-weighted
/// l_p seminorm.
inline Certificate certify_averaging(const MatrixSequence& seq, PNorm p) {
    const auto n = seq.dimension();
    Certificate c;
    c.p = p;
    c.weight = SeminormWeight::agreement(n);
    c.theorem_route = "averaging:agreement-seminorm";
    const PNorm q = conjugate(p);
    const Vector one = Vector::Ones(n);
    for (const auto& a : seq.matrices()) {
        c.per_step.push_back(induced_seminorm(a.matrix(), c.weight, p).value);
        c.ergodicity_per_step.push_back(q == PNorm::One ? dobrushin(a).value : tau(one, a.matrix(), q).value);
    }
    c.rate = *std::max_element(c.per_step.begin(), c.per_step.end());
    c.ergodicity_rate = *std::max_element(c.ergodicity_per_step.begin(), c.ergodicity_per_step.end());
    c.contracting = c.rate < 1.0;
    return c;
}

/// Semicontraction certificate for pi(k+1) = A^T pi(k) in the P_w-weighted
/// l_p seminorm, w the stationary distribution.
inline Certificate certify_markov(const StochasticMatrix& s, PNorm p) {
    const auto pair = dominant_pair(s);
    const Vector& w = pair.left.vector();
    Certificate c;
    c.p = p;
    c.weight = SeminormWeight::orthogonal(w);
    c.theorem_route = "markov:stationary-projector-seminorm";
    c.per_step.push_back(induced_seminorm(s.matrix().transpose(), c.weight, p).value);
    c.ergodicity_per_step.push_back(tau(w, s.matrix().transpose(), conjugate(p)).value);
    c.rate = c.per_step.front();
    c.ergodicity_rate = c.ergodicity_per_step.front();
    c.contracting = c.rate < 1.0;
    return c;
}

struct TrajectoryCheck {
    std::vector<double> trajectory_seminorms;  // |||x(k)|||, k = 0..K
    double rate_used = 0.0;
    bool bound_satisfied = true;
    /// max_k (|||x(k)||| - rate^k |||x(0)|||).
    double worst_excess = 0.0;
};

namespace detail {

inline void check_geometric(TrajectoryCheck& t) {
    const double x0 = t.trajectory_seminorms.front();
    t.worst_excess = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < t.trajectory_seminorms.size(); ++k) {
        const double excess = t.trajectory_seminorms[k] - std::pow(t.rate_used, static_cast<double>(k)) * x0;
        t.worst_excess = std::max(t.worst_excess, excess);
    }
    t.bound_satisfied = t.worst_excess <= 1e-10;
}

}  // namespace detail

/// Iterates x(k+1) = A(k) x(k) and checks the geometric bound. The rate
/// defaults to the certificate's rate.
inline TrajectoryCheck simulate_and_check(const MatrixSequence& seq, const Vector& x0, PNorm p,
                                          std::optional<double> rate = std::nullopt) {
    const auto n = seq.dimension();
    if (x0.size() != n) throw InputError("simulate_and_check: x0 length must equal the matrix dimension");
    require_finite(x0, "x0");
    const auto w = SeminormWeight::agreement(n);
    TrajectoryCheck t;
    t.rate_used = rate ? *rate : certify_averaging(seq, p).rate;
    Vector x = x0;
    t.trajectory_seminorms.push_back(vector_seminorm(x, w, p));
    for (const auto& a : seq.matrices()) {
        x = a.matrix() * x;
        t.trajectory_seminorms.push_back(vector_seminorm(x, w, p));
    }
    detail::check_geometric(t);
    return t;
}

/// Iterates pi(k+1) = A^T pi(k) for `steps` steps and checks the geometric
/// bound in the P_w-weighted seminorm.
inline TrajectoryCheck simulate_markov(const StochasticMatrix& s, const Vector& pi0, PNorm p, int steps,
                                       std::optional<double> rate = std::nullopt) {
    if (pi0.size() != s.size()) throw InputError("simulate_markov: initial vector length mismatch");
    if (steps < 0) throw InputError("simulate_markov: steps must be nonnegative");
    const auto pair = dominant_pair(s);
    const auto w = SeminormWeight::orthogonal(pair.left.vector());
    TrajectoryCheck t;
    t.rate_used = rate ? *rate : certify_markov(s, p).rate;
    Vector x = pi0;
    t.trajectory_seminorms.push_back(vector_seminorm(x, w, p));
    for (int k = 0; k < steps; ++k) {
        x = s.matrix().transpose() * x;
        t.trajectory_seminorms.push_back(vector_seminorm(x, w, p));
    }
    detail::check_geometric(t);
    return t;
}

}  // namespace ergo
