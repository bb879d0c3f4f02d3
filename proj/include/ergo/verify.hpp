#pragma once

// Randomized suites that compare library routes against the oracles
// ("checks") and measure how far stated identities are from holding
// ("identities", informational).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ergo/contraction.hpp"
#include "ergo/ergodicity.hpp"
#include "ergo/markov.hpp"
#include "ergo/oracle.hpp"
#include "ergo/random.hpp"
#include "ergo/seminorm.hpp"
#include "ergo/spectral.hpp"

namespace ergo::verify {

struct Stat {
    double max_value = 0.0;
    double tolerance = 0.0;
    std::size_t count = 0;
    std::size_t violations = 0;

    void add(double value) {
        ++count;
        if (!(value <= tolerance)) ++violations;
        if (!(value <= max_value)) max_value = value;  // NaN propagates
    }
    void merge(const Stat& o) {
        count += o.count;
        violations += o.violations;
        if (!(o.max_value <= max_value)) max_value = o.max_value;
        tolerance = o.tolerance;
    }
    bool ok() const { return violations == 0; }
};

struct SuiteReport {
    std::string suite;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::map<std::string, Stat> checks;      // must hold: drive the pass/fail verdict
    std::map<std::string, Stat> identities;  // measured only
    std::map<std::string, std::vector<double>> samples;
    nlohmann::json data = nlohmann::json::object();

    void check(const std::string& name, double residual, double tol) {
        auto& s = checks[name];
        s.tolerance = tol;
        s.add(residual);
    }
    void identity(const std::string& name, double gap, double tol) {
        auto& s = identities[name];
        s.tolerance = tol;
        s.add(gap);
    }
    void sample(const std::string& name, double x) { samples[name].push_back(x); }

    void merge(const SuiteReport& o) {
        for (const auto& [k, s] : o.checks) checks[k].merge(s);
        for (const auto& [k, s] : o.identities) identities[k].merge(s);
        for (const auto& [k, v] : o.samples) samples[k].insert(samples[k].end(), v.begin(), v.end());
    }

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second.ok(); });
    }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"equivalence", "oblique", "incidence", "conjecture", "spectral", "mixing"};
    return names;
}

namespace detail {

inline std::string tag(PNorm p) { return p == PNorm::Inf ? "inf" : to_string(p); }

/// Runs trial(index, rng, report) for every index on worker threads and merges
/// the per-trial reports in index order.
inline void run_trials(SuiteReport& out, std::size_t trials,
                       const std::function<void(std::size_t, random::Rng&, SuiteReport&)>& trial) {
    std::vector<SuiteReport> parts(trials);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= trials) return;
            try {
                auto rng = random::trial_rng(out.seed, i);
                trial(i, rng, parts[i]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const auto count = static_cast<unsigned>(std::min<std::size_t>(hw, trials));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    for (const auto& p : parts) out.merge(p);
}

inline nlohmann::json summarize(const std::vector<double>& xs) {
    nlohmann::json j;
    if (xs.empty()) return j;
    double sum = 0.0, mx = 0.0;
    for (double x : xs) {
        sum += x;
        mx = std::max(mx, x);
    }
    j["count"] = xs.size();
    j["max"] = mx;
    j["mean"] = sum / static_cast<double>(xs.size());
    // Decade histogram: [0,1e-12), [1e-12,1e-10), ..., [1e-2,1e-1), [1e-1,inf).
    const std::vector<double> edges{1e-12, 1e-10, 1e-8, 1e-6, 1e-4, 1e-2, 1e-1};
    const std::vector<std::string> labels{"<1e-12", "1e-12..1e-10", "1e-10..1e-8", "1e-8..1e-6",
                                          "1e-6..1e-4", "1e-4..1e-2", "1e-2..1e-1", ">=1e-1"};
    std::vector<std::size_t> bins(labels.size(), 0);
    for (double x : xs) {
        std::size_t b = 0;
        while (b < edges.size() && x >= edges[b]) ++b;
        ++bins[b];
    }
    nlohmann::json h = nlohmann::json::object();
    for (std::size_t b = 0; b < bins.size(); ++b) h[labels[b]] = bins[b];
    j["histogram"] = h;
    return j;
}

inline Matrix random_factor(random::Rng& rng, Eigen::Index n) {
    for (;;) {
        Matrix s = random::uniform(rng, n, n);
        if (condition_number(s) < 1e6) return s;
    }
}

constexpr PNorm kPairs[][2] = {{PNorm::One, PNorm::Inf}, {PNorm::Two, PNorm::Two}, {PNorm::Inf, PNorm::One}};

inline double oracle_tol(PNorm p) { return p == PNorm::Two ? 1e-7 : 1e-9; }

inline void equivalence_trial(std::size_t, random::Rng& rng, SuiteReport& r) {
    const auto n = random::dimension(rng, 2, 6);
    const auto ep = random::real_eigenpair(rng, n);
    const auto seed = rng();
    for (const auto& pq : kPairs) {
        const PNorm p = pq[0], q = pq[1];
        const std::string sp = tag(p), sq = tag(q);
        const double t = tau(ep.v, ep.a, p).value;
        r.check("tau_p" + sp + "_vs_oracle",
                std::abs(t - oracle::oracle_tau(ep.v, ep.a, p, {.seed = seed}).value), oracle_tol(p));
        const auto d = deflated_norm(ep.v, ep.a, q);
        const double searched = oracle::oracle_deflation(ep.v, ep.a, q, 2, seed);
        r.check("deflation_q" + sq + "_not_above_search", std::max(0.0, d.value - searched), 1e-10);
        r.check("deflation_q" + sq + "_vs_search", std::abs(searched - d.value), 1e-6);
        const auto w = SeminormWeight::orthogonal(ep.v);
        const double s = induced_seminorm(ep.a, w, q).value;
        if (n <= 5)
            r.check("seminorm_q" + sq + "_vs_oracle",
                    std::abs(s - oracle::oracle_weighted_seminorm(ep.a, w, q, {.cap = 5, .seed = seed}).value),
                    oracle_tol(q));
        r.identity("tau_p" + sp + "_eq_psi_q" + sq, std::abs(t - d.value), 1e-9);
        r.identity("psi_q" + sq + "_eq_seminorm_q" + sq, std::abs(d.value - s), 1e-9);
        r.identity("tau_p" + sp + "_eq_projector_norm_q" + sq, std::abs(t - projector_form_norm(ep.v, ep.a, q)), 1e-9);
        r.identity("psi_q" + sq + "_attained_at_projection", d.projection_value - d.value, 1e-9);
    }
}

inline void oblique_trial(std::size_t, random::Rng& rng, SuiteReport& r) {
    const auto n = random::dimension(rng, 2, 6);
    const StochasticMatrix s(random::stochastic(rng, n));
    const Vector w = dominant_pair(s).left.vector();
    const auto weight = SeminormWeight::oblique(w);
    const auto seed = rng();
    for (PNorm p : kAllNorms) {
        const std::string sp = tag(p);
        const double t = tau_oblique(s, p).value;
        r.check("tau_oblique_p" + sp + "_vs_oracle",
                std::abs(t - oracle::oracle_tau(w, s.matrix().transpose(), p, {.seed = seed}).value), oracle_tol(p));
        const double sn = induced_seminorm(s.matrix(), weight, p).value;
        r.check("seminorm_qw_p" + sp + "_vs_tau_oblique", std::abs(sn - t), 1e-9);
        if (n <= 5)
            r.check("seminorm_qw_p" + sp + "_vs_oracle",
                    std::abs(sn - oracle::oracle_weighted_seminorm(s.matrix(), weight, p, {.cap = 5, .seed = seed}).value),
                    oracle_tol(p));
        const double defl = oblique_deflation_norm(s, p);
        r.identity("tau_oblique_p" + sp + "_eq_deflation_norm", std::abs(t - defl), 1e-9);
        r.identity("seminorm_qw_p" + sp + "_eq_deflation_norm", std::abs(sn - defl), 1e-9);
        r.identity("seminorm_qw_p" + sp + "_eq_qw_product_norm",
                   std::abs(sn - seminorm_matrix_formula(s.matrix(), weight, p)), 1e-9);
    }
}

inline void incidence_trial(std::size_t, random::Rng& rng, SuiteReport& r) {
    const auto n = random::dimension(rng, 2, 5);
    const StochasticMatrix s(random::stochastic(rng, n));
    const Matrix& a = s.matrix();
    const auto f = dobrushin_formulas(s);
    r.check("dobrushin_halfsum_vs_minsum", std::abs(f.halfsum - f.minsum), 1e-12);
    const double t1 = tau(Vector::Ones(n), a, PNorm::One).value;
    r.check("dobrushin_vs_tau1", std::abs(f.halfsum - t1), 1e-9);
    const auto inc = SeminormWeight::incidence(n);
    const auto agr = SeminormWeight::agreement(n);
    const double ci = induced_seminorm(a, inc, PNorm::Inf).value;
    const double ca = induced_seminorm(a, agr, PNorm::Inf).value;
    r.check("incidence_inf_vs_oracle", std::abs(ci - oracle::oracle_weighted_seminorm(a, inc, PNorm::Inf).value), 1e-9);
    r.check("agreement_inf_vs_oracle", std::abs(ca - oracle::oracle_weighted_seminorm(a, agr, PNorm::Inf).value), 1e-9);
    const double c2 = induced_seminorm(a, inc, PNorm::Two).value;
    r.check("incidence_2_vs_oracle", std::abs(c2 - oracle::oracle_weighted_seminorm(a, inc, PNorm::Two).value), 1e-8);
    r.identity("incidence_inf_eq_tau1", std::abs(ci - t1), 1e-9);
    r.identity("agreement_inf_eq_tau1", std::abs(ca - t1), 1e-9);
    r.identity("incidence_inf_eq_agreement_inf", std::abs(ci - ca), 1e-9);
}

inline void conjecture_trial(std::size_t i, random::Rng& rng, SuiteReport& r) {
    for (Eigen::Index n = 2; n <= 4; ++n) {
        const Matrix a = random::stochastic(rng, n);
        const auto seed = rng();
        for (PNorm p : {PNorm::One, PNorm::Two}) {
            const double pi = oracle::oracle_weighted_seminorm(a, SeminormWeight::agreement(n), p, {.cap = 5, .seed = seed}).value;
            const double ci = oracle::oracle_weighted_seminorm(a, SeminormWeight::incidence(n), p, {.cap = 5, .seed = seed}).value;
            const double gap = std::abs(pi - ci);
            const std::string key = "p" + tag(p) + "_n" + std::to_string(n);
            r.sample(key, gap);
            if (p == PNorm::Two) r.check("gap_p2_n" + std::to_string(n), gap, 1e-8);
        }
    }
    (void)i;
}

inline void spectral_trial(std::size_t, random::Rng& rng, SuiteReport& r) {
    const auto n = random::dimension(rng, 2, 6);
    const Matrix a = random::reversible_stochastic(rng, n);
    const double rho = ess_spectral_radius(a).rho_ess;
    const Vector one = Vector::Ones(n);
    for (int k = 0; k < 10; ++k) {
        const auto w = SeminormWeight::factored(random_factor(rng, n), one);
        for (PNorm p : kAllNorms)
            r.check("rho_ess_below_factored_p" + tag(p), std::max(0.0, rho - induced_seminorm(a, w, p).value), 1e-9);
    }
    const auto ow = optimal_weight(a, 1e-3);
    r.check("optimal_weight_excess", std::max(0.0, ow.certified_value - ow.rho_ess - 1e-3), 1e-8);
    r.identity("optimal_weight_gap_to_rho_ess", std::abs(ow.certified_value - ow.rho_ess), 1e-8);

    const Matrix sym = random::symmetric_stochastic(rng, n);
    double sym_res;
    try {
        sym_res = symmetric_l2_identity(sym).residual;
    } catch (const NumericalError&) {
        sym_res = std::abs(spectral_norm(agreement_projector(n) * sym) - ess_spectral_radius(sym).rho_ess);
    }
    r.check("symmetric_l2_identity", sym_res, 1e-9);

    const Matrix s = random_factor(rng, n);
    const Matrix pv = agreement_projector(n);
    const Matrix p = pv * s.transpose() * s * pv;
    const double b = lmi_l2(a, p).b;
    const double route = induced_seminorm(a, SeminormWeight::factored(s, one), PNorm::Two).value;
    r.check("lmi_vs_factored_l2", std::abs(std::sqrt(b) - route), 1e-8);
    r.check("lmi_feasible_at_b", lmi_feasible(a, p, b + 1e-9) ? 0.0 : 1.0, 0.0);

    const StochasticMatrix d(random::doubly_stochastic(rng, n));
    const auto sub = tau2_subunit_check(d);
    r.check("tau2_subunit", sub.subunit ? 0.0 : sub.tau2, 0.0);
}

inline void mixing_trial(std::size_t i, random::Rng& rng, SuiteReport& r) {
    const auto n = random::dimension(rng, 2, 8);
    const StochasticMatrix s(random::stochastic(rng, n));
    const Vector pi = dominant_pair(s).left.vector();
    Matrix power = Matrix::Identity(n, n);
    for (long k = 0; k <= 20; ++k) {
        const double d = ergo::detail::worst_row_distance(power, pi);
        const double half_tau = 0.5 * tau(pi, power.transpose(), PNorm::Inf).value;
        r.check("d_vs_half_deflation_norm",
                std::abs(d - 0.5 * max_abs_row_sum(power - Vector::Ones(n) * pi.transpose())), 1e-9);
        if (n <= 6)
            r.check("half_tau_inf_vs_oracle",
                    std::abs(half_tau - 0.5 * oracle::oracle_tau(pi, power.transpose(), PNorm::Inf).value), 1e-9);
        r.identity("d_eq_half_tau_inf", std::abs(d - half_tau), 1e-9);
        power = power * s.matrix();
    }
    if (i == 0) {
        Matrix two(2, 2);
        two << 0.75, 0.25, 0.25, 0.75;
        r.check("two_state_t_mix", std::abs(static_cast<double>(mixing_time(StochasticMatrix(two), 0.01).t_mix) - 6.0), 0.0);
    }
}

}  // namespace detail

/// Runs one suite. Throws InputError for an unknown suite or zero trials.
inline SuiteReport run_suite(const std::string& suite, std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw InputError("verify: trials must be positive");
    SuiteReport r;
    r.suite = suite;
    r.trials = trials;
    r.seed = seed;
    if (suite == "equivalence") detail::run_trials(r, trials, detail::equivalence_trial);
    else if (suite == "oblique") detail::run_trials(r, trials, detail::oblique_trial);
    else if (suite == "incidence") detail::run_trials(r, trials, detail::incidence_trial);
    else if (suite == "conjecture") detail::run_trials(r, trials, detail::conjecture_trial);
    else if (suite == "spectral") detail::run_trials(r, trials, detail::spectral_trial);
    else if (suite == "mixing") detail::run_trials(r, trials, detail::mixing_trial);
    else throw InputError("verify: unknown suite '" + suite + "'");
    if (suite == "conjecture") {
        nlohmann::json gaps = nlohmann::json::object();
        for (const auto& [k, v] : r.samples) gaps[k] = detail::summarize(v);
        r.data["gaps"] = gaps;
    }
    return r;
}

}  // namespace ergo::verify
