#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "ergo/ergo.hpp"
#include "ergo/verify.hpp"

using namespace ergo;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Worst {
    double value = 0.0;
    long violations = 0;
    long count = 0;
    void add(double x, double tol) {
        ++count;
        if (!(x <= tol)) ++violations;
        if (!(x <= value)) value = x;
    }
};

class Board {
public:
    void criterion(int id, const std::string& what, bool pass, const std::string& detail, double seconds) {
        std::printf("%s criterion %2d  %-34s %s  (%.1fs)\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str(),
                    seconds);
        std::fflush(stdout);
        failed_ += pass ? 0 : 1;
    }
    static void info(const std::string& line) {
        std::printf("     info         %s\n", line.c_str());
        std::fflush(stdout);
    }
    int failed() const { return failed_; }

private:
    int failed_ = 0;
};

std::string fmt(const char* label, const Worst& w, double tol) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s max=%.3e tol=%.0e viol=%ld/%ld", label, w.value, tol, w.violations, w.count);
    return buf;
}

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

random::Rng rng_for(int criterion, std::size_t trial) {
    return random::trial_rng(kSeed + static_cast<std::uint64_t>(criterion) * 1000003ULL, trial);
}

constexpr PNorm kPairs[][2] = {{PNorm::One, PNorm::Inf}, {PNorm::Two, PNorm::Two}, {PNorm::Inf, PNorm::One}};

void equivalence(Board& b) {
    const auto t0 = Clock::now();
    Worst tau_psi, psi_sem, tau_sem;
    for (std::size_t i = 0; i < 500; ++i) {
        auto rng = rng_for(1, i);
        const auto ep = random::real_eigenpair(rng, random::dimension(rng, 2, 6));
        for (const auto& pq : kPairs) {
            const double t = tau(ep.v, ep.a, pq[0]).value;
            const double psi = projector_form_norm(ep.v, ep.a, pq[1]);
            const double sem = induced_seminorm(ep.a, SeminormWeight::orthogonal(ep.v), pq[1]).value;
            tau_psi.add(std::abs(t - psi), 1e-9);
            psi_sem.add(std::abs(psi - sem), 1e-9);
            tau_sem.add(std::abs(t - sem), 1e-9);
        }
    }
    const double s = since(t0);
    b.criterion(1, "main equivalence", tau_psi.violations == 0 && psi_sem.violations == 0 && s < 30,
                fmt("tau-psi", tau_psi, 1e-9) + "; " + fmt("psi-seminorm", psi_sem, 1e-9), s);
    Board::info(fmt("tau_p vs seminorm_q", tau_sem, 1e-9));
}

void shadowing(Board& b) {
    const auto t0 = Clock::now();
    Worst closed[3], exact[3];
    const double tol[3] = {1e-9, 1e-7, 1e-9};
    for (std::size_t i = 0; i < 200; ++i) {
        auto rng = rng_for(2, i);
        const auto m = random::dimension(rng, 2, 5);
        const auto n = random::dimension(rng, 2, 5);
        const Matrix a = random::uniform(rng, m, n);
        const Vector v = random::uniform_vector(rng, m);
        int k = 0;
        for (const auto& pq : kPairs) {
            const double orc = oracle::oracle_tau(v, a, pq[0], {.seed = rng()}).value;
            closed[k].add(std::abs(orc - projector_form_norm(v, a, pq[1])), tol[k]);
            exact[k].add(std::abs(orc - tau(v, a, pq[0]).value), tol[k]);
            ++k;
        }
    }
    const double s = since(t0);
    bool pass = s < 120;
    std::string detail;
    const char* labels[3] = {"p=1", "p=2", "p=inf"};
    for (int k = 0; k < 3; ++k) {
        pass = pass && closed[k].violations == 0;
        detail += fmt(labels[k], closed[k], tol[k]) + (k < 2 ? "; " : "");
        Board::info(std::string("oracle vs exact tau ") + fmt(labels[k], exact[k], tol[k]));
    }
    b.criterion(2, "oracle vs projector form", pass, detail, s);
}

void dobrushin_cross(Board& b) {
    const auto t0 = Clock::now();
    Worst formulas, closed, exact;
    for (std::size_t i = 0; i < 500; ++i) {
        auto rng = rng_for(3, i);
        const auto n = random::dimension(rng, 2, 8);
        const StochasticMatrix s(random::stochastic(rng, n));
        const auto f = dobrushin_formulas(s);
        const Vector one = Vector::Ones(n);
        const double psi = projector_form_norm(one, s.matrix(), PNorm::Inf);
        const double t1 = tau(one, s.matrix(), PNorm::One).value;
        formulas.add(std::abs(f.halfsum - f.minsum), 1e-12);
        closed.add(std::max(std::abs(f.halfsum - psi), std::abs(f.minsum - psi)), 1e-9);
        exact.add(std::max(std::abs(f.halfsum - t1), std::abs(f.minsum - t1)), 1e-9);
    }
    const double s = since(t0);
    b.criterion(3, "Dobrushin cross-formula", formulas.violations == 0 && closed.violations == 0,
                fmt("halfsum-minsum", formulas, 1e-12) + "; " + fmt("vs projector form", closed, 1e-9), s);
    Board::info(fmt("Dobrushin vs exact tau_1", exact, 1e-9));
}

void oblique(Board& b) {
    const auto t0 = Clock::now();
    Worst left[3], right[3], outer[3];
    for (std::size_t i = 0; i < 200; ++i) {
        auto rng = rng_for(4, i);
        const auto n = random::dimension(rng, 2, 6);
        const StochasticMatrix s(random::stochastic(rng, n));
        const Vector w = dominant_pair(s).left.vector();
        int k = 0;
        for (PNorm p : kAllNorms) {
            const double t = tau(w, s.matrix().transpose(), p).value;
            const double defl = oblique_deflation_norm(s, p);
            const double sem = induced_seminorm(s.matrix(), SeminormWeight::oblique(w), p).value;
            left[k].add(std::abs(t - defl), 1e-9);
            right[k].add(std::abs(defl - sem), 1e-9);
            outer[k].add(std::abs(t - sem), 1e-9);
            ++k;
        }
    }
    const double s = since(t0);
    bool pass = true;
    std::string detail;
    const char* labels[3] = {"p=1", "p=2", "p=inf"};
    for (int k = 0; k < 3; ++k) {
        pass = pass && left[k].violations == 0 && right[k].violations == 0;
        detail += fmt(labels[k], left[k], 1e-9) + (k < 2 ? "; " : "");
        Board::info(std::string("tau(w,A^T) vs Q_w seminorm ") + fmt(labels[k], outer[k], 1e-9));
    }
    b.criterion(4, "oblique identity", pass, "tau vs |A-1w^T|: " + detail, s);
}

void incidence(Board& b) {
    const auto t0 = Clock::now();
    Worst inc_agr, agr_tau, inc_tau, inc_orc, agr_orc;
    for (std::size_t i = 0; i < 200; ++i) {
        auto rng = rng_for(5, i);
        const auto n = random::dimension(rng, 2, 5);
        const StochasticMatrix s(random::stochastic(rng, n));
        const Matrix& a = s.matrix();
        const auto c = SeminormWeight::incidence(n);
        const auto pi = SeminormWeight::agreement(n);
        const double vc = induced_seminorm(a, c, PNorm::Inf).value;
        const double vp = induced_seminorm(a, pi, PNorm::Inf).value;
        const double t1 = tau(Vector::Ones(n), a, PNorm::One).value;
        inc_agr.add(std::abs(vc - vp), 1e-9);
        agr_tau.add(std::abs(vp - t1), 1e-9);
        inc_tau.add(std::abs(vc - t1), 1e-9);
        inc_orc.add(std::abs(vc - oracle::oracle_weighted_seminorm(a, c, PNorm::Inf).value), 1e-9);
        agr_orc.add(std::abs(vp - oracle::oracle_weighted_seminorm(a, pi, PNorm::Inf).value), 1e-9);
    }
    const double s = since(t0);
    const bool pass = inc_agr.violations == 0 && agr_tau.violations == 0 && inc_tau.violations == 0 &&
                      inc_orc.violations == 0 && agr_orc.violations == 0;
    b.criterion(5, "incidence seminorm", pass,
                fmt("C vs Pi", inc_agr, 1e-9) + "; " + fmt("Pi vs tau1", agr_tau, 1e-9) + "; " +
                    fmt("C vs tau1", inc_tau, 1e-9),
                s);
    Board::info(fmt("incidence vs oracle", inc_orc, 1e-9) + "; " + fmt("agreement vs oracle", agr_orc, 1e-9));
}

void conjecture(Board& b) {
    const auto t0 = Clock::now();
    bool pass = true;
    std::string detail;
    for (PNorm p : {PNorm::One, PNorm::Two}) {
        for (Eigen::Index n = 2; n <= 4; ++n) {
            Worst gap, orc;
            for (std::size_t i = 0; i < 200; ++i) {
                auto rng = rng_for(6, i * 16 + static_cast<std::size_t>(n) * 2 + (p == PNorm::Two));
                const Matrix a = random::stochastic(rng, n);
                const auto c = SeminormWeight::incidence(n);
                const auto pi = SeminormWeight::agreement(n);
                const double vc = induced_seminorm(a, c, p).value;
                const double vp = induced_seminorm(a, pi, p).value;
                gap.add(std::abs(vp - vc), 1e-8);
                const double oc = oracle::oracle_weighted_seminorm(a, c, p, {.cap = 5, .seed = rng()}).value;
                const double op = oracle::oracle_weighted_seminorm(a, pi, p, {.cap = 5, .seed = rng()}).value;
                orc.add(std::max(std::abs(oc - vc), std::abs(op - vp)), p == PNorm::Two ? 1e-7 : 1e-9);
            }
            const std::string label = "p=" + to_string(p) + " n=" + std::to_string(n);
            if (p == PNorm::Two) {
                pass = pass && gap.violations == 0;
                detail += fmt(label.c_str(), gap, 1e-8) + "; ";
            } else {
                char buf[96];
                std::snprintf(buf, sizeof buf, "p=1 n=%ld max gap %.3e (reported)", static_cast<long>(n), gap.value);
                Board::info(buf);
            }
            Board::info("gap inputs vs oracle " + fmt(label.c_str(), orc, p == PNorm::Two ? 1e-7 : 1e-9));
        }
    }
    b.criterion(6, "Pi vs incidence gaps", pass, detail, since(t0));
}

void mixing(Board& b) {
    const auto t0 = Clock::now();
    Worst identity, bound;
    for (std::size_t i = 0; i < 100; ++i) {
        auto rng = rng_for(7, i);
        const auto n = random::dimension(rng, 2, 8);
        const StochasticMatrix s(random::stochastic(rng, n));
        for (long k = 0; k <= 20; ++k) {
            const auto d = stationarity_distance(s, k);
            identity.add(std::abs(d.d - d.half_tau_inf), 1e-9);
            bound.add(std::max(0.0, d.half_tau_inf - d.d), 1e-12);
        }
    }
    const StochasticMatrix flip(Matrix{{0.75, 0.25}, {0.25, 0.75}});
    const long t = mixing_time(flip, 0.01).t_mix;
    const double s = since(t0);
    b.criterion(7, "mixing identity", identity.violations == 0 && t == 6,
                fmt("|d - tau/2|", identity, 1e-9) + "; two-state t_mix(0.01)=" + std::to_string(t), s);
    Board::info(fmt("tau/2 <= d", bound, 1e-12));
}

void rho_ess(Board& b) {
    const auto t0 = Clock::now();
    Worst below[3], certified, sym;
    long surrogate = 0;
    for (std::size_t i = 0; i < 100; ++i) {
        auto rng = rng_for(8, i);
        const auto n = random::dimension(rng, 2, 6);
        const Matrix a = random::reversible_stochastic(rng, n);
        const double rho = ess_spectral_radius(a).rho_ess;
        const Vector one = Vector::Ones(n);
        for (int j = 0; j < 50; ++j) {
            const auto w = SeminormWeight::factored(verify::detail::random_factor(rng, n), one);
            int k = 0;
            for (PNorm p : kAllNorms) below[k++].add(std::max(0.0, rho - induced_seminorm(a, w, p).value), 1e-9);
        }
        const auto ow = optimal_weight(a, 1e-3);
        certified.add(std::max(0.0, ow.certified_value - ow.rho_ess - 1e-3), 0.0);
        surrogate += ow.regime == WeightRegime::SchurSurrogate;

        const Matrix sy = random::symmetric_stochastic(rng, n);
        const double v2 = induced_seminorm(sy, SeminormWeight::orthogonal(one), PNorm::Two).value;
        sym.add(std::abs(v2 - ess_spectral_radius(sy).rho_ess), 1e-9);
    }
    const double s = since(t0);
    bool pass = certified.violations == 0 && sym.violations == 0;
    for (const auto& w : below) pass = pass && w.violations == 0;
    b.criterion(8, "essential spectral radius", pass,
                fmt("rho-seminorm(p=1)", below[0], 1e-9) + "; " + fmt("p=2", below[1], 1e-9) + "; " +
                    fmt("p=inf", below[2], 1e-9) + "; " + fmt("optimal excess", certified, 0.0) + "; " +
                    fmt("symmetric", sym, 1e-9),
                s);
    Board::info("optimal weights in surrogate regime: " + std::to_string(surrogate) + "/100");
}

void lmi(Board& b) {
    const auto t0 = Clock::now();
    Worst gap;
    for (std::size_t i = 0; i < 100; ++i) {
        auto rng = rng_for(9, i);
        const auto n = random::dimension(rng, 2, 6);
        const Matrix a = random::stochastic(rng, n);
        const auto w = SeminormWeight::factored(verify::detail::random_factor(rng, n), Vector::Ones(n));
        const Matrix p = w.matrix().transpose() * w.matrix();
        gap.add(std::abs(std::sqrt(lmi_l2(a, p).b) - induced_seminorm(a, w, PNorm::Two).value), 1e-8);
    }
    b.criterion(9, "LMI route", gap.violations == 0, fmt("|sqrt(b) - seminorm|", gap, 1e-8), since(t0));
}

void trajectories(Board& b) {
    const auto t0 = Clock::now();
    Worst by_tau[3], sound[3], markov[3];
    for (std::size_t i = 0; i < 100; ++i) {
        auto rng = rng_for(10, i);
        const auto n = random::dimension(rng, 2, 6);
        const auto len = static_cast<int>(random::dimension(rng, 1, 10));
        std::vector<StochasticMatrix> ms;
        for (int k = 0; k < len; ++k) ms.emplace_back(random::stochastic(rng, n));
        const MatrixSequence seq(std::move(ms));
        int k = 0;
        for (PNorm p : kAllNorms) {
            const auto cert = certify_averaging(seq, p);
            for (int j = 0; j < 20; ++j) {
                const Vector x0 = random::uniform_vector(rng, n);
                by_tau[k].add(simulate_and_check(seq, x0, p, cert.ergodicity_rate).worst_excess, 1e-10);
                sound[k].add(simulate_and_check(seq, x0, p, cert.rate).worst_excess, 1e-10);
            }
            const auto mc = certify_markov(seq[0], p);
            for (int j = 0; j < 20; ++j) {
                Vector pi0 = random::uniform_vector(rng, n, 0.0, 1.0);
                pi0 /= pi0.sum();
                markov[k].add(simulate_markov(seq[0], pi0, p, 10, mc.ergodicity_rate).worst_excess, 1e-10);
            }
            ++k;
        }
    }
    const double s = since(t0);
    bool pass = true;
    std::string detail;
    const char* labels[3] = {"p=1", "p=2", "p=inf"};
    for (int k = 0; k < 3; ++k) {
        pass = pass && by_tau[k].violations == 0 && markov[k].violations == 0;
        detail += fmt(labels[k], by_tau[k], 1e-10) + " markov viol=" + std::to_string(markov[k].violations) +
                  (k < 2 ? "; " : "");
        Board::info(std::string("exact one-step gain as rate ") + fmt(labels[k], sound[k], 1e-10));
    }
    b.criterion(10, "contraction trajectories", pass, "rate=max tau_q: " + detail, s);
}

void subunit(Board& b) {
    const auto t0 = Clock::now();
    Worst excess;
    double worst = 0.0;
    for (std::size_t i = 0; i < 100; ++i) {
        auto rng = rng_for(11, i);
        const auto n = random::dimension(rng, 2, 8);
        const auto c = tau2_subunit_check(StochasticMatrix(random::doubly_stochastic(rng, n)));
        worst = std::max(worst, c.tau2);
        excess.add(c.subunit ? 0.0 : c.tau2, 0.0);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max tau_2=%.6f, not below 1: %ld/%ld", worst, excess.violations, excess.count);
    b.criterion(11, "tau_2 below one", excess.violations == 0, buf, since(t0));
}

}  // namespace

int main() {
    Board b;
    const std::vector<void (*)(Board&)> all{equivalence, shadowing, dobrushin_cross, oblique, incidence, conjecture,
                                            mixing,      rho_ess,   lmi,             trajectories, subunit};
    for (std::size_t i = 0; i < all.size(); ++i) {
        try {
            all[i](b);
        } catch (const std::exception& e) {
            b.criterion(static_cast<int>(i + 1), "aborted", false, e.what(), 0.0);
        }
    }
    std::printf("%d of %zu criteria failed\n", b.failed(), all.size());
    return b.failed() == 0 ? 0 : 1;
}
