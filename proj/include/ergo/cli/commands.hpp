#pragma once

// Command implementations behind the `ergo` executable. Each returns the
// report and exit code so the logic can be exercised in-process.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ergo/contraction.hpp"
#include "ergo/ergodicity.hpp"
#include "ergo/linalg/io.hpp"
#include "ergo/markov.hpp"
#include "ergo/oracle.hpp"
#include "ergo/report.hpp"
#include "ergo/seminorm.hpp"
#include "ergo/spectral.hpp"
#include "ergo/verify.hpp"

namespace ergo::cli {

using report::Json;

enum ExitCode : int { kOk = 0, kInput = 2, kPrecondition = 3, kNumerical = 4 };

struct Outcome {
    Json report;
    int exit_code = kOk;
};

/// Tolerance for command-level oracle cross-checks.
inline constexpr double kOracleCheckTolerance = 1e-9;

namespace detail {

inline std::string pnorm_text(PNorm p) { return to_string(p); }

inline Json stochastic_flags(const StochasticMatrix& s) {
    return Json{{"primitive", s.primitive()},
                {"doubly_stochastic", s.doubly_stochastic()},
                {"positive_diagonal", s.positive_diagonal()}};
}

inline bool has_prefix(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

}  // namespace detail

struct TauOptions {
    std::string matrix;
    std::string p = "1";
    std::string anchor = "ones";  // ones | stationary | file:<path>
    std::uint64_t seed = oracle::kDefaultSeed;
};

/// ones/file anchors give tau_p(v, A). The stationary anchor gives the
/// coefficient tau_p(pi, A^T) of a primitive chain.
inline Outcome cmd_tau(const TauOptions& o) {
    const PNorm p = parse_pnorm(o.p);
    const Matrix a = io::read_matrix(o.matrix);
    Json inputs{{"matrix", o.matrix}, {"p", detail::pnorm_text(p)}, {"anchor", o.anchor}};
    Json result, residuals = Json::object();
    Vector v;
    Matrix target = a;
    if (o.anchor == "ones") {
        v = Vector::Ones(a.rows());
    } else if (o.anchor == "stationary") {
        const StochasticMatrix s(a);
        v = dominant_pair(s).left.vector();
        target = a.transpose();
        result["stochastic"] = detail::stochastic_flags(s);
    } else if (detail::has_prefix(o.anchor, "file:")) {
        v = io::read_vector(o.anchor.substr(5));
    } else {
        throw InputError("tau: --anchor must be ones, stationary or file:<path>");
    }
    const auto r = tau(v, target, p);
    result["value"] = r.value;
    result["route"] = to_string(r.route);
    result["p"] = detail::pnorm_text(p);
    result["anchor_vector"] = report::to_json(r.anchor);
    result["projector_norm_q"] = projector_form_norm(v, target, conjugate(p));
    residuals["projector_norm_minus_tau"] = result["projector_norm_q"].get<double>() - r.value;

    if (o.anchor == "ones" && looks_row_stochastic(a)) {
        const StochasticMatrix s(a);
        const auto f = dobrushin_formulas(s);
        result["dobrushin"] = Json{{"halfsum", f.halfsum}, {"minsum", f.minsum}};
        residuals["dobrushin_formula_gap"] = std::abs(f.halfsum - f.minsum);
        if (p == PNorm::One) residuals["dobrushin_vs_tau"] = std::abs(f.halfsum - r.value);
    }
    int code = kOk;
    if (p != PNorm::Two && target.rows() <= 6) {
        const auto orc = oracle::oracle_tau(v, target, p, {.seed = o.seed});
        residuals["oracle_gap"] = std::abs(orc.value - r.value);
        if (!(residuals["oracle_gap"].get<double>() <= kOracleCheckTolerance)) code = kNumerical;
    }
    if (residuals.contains("dobrushin_formula_gap") && residuals["dobrushin_formula_gap"].get<double>() > 1e-12)
        code = kNumerical;
    return {report::make("tau", inputs, result, residuals), code};
}

struct SeminormOptions {
    std::string matrix;
    std::string weight = "agreement";  // pv:<file> | qw | qw:<file> | agreement | incidence | factored:<file>
    std::string anchor;                // vector file for factored weights (default 1_n)
    std::string p = "inf";
    std::uint64_t seed = oracle::kDefaultSeed;
};

inline SeminormWeight parse_weight(const std::string& spec, const std::string& anchor, const Matrix& a) {
    const auto n = a.rows();
    if (spec == "agreement") return SeminormWeight::agreement(n);
    if (spec == "incidence") return SeminormWeight::incidence(n);
    if (spec == "qw") return SeminormWeight::oblique(dominant_pair(StochasticMatrix(a)).left.vector());
    if (detail::has_prefix(spec, "qw:")) return SeminormWeight::oblique(io::read_vector(spec.substr(3)));
    if (detail::has_prefix(spec, "pv:")) return SeminormWeight::orthogonal(io::read_vector(spec.substr(3)));
    if (detail::has_prefix(spec, "factored:")) {
        const Matrix s = io::read_matrix(spec.substr(9));
        const Vector v = anchor.empty() ? Vector::Ones(n) : io::read_vector(anchor);
        return SeminormWeight::factored(s, v);
    }
    throw InputError("seminorm: unknown weight '" + spec + "'");
}

inline Outcome cmd_seminorm(const SeminormOptions& o) {
    const PNorm p = parse_pnorm(o.p);
    const Matrix a = io::read_matrix(o.matrix);
    require_square(a);
    const SeminormWeight w = parse_weight(o.weight, o.anchor, a);
    if (w.dimension() != a.rows()) throw InputError("seminorm: weight and matrix dimensions differ");
    Json inputs{{"matrix", o.matrix}, {"weight", o.weight}, {"p", detail::pnorm_text(p)}};
    if (!o.anchor.empty()) inputs["anchor"] = o.anchor;
    const auto r = induced_seminorm(a, w, p);
    Json result{{"value", r.value},
                {"route", to_string(r.route)},
                {"weight_kind", to_string(w.kind())},
                {"kernel", report::to_json(w.kernel())},
                {"p", detail::pnorm_text(p)}};
    Json residuals{{"kernel_invariance", r.kernel_residual}};
    if (w.square() && w.kind() != WeightKind::Incidence) result["matrix_formula"] = seminorm_matrix_formula(a, w, p);
    int code = kOk;
    if (r.route != SeminormRoute::Oracle && a.rows() <= kOracleRouteCap) {
        const double orc = oracle::oracle_weighted_seminorm(a, w, p, {.cap = kOracleRouteCap, .seed = o.seed}).value;
        const double gap = std::abs(orc - r.value);
        residuals["oracle_gap"] = gap;
        if (!(gap <= (p == PNorm::Two ? 1e-8 : kOracleCheckTolerance))) code = kNumerical;
    }
    return {report::make("seminorm", inputs, result, residuals), code};
}

struct DeflateOptions {
    std::string matrix;
    std::string vector;  // empty: 1_m
    std::string q = "inf";
};

inline Outcome cmd_deflate(const DeflateOptions& o) {
    const PNorm q = parse_pnorm(o.q);
    const Matrix a = io::read_matrix(o.matrix);
    const Vector v = o.vector.empty() ? Vector::Ones(a.rows()) : io::read_vector(o.vector);
    const auto d = deflated_norm(v, a, q);
    Json inputs{{"matrix", o.matrix}, {"q", detail::pnorm_text(q)}, {"vector", o.vector.empty() ? "ones" : o.vector}};
    Json result{{"value", d.value},
                {"c_star", report::to_json(d.c_star)},
                {"projection_value", d.projection_value},
                {"c_projection", report::to_json(d.c_projection)},
                {"q", detail::pnorm_text(q)}};
    Json residuals{{"projection_minus_optimum", d.projection_value - d.value}};
    return {report::make("deflate", inputs, result, residuals), kOk};
}

struct MixingOptions {
    std::string matrix;
    double eps = 0.25;
};

inline Outcome cmd_mixing(const MixingOptions& o) {
    const StochasticMatrix s(io::read_matrix(o.matrix));
    const auto m = mixing_time(s, o.eps);
    Json trace = Json::array();
    for (std::size_t i = 0; i < m.trace.size(); ++i)
        trace.push_back(Json{{"k", m.trace[i].first}, {"d", m.trace[i].second}, {"half_tau_inf", m.half_tau_trace[i]}});
    Json result{{"t_mix", m.t_mix},
                {"epsilon", m.epsilon},
                {"trace", trace},
                {"stationary", report::to_json(m.pi)},
                {"warnings", m.warnings},
                {"stochastic", detail::stochastic_flags(s)}};
    Json residuals{{"identity_residual", m.identity_residual}};
    return {report::make("mixing", Json{{"matrix", o.matrix}, {"eps", o.eps}}, result, residuals), kOk};
}

struct RhoEssOptions {
    std::string matrix;
    double eps = 1e-3;
};

inline Outcome cmd_rho_ess(const RhoEssOptions& o) {
    const Matrix a = io::read_matrix(o.matrix);
    const auto rep = ess_spectral_radius(a);
    Json result{{"rho_ess", rep.rho_ess},
                {"eigen_moduli", rep.eigen_moduli},
                {"diagonalizable", rep.diagonalizable},
                {"stochastic", rep.stochastic}};
    Json residuals = Json::object();
    if (rep.dominant_v.size()) result["dominant_v"] = report::to_json(rep.dominant_v);
    if (!std::isnan(rep.cross_check_residual)) {
        residuals["projected_radius_gap"] = rep.cross_check_residual;
        result["projected_radius"] = rep.projected_radius;
    }
    try {
        const auto ow = optimal_weight(a, o.eps);
        result["optimal_weight"] = Json{{"regime", to_string(ow.regime)},
                                        {"schur_surrogate", ow.regime == WeightRegime::SchurSurrogate},
                                        {"certified_value", ow.certified_value},
                                        {"bound", ow.bound},
                                        {"delta", ow.delta},
                                        {"epsilon", ow.epsilon},
                                        {"within_epsilon", ow.within_epsilon},
                                        {"S", report::to_json(*ow.weight.factor())}};
        residuals["certified_minus_rho_ess"] = ow.certified_value - ow.rho_ess;
    } catch (const PreconditionError& e) {
        result["optimal_weight"] = nullptr;
        result["optimal_weight_unavailable"] = e.what();
    }
    return {report::make("rho-ess", Json{{"matrix", o.matrix}, {"eps", o.eps}}, result, residuals), kOk};
}

struct CertifyOptions {
    std::string sequence;
    std::string p = "inf";
    std::string x0;  // optional initial state file
    bool markov = false;
    int steps = 20;  // Markov simulation length
};

inline Json certificate_json(const Certificate& c) {
    return Json{{"rate", c.rate},
                {"p", detail::pnorm_text(c.p)},
                {"weight", to_string(c.weight.kind())},
                {"per_step", c.per_step},
                {"contracting", c.contracting},
                {"route", c.theorem_route},
                {"ergodicity_per_step", c.ergodicity_per_step},
                {"ergodicity_rate", c.ergodicity_rate}};
}

inline Json trajectory_json(const TrajectoryCheck& t) {
    return Json{{"trajectory_seminorms", t.trajectory_seminorms},
                {"rate_used", t.rate_used},
                {"bound_satisfied", t.bound_satisfied},
                {"worst_excess", t.worst_excess}};
}

inline Outcome cmd_certify(const CertifyOptions& o) {
    const PNorm p = parse_pnorm(o.p);
    std::vector<StochasticMatrix> ms;
    if (o.markov && !std::filesystem::is_directory(o.sequence))
        ms.emplace_back(io::read_matrix(o.sequence));
    else
        for (auto& m : io::read_matrix_sequence(o.sequence)) ms.emplace_back(std::move(m));
    const MatrixSequence seq(std::move(ms));
    Json inputs{{"sequence", o.sequence}, {"p", detail::pnorm_text(p)}, {"markov", o.markov}};
    if (!o.x0.empty()) inputs["x0"] = o.x0;
    Json result, residuals = Json::object();
    int code = kOk;
    if (o.markov) {
        if (seq.length() != 1) throw InputError("certify --markov expects a single matrix");
        const auto c = certify_markov(seq[0], p);
        result = certificate_json(c);
        result["stationary"] = report::to_json(dominant_pair(seq[0]).left.vector());
        if (!o.x0.empty()) {
            inputs["steps"] = o.steps;
            const auto t = simulate_markov(seq[0], io::read_vector(o.x0), p, o.steps, c.rate);
            result["trajectory"] = trajectory_json(t);
            residuals["trajectory_excess"] = t.worst_excess;
            if (!t.bound_satisfied) code = kNumerical;
        }
    } else {
        const auto c = certify_averaging(seq, p);
        result = certificate_json(c);
        // tau_q of the accumulated product against the product of per-step values.
        const auto n = seq.dimension();
        Matrix prod = Matrix::Identity(n, n);
        double bound = 1.0;
        for (std::size_t k = 0; k < seq.length(); ++k) {
            prod = seq[k].matrix() * prod;
            bound *= c.ergodicity_per_step[k];
        }
        const double prod_tau = tau(Vector::Ones(n), prod, conjugate(p)).value;
        result["product_ergodicity"] = prod_tau;
        residuals["product_ergodicity_excess"] = prod_tau - bound;
        if (!o.x0.empty()) {
            const auto t = simulate_and_check(seq, io::read_vector(o.x0), p, c.rate);
            result["trajectory"] = trajectory_json(t);
            residuals["trajectory_excess"] = t.worst_excess;
            if (!t.bound_satisfied) code = kNumerical;
        }
    }
    return {report::make("certify", inputs, result, residuals), code};
}

struct LmiOptions {
    std::string matrix;
    std::string p_matrix;
};

inline Outcome cmd_lmi(const LmiOptions& o) {
    const Matrix a = io::read_matrix(o.matrix);
    const Matrix pm = io::read_matrix(o.p_matrix);
    const auto r = lmi_l2(a, pm);
    Json result{{"b", r.b}, {"sqrt_b", std::sqrt(r.b)}, {"kernel", report::to_json(r.kernel)}};
    Json residuals = Json::object();
    const bool feasible = lmi_feasible(a, pm, r.b + 1e-9);
    const bool tight = !lmi_feasible(a, pm, r.b - 1e-6) || r.b < 1e-6;
    result["feasible_at_b"] = feasible;
    result["infeasible_below_b"] = tight;
    return {report::make("lmi", Json{{"matrix", o.matrix}, {"P", o.p_matrix}}, result, residuals),
            feasible && tight ? kOk : kNumerical};
}

struct VerifyOptions {
    std::string suite;
    std::size_t trials = 100;
    std::uint64_t seed = oracle::kDefaultSeed;
};

inline Json stat_json(const verify::Stat& s, bool check) {
    Json j{{"max", s.max_value}, {"tolerance", s.tolerance}, {"count", s.count}, {"violations", s.violations}};
    j[check ? "pass" : "holds"] = s.ok();
    return j;
}

inline Outcome cmd_verify(const VerifyOptions& o) {
    const auto r = verify::run_suite(o.suite, o.trials, o.seed);
    Json checks = Json::object(), identities = Json::object(), residuals = Json::object();
    for (const auto& [k, s] : r.checks) {
        checks[k] = stat_json(s, true);
        residuals[k] = s.max_value;
    }
    for (const auto& [k, s] : r.identities) identities[k] = stat_json(s, false);
    Json result{{"suite", r.suite}, {"checks", checks}, {"identities", identities}, {"pass", r.passed()}};
    if (!r.data.empty()) result["data"] = r.data;
    Json inputs{{"suite", o.suite}, {"trials", o.trials}, {"seed", o.seed}};
    return {report::make("verify", inputs, result, residuals), r.passed() ? kOk : kNumerical};
}

struct Guarded {
    int exit_code = kOk;
    std::string out;  // report JSON (empty on error)
    std::string err;  // error message
};

/// Runs a command, mapping library exceptions onto the exit-code contract.
inline Guarded run_guarded(const std::function<Outcome()>& fn) {
    Guarded g;
    try {
        const Outcome o = fn();
        g.exit_code = o.exit_code;
        g.out = report::dump(o.report) + "\n";
    } catch (const InputError& e) {
        g.exit_code = kInput;
        g.err = std::string("input error: ") + e.what();
    } catch (const PreconditionError& e) {
        g.exit_code = kPrecondition;
        g.err = std::string("precondition failed: ") + e.what();
    } catch (const NumericalError& e) {
        g.exit_code = kNumerical;
        g.err = std::string("numerical check failed: ") + e.what();
    }
    return g;
}

}  // namespace ergo::cli
