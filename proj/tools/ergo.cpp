#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "ergo/cli/commands.hpp"

using namespace ergo::cli;

int main(int argc, char** argv) {
    CLI::App app{"Ergodicity coefficients, weighted matrix seminorms and contraction certificates"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ergo::report::kVersion);

    std::function<Outcome()> action;

    TauOptions tau_o;
    auto* tau = app.add_subcommand("tau", "l_p ergodicity coefficient");
    tau->add_option("matrix", tau_o.matrix, "matrix file (CSV or JSON)")->required();
    tau->add_option("--p", tau_o.p, "1, 2 or inf")->capture_default_str();
    tau->add_option("--anchor", tau_o.anchor, "ones | stationary | file:<path>")->capture_default_str();
    tau->add_option("--seed", tau_o.seed, "oracle seed")->envname("ERGO_SEED");
    tau->callback([&] { action = [&] { return cmd_tau(tau_o); }; });

    SeminormOptions sem_o;
    auto* sem = app.add_subcommand("seminorm", "weighted induced matrix seminorm");
    sem->add_option("matrix", sem_o.matrix, "matrix file")->required();
    sem->add_option("--weight", sem_o.weight, "pv:<file> | qw | qw:<file> | agreement | incidence | factored:<file>")
        ->capture_default_str();
    sem->add_option("--anchor", sem_o.anchor, "kernel vector file for factored weights");
    sem->add_option("--p", sem_o.p, "1, 2 or inf")->capture_default_str();
    sem->add_option("--seed", sem_o.seed, "oracle seed")->envname("ERGO_SEED");
    sem->callback([&] { action = [&] { return cmd_seminorm(sem_o); }; });

    DeflateOptions def_o;
    auto* def = app.add_subcommand("deflate", "deflated induced norm min_c |A - v c^T|_q");
    def->add_option("matrix", def_o.matrix, "matrix file")->required();
    def->add_option("--vector", def_o.vector, "deflation vector file (default all ones)");
    def->add_option("--q", def_o.q, "1, 2 or inf")->capture_default_str();
    def->callback([&] { action = [&] { return cmd_deflate(def_o); }; });

    MixingOptions mix_o;
    auto* mix = app.add_subcommand("mixing", "epsilon-mixing time of a Markov chain");
    mix->add_option("matrix", mix_o.matrix, "row-stochastic matrix file")->required();
    mix->add_option("--eps", mix_o.eps, "epsilon in (0,1)")->capture_default_str();
    mix->callback([&] { action = [&] { return cmd_mixing(mix_o); }; });

    RhoEssOptions rho_o;
    auto* rho = app.add_subcommand("rho-ess", "essential spectral radius and near-optimal weight");
    rho->add_option("matrix", rho_o.matrix, "matrix file")->required();
    rho->add_option("--eps", rho_o.eps, "epsilon > 0")->capture_default_str();
    rho->callback([&] { action = [&] { return cmd_rho_ess(rho_o); }; });

    CertifyOptions cert_o;
    auto* cert = app.add_subcommand("certify", "semicontraction certificate for a matrix sequence");
    cert->add_option("sequence", cert_o.sequence, "directory of matrix files or JSON array")->required();
    cert->add_option("--p", cert_o.p, "1, 2 or inf")->capture_default_str();
    cert->add_option("--x0", cert_o.x0, "initial state file");
    cert->add_flag("--markov", cert_o.markov, "certify pi(k+1) = A^T pi(k) for a single matrix");
    cert->add_option("--steps", cert_o.steps, "Markov simulation steps")->capture_default_str();
    cert->callback([&] { action = [&] { return cmd_certify(cert_o); }; });

    LmiOptions lmi_o;
    auto* lmi = app.add_subcommand("lmi", "min { b : A^T P A <= b P }");
    lmi->add_option("matrix", lmi_o.matrix, "matrix file")->required();
    lmi->add_option("P", lmi_o.p_matrix, "PSD weight file")->required();
    lmi->callback([&] { action = [&] { return cmd_lmi(lmi_o); }; });

    VerifyOptions ver_o;
    auto* ver = app.add_subcommand("verify", "randomized oracle suites");
    ver->add_option("--suite", ver_o.suite, "equivalence | oblique | incidence | conjecture | spectral | mixing")
        ->required();
    ver->add_option("--trials", ver_o.trials, "number of random trials")->capture_default_str();
    ver->add_option("--seed", ver_o.seed, "base seed")->envname("ERGO_SEED");
    ver->callback([&] { action = [&] { return cmd_verify(ver_o); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    const Guarded g = run_guarded(action);
    std::fputs(g.out.c_str(), stdout);
    if (!g.err.empty()) std::cerr << g.err << '\n';
    return g.exit_code;
}
