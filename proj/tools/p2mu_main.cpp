// Experiment driver: measure specs in, deterministic JSON/CSV reports out.
#include <chrono>
#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "p2mu/errors.hpp"
#include "p2mu/experiments.hpp"

namespace {

// "RE" or "RE,IM"
void parse_complex_arg(const std::string& text, double& re, double& im) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) {
            re = std::stod(text);
            im = 0.0;
        } else {
            re = std::stod(text.substr(0, comma));
            im = std::stod(text.substr(comma + 1));
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError("expected a complex number as RE or RE,IM, got '" + text + "'");
    }
}

int execute(const p2mu::ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const p2mu::ExperimentReport rep = p2mu::run_experiment(cfg);
    const auto paths = p2mu::write_outputs(rep, cfg);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const std::string& line : rep.check_lines) std::cout << line << "\n";
    for (const std::string& p : paths) std::cout << "wrote " << p << "\n";
    std::printf("%s: %s (wall %.3f s)\n", cfg.command.c_str(),
                rep.all_pass ? "all checks passed" : "CHECKS FAILED", wall);
    return rep.all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"p2mu: principal-value Cauchy transforms, jump scans and P2(mu) experiments"};
    app.require_subcommand(1);

    p2mu::ExperimentConfig cfg;
    std::string z_arg, a_arg;

    auto* cauchy = app.add_subcommand("cauchy", "Cauchy transform evaluation and jump scans");
    cauchy->require_subcommand(1);
    auto* ceval = cauchy->add_subcommand("eval", "evaluate C(nu) at a point");
    ceval->add_option("--measure", cfg.measure_path, "measure spec file")->required();
    ceval->add_option("--z", z_arg, "evaluation point RE,IM")->required();
    double eps_val = 0.0;
    auto* eps_opt = ceval->add_option("--eps", eps_val, "epsilon-truncated transform");
    ceval->add_option("--out", cfg.output_path, "report path");
    ceval->callback([&] {
        cfg.command = "cauchy-eval";
        parse_complex_arg(z_arg, cfg.params["z_re"], cfg.params["z_im"]);
        if (eps_opt->count()) cfg.params["eps"] = eps_val;
    });

    auto* cscan = cauchy->add_subcommand("scan", "Plemelj jump scan along Stolz regions");
    cscan->add_option("--measure", cfg.measure_path, "measure spec file")->required();
    double theta = 0.0, rr = 0.5, tol = 1e-6, delta_cap = 0.0;
    cscan->add_option("--zeta", theta, "boundary point angle in radians")->required();
    cscan->add_option("--r", rr, "Stolz aperture in (0,1)");
    cscan->add_option("--deltas", cfg.deltas, "shell radii (three or more)")
        ->required()
        ->expected(-3);
    auto* tol_opt =
        cscan->add_option("--tol", tol, "flagging tolerance (default 1e-6, or 1e-4 with "
                                        "quadrature-backed components)");
    auto* dcap = cscan->add_option("--delta", delta_cap, "cap for the region (recorded)");
    cscan->add_option("--out", cfg.output_path, "report path");
    cscan->callback([&] {
        cfg.command = "plemelj-scan";
        cfg.params["zeta_theta"] = theta;
        cfg.params["r"] = rr;
        if (tol_opt->count()) cfg.params["tol"] = tol;
        if (dcap->count()) cfg.params["delta"] = delta_cap;
    });

    auto* p2 = app.add_subcommand("p2", "P2(mu) point evaluations and subspaces");
    p2->require_subcommand(1);
    auto* bpe = p2->add_subcommand("bpe-map", "grid map of evaluation norms k_n");
    int nmax = 40;
    bpe->add_option("--measure", cfg.measure_path, "measure spec file")->required();
    bpe->add_option("--grid", cfg.grid_spec, "grid spec re0:re1:nx,im0:im1:ny")->required();
    bpe->add_option("--nmax", nmax, "largest degree");
    bpe->add_option("--out", cfg.output_path, "report path");
    bpe->callback([&] {
        cfg.command = "bpe-map";
        cfg.params["nmax"] = nmax;
    });

    auto* wander = p2->add_subcommand("wandering", "wandering subspace dimension of M = {p(a)=0}");
    int wn = 20;
    double svtol = 1e-8;
    wander->add_option("--measure", cfg.measure_path, "measure spec file")->required();
    wander->add_option("--a", a_arg, "zero location RE,IM")->required();
    wander->add_option("--n", wn, "truncation degree");
    wander->add_option("--svtol", svtol, "singular value cutoff");
    wander->add_option("--out", cfg.output_path, "report path");
    wander->callback([&] {
        cfg.command = "p2-wandering";
        parse_complex_arg(a_arg, cfg.params["a_re"], cfg.params["a_im"]);
        cfg.params["n"] = wn;
        cfg.params["svtol"] = svtol;
    });

    auto* hz = app.add_subcommand("hz", "boundary-plus-area counterexample measure");
    hz->require_subcommand(1);
    auto* hzv = hz->add_subcommand("verify", "run every residual family with tolerances");
    std::string hz_a = "0.9";
    int alpha = 5, hn = 20;
    double lens_c = 0.3;
    hzv->add_option("--a", hz_a, "zero location RE or RE,IM");
    hzv->add_option("--alpha", alpha, "Bergman weight exponent");
    hzv->add_option("--c,--lens-c", lens_c, "lens parameter");
    hzv->add_option("--n", hn, "degree budget");
    hzv->add_option("--out", cfg.output_path, "report path");
    hzv->callback([&] {
        cfg.command = "hz-verify";
        parse_complex_arg(hz_a, cfg.params["a_re"], cfg.params["a_im"]);
        cfg.params["alpha"] = alpha;
        cfg.params["c"] = lens_c;
        cfg.params["n"] = hn;
    });

    auto* covering = app.add_subcommand("covering", "greedy disjoint covering checks");
    covering->require_subcommand(1);
    auto* ctest = covering->add_subcommand("test", "randomized disjointness and 3r-cover checks");
    int instances = 100, disks = 200, samples = 1000;
    ctest->add_option("--instances", instances, "number of random instances");
    ctest->add_option("--disks", disks, "disks per instance");
    ctest->add_option("--samples", samples, "boundary samples per disk");
    ctest->add_option("--seed", cfg.seed, "RNG seed");
    ctest->add_option("--out", cfg.output_path, "report path");
    ctest->callback([&] {
        cfg.command = "covering-test";
        cfg.params["instances"] = instances;
        cfg.params["disks"] = disks;
        cfg.params["samples"] = samples;
    });

    CLI11_PARSE(app, argc, argv);

    try {
        return execute(cfg);
    } catch (const p2mu::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 2;
    }
}
