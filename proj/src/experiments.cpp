#include "p2mu/experiments.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "p2mu/cauchy.hpp"
#include "p2mu/errors.hpp"
#include "p2mu/geometry.hpp"
#include "p2mu/hz.hpp"
#include "p2mu/measure_io.hpp"
#include "p2mu/p2space.hpp"

namespace p2mu {

namespace {

double param(const ExperimentConfig& cfg, const std::string& key, double fallback,
             bool required = false) {
    auto it = cfg.params.find(key);
    if (it == cfg.params.end()) {
        if (required) throw precondition_error("experiment: missing parameter '" + key + "'");
        return fallback;
    }
    return it->second;
}

Json config_echo(const ExperimentConfig& cfg) {
    Json j = Json::object();
    j.set("command", Json::str(cfg.command));
    j.set("measure_path", Json::str(cfg.measure_path));
    Json pj = Json::object();
    for (const auto& [k, v] : cfg.params) pj.set(k, Json::num(v));
    j.set("params", std::move(pj));
    Json dj = Json::array();
    for (double d : cfg.deltas) dj.push(Json::num(d));
    j.set("deltas", std::move(dj));
    j.set("grid", Json::str(cfg.grid_spec));
    j.set("output_path", Json::str(cfg.output_path));
    j.set("seed", Json::integer(static_cast<long long>(cfg.seed)));
    return j;
}

void add_check(ExperimentReport& rep, Json& checks, const std::string& name, bool pass,
               double residual, double tolerance) {
    Json c = Json::object();
    c.set("name", Json::str(name));
    c.set("pass", Json::boolean(pass));
    c.set("residual", Json::num(residual));
    c.set("tolerance", Json::num(tolerance));
    checks.push(std::move(c));
    rep.all_pass = rep.all_pass && pass;
    char buf[64];
    std::snprintf(buf, sizeof buf, " (residual %.3g, tol %.3g)", residual, tolerance);
    rep.check_lines.push_back((pass ? "PASS " : "FAIL ") + name + buf);
}

struct GridSpec {
    double re0, re1;
    int nx;
    double im0, im1;
    int ny;
};

GridSpec parse_grid(const std::string& spec) {
    GridSpec g{};
    const auto comma = spec.find(',');
    if (comma == std::string::npos) throw parse_error("grid spec: expected 're0:re1:nx,im0:im1:ny'");
    auto parse_axis = [](const std::string& s, double& a, double& b, int& n) {
        const auto c1 = s.find(':');
        const auto c2 = s.find(':', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw parse_error("grid spec: axis must be 'lo:hi:count'");
        try {
            a = std::stod(s.substr(0, c1));
            b = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
            n = std::stoi(s.substr(c2 + 1));
        } catch (const std::exception&) {
            throw parse_error("grid spec: malformed number in '" + s + "'");
        }
        if (n < 1) throw parse_error("grid spec: count must be >= 1");
    };
    parse_axis(spec.substr(0, comma), g.re0, g.re1, g.nx);
    parse_axis(spec.substr(comma + 1), g.im0, g.im1, g.ny);
    return g;
}

ComplexMeasure measure_from(const ExperimentConfig& cfg) {
    if (cfg.measure_path.empty())
        throw precondition_error("experiment: --measure file required for " + cfg.command);
    return load_measure_file(cfg.measure_path);
}

// ---- per-command runners ----------------------------------------------------

void run_cauchy_eval(const ExperimentConfig& cfg, ExperimentReport& rep, Json& checks) {
    const ComplexMeasure mu = measure_from(cfg);
    const cplx z{param(cfg, "z_re", 0.0, true), param(cfg, "z_im", 0.0)};
    Json res = Json::object();
    if (cfg.params.count("eps")) {
        const CauchyValue v = cauchy_eps(mu, z, param(cfg, "eps", 0.0, true));
        res.set("kind", Json::str("eps_truncated"));
        res.set("value", Json::complex_pair(v.value));
        res.set("method", Json::str(v.method == CauchyValue::Method::closed_form ? "closed_form"
                                                                                 : "quadrature"));
        res.set("est_error", Json::num(v.est_error));
    } else {
        const CauchyValue v = cauchy_pv(mu, z);
        res.set("kind", Json::str("principal_value"));
        res.set("value", Json::complex_pair(v.value));
        res.set("method", Json::str(v.method == CauchyValue::Method::closed_form ? "closed_form"
                                                                                 : "quadrature"));
        res.set("est_error", Json::num(v.est_error));
    }
    rep.doc.set("result", std::move(res));
    add_check(rep, checks, "evaluation completed", true, 0.0, 0.0);
}

void run_plemelj_scan(const ExperimentConfig& cfg, ExperimentReport& rep, Json& checks) {
    const ComplexMeasure mu = measure_from(cfg);
    const double theta = param(cfg, "zeta_theta", 0.0, true);
    const double r = param(cfg, "r", 0.5);
    // default flagging tolerance: 1e-6 on closed-form measures, 1e-4 once
    // quadrature-backed components enter the values
    bool has_quadrature = false;
    for (const MeasureComponent& comp : mu.components())
        if (std::holds_alternative<LensHarmonicComponent>(comp) ||
            std::holds_alternative<BergmanComponent>(comp))
            has_quadrature = true;
    const double tol = param(cfg, "tol", has_quadrature ? 1e-4 : 1e-6);
    if (cfg.deltas.size() < 3)
        throw precondition_error("plemelj-scan: at least three --deltas required");
    const JumpScanReport scan = plemelj_scan(mu, std::polar(1.0, theta), r, cfg.deltas, tol);

    Json res = Json::object();
    res.set("zeta", Json::complex_pair(scan.zeta));
    res.set("r", Json::num(scan.r));
    res.set("tol", Json::num(scan.tol));
    res.set("h_at_zeta", Json::complex_pair(scan.h_at_zeta));
    res.set("pv_at_zeta", Json::complex_pair(scan.pv_at_zeta));
    res.set("predicted_inner", Json::complex_pair(scan.predicted_inner));
    res.set("predicted_outer", Json::complex_pair(scan.predicted_outer));
    res.set("inner_limit", Json::complex_pair(scan.inner_limit));
    res.set("outer_limit", Json::complex_pair(scan.outer_limit));
    res.set("jump", Json::complex_pair(scan.jump));
    Json shells = Json::array();
    for (const ShellRecord& s : scan.shells) {
        Json sj = Json::object();
        sj.set("delta", Json::num(s.delta));
        sj.set("inner_fit", Json::complex_pair(s.inner_fit));
        sj.set("outer_fit", Json::complex_pair(s.outer_fit));
        sj.set("pv_at_zeta", Json::complex_pair(s.pv_at_zeta));
        sj.set("predicted_inner", Json::complex_pair(s.predicted_inner));
        sj.set("predicted_outer", Json::complex_pair(s.predicted_outer));
        sj.set("agree_fraction", Json::num(s.agree_fraction));
        Json fp = Json::array();
        for (cplx q : s.flagged_points) fp.push(Json::complex_pair(q));
        sj.set("flagged_points", std::move(fp));
        sj.set("flagged_cover_proxy", Json::num(s.flagged_cover_proxy));
        shells.push(std::move(sj));
    }
    res.set("shells", std::move(shells));
    rep.doc.set("result", std::move(res));

    const double consistency =
        std::abs(scan.predicted_inner - scan.predicted_outer -
                 scan.h_at_zeta * std::conj(scan.zeta));
    add_check(rep, checks, "jump formula consistency", consistency < 1e-12, consistency, 1e-12);
    const double fit_in = std::abs(scan.inner_limit - scan.predicted_inner);
    const double fit_out = std::abs(scan.outer_limit - scan.predicted_outer);
    add_check(rep, checks, "inner limit matches prediction", fit_in < 10.0 * tol, fit_in,
              10.0 * tol);
    add_check(rep, checks, "outer limit matches prediction", fit_out < 10.0 * tol, fit_out,
              10.0 * tol);
    bool trend = true;
    for (std::size_t i = 1; i < scan.shells.size(); ++i)
        if (scan.shells[i].flagged_cover_proxy / scan.shells[i].delta >
            scan.shells[i - 1].flagged_cover_proxy / scan.shells[i - 1].delta + 1e-12)
            trend = false;
    add_check(rep, checks, "flagged capacity proxy / delta nonincreasing", trend, 0.0, 0.0);

    Csv csv({"delta", "inner_fit_re", "inner_fit_im", "outer_fit_re", "outer_fit_im",
             "agree_fraction"});
    for (const ShellRecord& s : scan.shells)
        csv.add_row({s.delta, s.inner_fit.real(), s.inner_fit.imag(), s.outer_fit.real(),
                     s.outer_fit.imag(), s.agree_fraction});
    rep.plots.push_back({"scan.csv", std::move(csv)});
}

void run_bpe_map(const ExperimentConfig& cfg, ExperimentReport& rep, Json& checks) {
    const ComplexMeasure mu = measure_from(cfg);
    const int nmax = static_cast<int>(param(cfg, "nmax", 40, true));
    if (nmax < 4) throw precondition_error("bpe-map: nmax must be at least 4");
    const GridSpec grid = parse_grid(cfg.grid_spec);
    std::vector<int> n_list{nmax / 4, nmax / 2, nmax};
    n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());

    const GramBasis big = gram(mu, nmax);
    std::vector<GramBasis> blocks;
    for (int n : n_list)
        blocks.push_back(n == big.n ? big : gram_leading_block(big, n));

    std::vector<std::string> cols{"re", "im"};
    for (int n : n_list) cols.push_back("k_" + std::to_string(n));
    Csv csv(cols);
    for (int iy = 0; iy < grid.ny; ++iy)
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double re =
                grid.nx == 1 ? grid.re0
                             : grid.re0 + (grid.re1 - grid.re0) * ix / (grid.nx - 1.0);
            const double im =
                grid.ny == 1 ? grid.im0
                             : grid.im0 + (grid.im1 - grid.im0) * iy / (grid.ny - 1.0);
            std::vector<double> row{re, im};
            for (const GramBasis& gb : blocks) row.push_back(point_eval_norm(gb, cplx{re, im}));
            csv.add_row(row);
        }
    Json res = Json::object();
    res.set("grid_points", Json::integer(static_cast<long long>(csv.rows())));
    Json nj = Json::array();
    for (int n : n_list) nj.push(Json::integer(n));
    res.set("degrees", std::move(nj));
    res.set("numerical_rank", Json::integer(static_cast<long long>(big.numerical_rank)));
    rep.doc.set("result", std::move(res));
    rep.plots.push_back({"bpe_map.csv", std::move(csv)});
    add_check(rep, checks, "map computed", true, 0.0, 0.0);
}

void run_p2_wandering(const ExperimentConfig& cfg, ExperimentReport& rep, Json& checks) {
    const ComplexMeasure mu = measure_from(cfg);
    const cplx a{param(cfg, "a_re", 0.0, true), param(cfg, "a_im", 0.0)};
    const int n = static_cast<int>(param(cfg, "n", 20, true));
    const double svtol = param(cfg, "svtol", 1e-8);
    const GramBasis gb = gram(mu, n);
    const WanderingResult w = wandering_dim(gb, a, svtol);
    const SubspaceTruncation sub = subspace_basis(gb, a);
    double vanish = 0.0;
    for (std::size_t j = 0; j < sub.basis_coeffs.cols(); ++j) {
        PolyCoeffs q(sub.basis_coeffs.rows());
        for (std::size_t i = 0; i < q.size(); ++i) q[i] = sub.basis_coeffs(i, j);
        vanish = std::max(vanish, std::abs(poly_eval(q, a)));
    }
    Json res = Json::object();
    res.set("a", Json::complex_pair(a));
    res.set("n", Json::integer(n));
    res.set("dim", Json::integer(w.dim));
    Json sv = Json::array();
    for (std::size_t i = 0; i < w.singular_values.size() && i < 8; ++i)
        sv.push(Json::num(w.singular_values[i]));
    res.set("singular_values", std::move(sv));
    res.set("subspace_dim", Json::integer(static_cast<long long>(sub.dim)));
    res.set("vanishing_residual", Json::num(vanish));
    res.set("a_degenerate", Json::boolean(w.a_degenerate));
    if (w.a_degenerate)
        rep.check_lines.push_back("WARN |a| >= 1: outside the construction's domain");
    if (!w.wandering.empty()) {
        Json wc = Json::array();
        for (cplx v : w.wandering) wc.push(Json::complex_pair(v));
        res.set("wandering_coeffs", std::move(wc));
    }
    rep.doc.set("result", std::move(res));
    add_check(rep, checks, "wandering dimension >= 1", w.dim >= 1, static_cast<double>(w.dim),
              1.0);
    add_check(rep, checks, "subspace vanishes at a", vanish < 1e-8, vanish, 1e-8);
}

void run_hz_verify(const ExperimentConfig& cfg, ExperimentReport& rep, Json& checks) {
    HZParams p;
    p.a = cplx{param(cfg, "a_re", 0.9), param(cfg, "a_im", 0.0)};
    p.alpha = static_cast<int>(param(cfg, "alpha", 5));
    p.c = param(cfg, "c", 0.3);
    const int n = static_cast<int>(param(cfg, "n", 20));
    if (n < 4) throw precondition_error("hz-verify: n must be at least 4");

    Json res = Json::object();
    res.set("a", Json::complex_pair(p.a));
    res.set("alpha", Json::integer(p.alpha));
    res.set("c", Json::num(p.c));
    res.set("n", Json::integer(n));

    // zero structure
    const std::vector<cplx> zeros = g_alpha_zeros(p);
    Json zj = Json::array();
    double max_gz = 0.0;
    for (cplx z : zeros) {
        zj.push(Json::complex_pair(z));
        max_gz = std::max(max_gz, std::abs(g_alpha_eval(p, z)));
    }
    res.set("interior_zeros", std::move(zj));
    res.set("max_abs_g_at_zeros", Json::num(max_gz));
    add_check(rep, checks, "closed-form zeros annihilate g", max_gz < 1e-12, max_gz, 1e-12);
    add_check(rep, checks, "second interior zero exists", interior_zero_exists(p),
              interior_zero_exists(p) ? 1.0 : 0.0, 1.0);

    // orthogonality families
    const int jmax = n / 2;
    const OrthogonalityReport orto = verify_orthogonality(p, jmax, 1e-7);
    auto family_json = [](const std::vector<double>& v) {
        Json a = Json::array();
        for (double x : v) a.push(Json::num(x));
        return a;
    };
    Json oj = Json::object();
    oj.set("family_i", family_json(orto.family_i));
    oj.set("family_ii", family_json(orto.family_ii));
    oj.set("family_iii", family_json(orto.family_iii));
    res.set("orthogonality", std::move(oj));
    add_check(rep, checks, "family (i) boundary means", orto.max_i < 1e-8, orto.max_i, 1e-8);
    add_check(rep, checks, "family (ii) annihilation", orto.max_ii < 1e-8, orto.max_ii, 1e-8);
    add_check(rep, checks, "family (iii) g perp zM", orto.max_iii < 1e-7, orto.max_iii, 1e-7);

    // wandering / generation evidence
    std::vector<int> d_list{5, 10, 20, 40};
    std::vector<int> w_list{n / 2, n, (3 * n) / 2};
    const NotGeneratedReport ng = verify_not_generated(p, d_list, w_list);
    Json gj = Json::object();
    gj.set("z1", Json::complex_pair(ng.z1));
    Json dlist = Json::array();
    for (std::size_t i = 0; i < ng.d_n_list.size(); ++i) {
        Json row = Json::object();
        row.set("n", Json::integer(ng.d_n_list[i]));
        row.set("d1", Json::num(ng.d1[i]));
        row.set("d2", Json::num(ng.d2[i]));
        row.set("d2_bound", Json::num(ng.d2_bound[i]));
        dlist.push(std::move(row));
    }
    gj.set("distances", std::move(dlist));
    Json wlist = Json::array();
    for (std::size_t i = 0; i < ng.wandering_n_list.size(); ++i) {
        Json row = Json::object();
        row.set("n", Json::integer(ng.wandering_n_list[i]));
        row.set("dim", Json::integer(ng.wandering_dims[i]));
        row.set("cosine_vs_g_projection", Json::num(ng.wandering_cosine[i]));
        wlist.push(std::move(row));
    }
    gj.set("wandering", std::move(wlist));
    res.set("generation", std::move(gj));
    rep.doc.set("result", std::move(res));

    add_check(rep, checks, "d1 monotone nonincreasing", ng.d1_monotone, 0.0, 1e-10);
    add_check(rep, checks, "d1 decreased by 10 percent", ng.d1_decreased,
              ng.d1.back() / std::max(ng.d1.front(), 1e-300), 0.9);
    add_check(rep, checks, "d2 above evaluation bound", ng.d2_bound_holds, 0.0, 0.0);
    add_check(rep, checks, "wandering dimension one", ng.wandering_all_one, 0.0, 0.0);
    double min_cos = 1.0;
    for (double cval : ng.wandering_cosine) min_cos = std::min(min_cos, cval);
    add_check(rep, checks, "wandering vector aligned with g projection", min_cos > 0.999,
              min_cos, 0.999);
}

void run_covering_test(const ExperimentConfig& cfg, ExperimentReport& rep, Json& checks) {
    const int instances = static_cast<int>(param(cfg, "instances", 100));
    const int disk_count = static_cast<int>(param(cfg, "disks", 200));
    const int samples = static_cast<int>(param(cfg, "samples", 1000));
    SplitMix64 rng(cfg.seed);
    int disjoint_fail = 0, cover_fail = 0;
    for (int inst = 0; inst < instances; ++inst) {
        std::vector<Disk> disks;
        for (int i = 0; i < disk_count; ++i)
            disks.push_back({{rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)},
                             std::exp(rng.uniform(std::log(0.05), std::log(2.0)))});
        const std::vector<Disk> sel = vitali_3r_select(disks);
        for (std::size_t i = 0; i < sel.size(); ++i)
            for (std::size_t j = i + 1; j < sel.size(); ++j)
                if (std::abs(sel[i].center - sel[j].center) < sel[i].radius + sel[j].radius)
                    ++disjoint_fail;
        for (const Disk& d : disks) {
            // certificate disk, then exact membership of boundary samples
            const Disk* host = nullptr;
            for (const Disk& s : sel)
                if (std::abs(d.center - s.center) + d.radius <= 3.0 * s.radius) {
                    host = &s;
                    break;
                }
            if (!host) {
                ++cover_fail;
                continue;
            }
            for (int q = 0; q < samples; ++q) {
                const cplx pt = d.center + std::polar(d.radius, 2.0 * M_PI * q / samples);
                if (!(std::abs(pt - host->center) <= 3.0 * host->radius)) {
                    ++cover_fail;
                    break;
                }
            }
        }
    }
    Json res = Json::object();
    res.set("instances", Json::integer(instances));
    res.set("disks_per_instance", Json::integer(disk_count));
    res.set("boundary_samples", Json::integer(samples));
    res.set("disjoint_failures", Json::integer(disjoint_fail));
    res.set("cover_failures", Json::integer(cover_fail));
    rep.doc.set("result", std::move(res));
    add_check(rep, checks, "selected disks pairwise disjoint", disjoint_fail == 0,
              static_cast<double>(disjoint_fail), 0.0);
    add_check(rep, checks, "3-dilations cover all inputs", cover_fail == 0,
              static_cast<double>(cover_fail), 0.0);
}

} // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    ExperimentReport rep;
    rep.doc.set("config", config_echo(cfg));
    Json checks = Json::array();
    if (cfg.command == "cauchy-eval")
        run_cauchy_eval(cfg, rep, checks);
    else if (cfg.command == "plemelj-scan")
        run_plemelj_scan(cfg, rep, checks);
    else if (cfg.command == "bpe-map")
        run_bpe_map(cfg, rep, checks);
    else if (cfg.command == "p2-wandering")
        run_p2_wandering(cfg, rep, checks);
    else if (cfg.command == "hz-verify")
        run_hz_verify(cfg, rep, checks);
    else if (cfg.command == "covering-test")
        run_covering_test(cfg, rep, checks);
    else
        throw capability_error("unknown experiment command: " + cfg.command);
    rep.doc.set("checks", std::move(checks));
    rep.doc.set("all_pass", Json::boolean(rep.all_pass));
    return rep;
}

std::vector<NamedCsv> emit_plot_data(const ExperimentReport& report) {
    return report.plots;
}

std::vector<std::string> write_outputs(const ExperimentReport& report,
                                       const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    std::string out = cfg.output_path;
    if (out.empty()) {
        const char* dir = std::getenv("P2MU_OUT_DIR");
        out = (fs::path(dir ? dir : ".") / (cfg.command + "_report.json")).string();
    }
    std::vector<std::string> written;
    {
        if (const fs::path parent = fs::path(out).parent_path(); !parent.empty())
            fs::create_directories(parent);
        std::ofstream f(out, std::ios::binary);
        if (!f) throw error("cannot write report to " + out);
        f << report.doc.dump(2);
        written.push_back(out);
    }
    const fs::path base = fs::path(out).parent_path();
    const std::string stem = fs::path(out).stem().string();
    for (const NamedCsv& csv : report.plots) {
        const std::string path = (base / (stem + "_" + csv.name)).string();
        std::ofstream f(path, std::ios::binary);
        if (!f) throw error("cannot write CSV to " + path);
        f << csv.table.dump();
        written.push_back(path);
    }
    return written;
}

} // namespace p2mu
