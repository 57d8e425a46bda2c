#include "nlse/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "CLI11.hpp"
#include "nlse/analysis.hpp"
#include "nlse/config.hpp"
#include "nlse/errors.hpp"
#include "nlse/fft.hpp"
#include "nlse/plot.hpp"
#include "nlse/reference.hpp"
#include "nlse/spectral.hpp"
#include "nlse/study.hpp"

namespace nlse {

namespace {

void apply_preset(ReferenceSpec& ref, const std::string& preset) {
    if (preset == "desk") {
        ref.k_e = 7;
        ref.tau_e = 1e-5;
    } else if (preset == "fine") {
        ref.k_e = 9;
        ref.tau_e = 1e-6;
    }
}

int do_run(const std::string& scheme, const std::string& potential, const std::string& initial,
           double sigma, double beta, int n, double a, double b, double tau, double T,
           int oversample) {
    SchemeRun run;
    run.scheme = parse_scheme(scheme);
    run.tau = snap_tau(tau, T);
    run.T = T;
    run.grid = Grid(a, b, n);
    run.potential = make_potential(potential);
    run.f = Nonlinearity{beta, sigma};
    run.initial = make_initial_data(initial);
    run.oversample = oversample > 0 ? oversample
                     : potential == "box4" ? 16
                                           : 8;

    const Trajectory traj = evolve(run, {0.0});
    const SpectralField& first = traj.fields.front();
    const SpectralField& last = traj.fields.back();
    const double m0 = sobolev_norm(first, 0);
    const double m1 = sobolev_norm(last, 0);

    std::printf("scheme        %s\n", scheme_name(run.scheme).c_str());
    std::printf("grid          N=%d on [%g, %g]\n", n, a, b);
    std::printf("tau           %.12g (%ld steps to T=%g)\n", run.tau, traj.n_steps, T);
    std::printf("final L2      %.12g\n", m1);
    std::printf("final H1      %.12g\n", sobolev_norm(last, 1));
    std::printf("mass drift    %.6e (relative)\n", std::abs(m1 - m0) / m0);
    std::printf("wall seconds  %.3f\n", traj.wall_seconds);
    return 0;
}

int do_reference(const std::string& potential, const std::string& initial, double sigma,
                 double beta, double T, double a, double b, const std::string& preset, int k_e,
                 double tau_e, int oversample, const std::string& cache_dir) {
    ReferenceSpec spec;
    apply_preset(spec, preset);
    if (k_e >= 0) spec.k_e = k_e;
    if (tau_e > 0.0) spec.tau_e = tau_e;

    const int n = static_cast<int>(std::lround((b - a) * std::pow(2.0, spec.k_e)));
    ReferenceKey key;
    key.grid = Grid(a, b, n);
    key.tau_e = spec.tau_e;
    key.T = T;
    key.scheme = Scheme::strang;
    key.beta = beta;
    key.sigma = sigma;
    key.potential = potential;
    key.initial = initial;
    key.oversample = oversample > 0 ? oversample
                     : potential == "box4" ? 16
                                           : 8;

    const std::filesystem::path dir = cache_dir.empty() ? default_cache_dir() : std::filesystem::path(cache_dir);
    const SpectralField field = compute_reference(key, dir);
    std::printf("cache file  %s\n", (dir / cache_file_name(key)).string().c_str());
    std::printf("L2 norm     %.12g\n", sobolev_norm(field, 0));
    std::printf("H1 norm     %.12g\n", sobolev_norm(field, 1));
    return 0;
}

int do_converge(const std::string& config_path, const std::string& cache_dir,
                const std::string& preset, bool zero_wall) {
    ExperimentConfig cfg = parse_config_file(config_path);
    apply_preset(cfg.reference, preset);
    if (zero_wall) cfg.zero_wall_seconds = true;

    const std::filesystem::path dir = cache_dir.empty() ? default_cache_dir() : std::filesystem::path(cache_dir);
    const auto records = run_convergence_study(cfg, dir);

    if (cfg.csv_path.empty()) {
        write_records_csv(records, std::cout, cfg.zero_wall_seconds);
    } else {
        std::ofstream out(cfg.csv_path, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write csv: " + cfg.csv_path);
        write_records_csv(records, out, cfg.zero_wall_seconds);
        std::printf("csv  %s (%zu records)\n", cfg.csv_path.c_str(), records.size());
    }
    if (!cfg.svg_path.empty()) {
        std::ofstream out(cfg.svg_path, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write svg: " + cfg.svg_path);
        emit_plot(records, "error vs tau", out);
        std::printf("svg  %s\n", cfg.svg_path.c_str());
    }

    // per-series least-squares order, informational
    std::map<std::tuple<std::string, double, std::string>, std::vector<std::pair<double, double>>>
        series;
    for (const auto& r : records) series[{r.scheme, r.sigma, r.norm}].emplace_back(r.tau, r.error);
    for (const auto& [key, pts] : series) {
        if (pts.size() < 2) continue;
        const auto& [scheme, sigma, norm] = key;
        std::printf("slope  %s sigma=%g %s: %.3f (%zu points)\n", scheme.c_str(), sigma,
                    norm.c_str(), estimate_order(pts), pts.size());
    }
    return 0;
}

int do_rco(int n_modes, double a, double b, double tau, double tau_over_cfl, long n_steps,
           const std::string& out_path) {
    const Grid grid(a, b, n_modes);
    double tau_eff = tau;
    if (!(tau_eff > 0.0)) {
        const double h = grid.spacing();
        tau_eff = tau_over_cfl * h * h / M_PI;
    }
    const RcoTable table = rco_diagnostics(grid, tau_eff, n_steps);
    if (out_path.empty()) {
        write_rco_csv(table, std::cout);
    } else {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write csv: " + out_path);
        write_rco_csv(table, out);
        std::printf("csv          %s\n", out_path.c_str());
    }
    std::fprintf(stderr, "tau          %.12g\n", tau_eff);
    std::fprintf(stderr, "max product  %.12g\n", table.max_product);
    std::fprintf(stderr, "pi*tau/2     %.12g\n", M_PI * tau_eff / 2.0);
    return 0;
}

// ---- selftest properties ------------------------------------------------

struct Check {
    int passed = 0;
    int failed = 0;

    void report(const char* name, bool ok, const std::string& detail = "") {
        if (ok) {
            ++passed;
            std::printf("ok    %s\n", name);
        } else {
            ++failed;
            std::printf("FAIL  %s%s%s\n", name, detail.empty() ? "" : ": ", detail.c_str());
        }
    }
};

SpectralField random_field(const Grid& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SpectralField f(g);
    for (auto& c : f.coeffs) c = cplx(u(rng), u(rng));
    return f;
}

int do_selftest(unsigned long seed) {
    std::mt19937_64 rng(seed);
    Check ck;

    {  // transform round trip on random fields
        double worst = 0.0;
        for (int n : {8, 32, 128}) {
            const Grid g(-16.0, 16.0, n);
            for (int rep = 0; rep < 5; ++rep) {
                const SpectralField f = random_field(g, rng);
                const SpectralField f2 = forward_transform(inverse_transform(f));
                for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(f.coeffs[i] - f2.coeffs[i]));
            }
        }
        ck.report("transform round trip", worst < 1e-12, "worst " + std::to_string(worst));
    }

    {  // centered/native reordering is an involution
        bool ok = true;
        for (int n : {8, 64}) {
            const Grid g(-1.0, 1.0, n);
            const SpectralField f = random_field(g, rng);
            std::vector<cplx> w(f.coeffs);
            shift_half(w.data(), w.data(), n);
            shift_half(w.data(), w.data(), n);
            ok = ok && std::memcmp(w.data(), f.coeffs.data(), sizeof(cplx) * n) == 0;
        }
        ck.report("mode reordering involution", ok);
    }

    {  // single coefficient synthesizes its plane wave
        const Grid g(-16.0, 16.0, 32);
        SpectralField f(g);
        f.at(1) = 1.0;
        const SampledField s = inverse_transform(f);
        double worst = 0.0;
        for (int j = 0; j < g.n; ++j) {
            const double arg = g.mode(1) * (g.node(j) - g.a);
            worst = std::max(worst, std::abs(s.values[j] - cplx(std::cos(arg), std::sin(arg))));
        }
        ck.report("plane-wave synthesis", worst < 1e-12);
    }

    {  // free flight is an isometry in every Sobolev norm
        const Grid g(-16.0, 16.0, 64);
        SpectralField f = random_field(g, rng);
        const double n0 = sobolev_norm(f, 0), n1 = sobolev_norm(f, 1);
        free_flight(f, 0.37);
        const bool ok = std::abs(sobolev_norm(f, 0) - n0) < 1e-12 * n0 &&
                        std::abs(sobolev_norm(f, 1) - n1) < 1e-12 * n1;
        ck.report("free flight isometry", ok);
    }

    {  // a field is at distance zero from its zero-padded embedding
        double worst = 0.0;
        for (int rep = 0; rep < 10; ++rep) {
            const Grid g(-16.0, 16.0, 32);
            const SpectralField f = random_field(g, rng);
            worst = std::max(worst, error_norms(f, embed(f, 64), 1));
        }
        ck.report("embedding distance zero", worst <= 1e-15);
    }

    {  // triangle inequality for the coefficient-space error
        bool ok = true;
        const Grid g(-16.0, 16.0, 64);
        for (int rep = 0; rep < 10 && ok; ++rep) {
            const SpectralField u = random_field(g, rng), v = random_field(g, rng),
                                w = random_field(g, rng);
            for (int m : {0, 1})
                ok = ok && error_norms(u, w, m) <=
                               error_norms(u, v, m) + error_norms(v, w, m) + 1e-12;
        }
        ck.report("error triangle inequality", ok);
    }

    {  // odd initial data keeps u_l = -u_{-l}
        const SpectralField f = sample_initial(make_initial_data("odd-gaussian"),
                                               Grid(-16.0, 16.0, 256), 8);
        double worst = std::abs(f.at(0));
        for (int l = 1; l < 128; ++l) worst = std::max(worst, std::abs(f.at(l) + f.at(-l)));
        ck.report("odd symmetry of projected data", worst < 1e-12);
    }

    {  // zero-time nonlinear flow is the identity up to round trip
        const Grid g(-16.0, 16.0, 64);
        const SpectralField f = random_field(g, rng);
        const SpectralField f2 =
            nonlinear_flow(f, 0.0, make_potential("box4"), Nonlinearity{-1.0, 1.0}, 8);
        double worst = 0.0;
        for (int i = 0; i < g.n; ++i) worst = std::max(worst, std::abs(f.coeffs[i] - f2.coeffs[i]));
        ck.report("zero-time flow identity", worst < 1e-13);
    }

    {  // phase-sum product bound under tau < h^2/pi
        std::uniform_real_distribution<double> frac(0.05, 0.99);
        std::uniform_int_distribution<int> pick(0, 4);
        const int sizes[5] = {64, 128, 256, 512, 1024};
        bool ok = true;
        double worst_ratio = 0.0;
        for (int rep = 0; rep < 100 && ok; ++rep) {
            const Grid g(-16.0, 16.0, sizes[pick(rng)]);
            const double h = g.spacing();
            const double tau = frac(rng) * h * h / M_PI;
            for (long n : {1L, 10L, 1000L}) {
                const RcoTable t = rco_diagnostics(g, tau, n);
                const double bound = M_PI * tau / 2.0;
                worst_ratio = std::max(worst_ratio, t.max_product / bound);
                ok = ok && t.max_product <= bound * (1.0 + 1e-12);
            }
        }
        ck.report("phase-sum bound under the step gate", ok,
                  "worst ratio " + std::to_string(worst_ratio));
    }

    {  // the bound fails without the gate: tau = 4 h^2 witness
        const Grid g(-16.0, 16.0, 512);
        const double h = g.spacing();
        const double tau = 4.0 * h * h;
        const double bound = M_PI * tau / 2.0;
        bool found = false;
        for (long n : {50L, 100L, 200L, 500L, 1000L, 2000L}) {
            const RcoTable t = rco_diagnostics(g, tau, n);
            if (t.max_product > bound) {
                found = true;
                break;
            }
        }
        ck.report("phase-sum bound violated off the gate", found);
    }

    {  // deterministic evolution: identical runs, identical bits
        SchemeRun run;
        run.scheme = Scheme::lie;
        run.tau = 1e-2;
        run.T = 0.1;
        run.grid = Grid(-16.0, 16.0, 64);
        run.potential = make_potential("box4");
        run.f = Nonlinearity{-1.0, 1.0};
        run.initial = make_initial_data("gaussian");
        run.oversample = 16;
        const Trajectory t1 = evolve(run), t2 = evolve(run);
        const auto& c1 = t1.fields.back().coeffs;
        const auto& c2 = t2.fields.back().coeffs;
        ck.report("evolution determinism",
                  std::memcmp(c1.data(), c2.data(), sizeof(cplx) * c1.size()) == 0);
    }

    {  // snapped steps divide T exactly and never exceed the request
        std::uniform_real_distribution<double> u(1e-4, 0.5);
        bool ok = true;
        for (int rep = 0; rep < 50 && ok; ++rep) {
            const double req = u(rng);
            const double tau = snap_tau(req, 1.0);
            const double steps = 1.0 / tau;
            ok = tau <= req + 1e-15 && std::abs(steps - std::round(steps)) < 1e-9;
        }
        ck.report("tau snapping", ok);
    }

    {  // exact slopes for exact power laws
        const double s1 = estimate_order({{0.1, 0.05}, {0.01, 0.005}});
        const double s2 = estimate_order({{0.1, 3e-2}, {0.01, 3e-4}});
        ck.report("order estimation on power laws",
                  std::abs(s1 - 1.0) < 1e-12 && std::abs(s2 - 2.0) < 1e-12);
    }

    {  // phi1 branches agree where they meet
        const cplx z(0.0, 0.5);
        const cplx direct = (std::exp(z) - cplx(1.0, 0.0)) / z;
        bool ok = std::abs(phi1(cplx(0.0, 0.0)) - cplx(1.0, 0.0)) == 0.0;
        ok = ok && std::abs(phi1(z) - direct) < 1e-12;
        const cplx zs(9e-4, 0.0);
        ok = ok && std::abs(phi1(zs) - (std::exp(zs) - 1.0) / zs) < 1e-12;
        ck.report("phi1 branch consistency", ok);
    }

    std::printf("selftest: %d passed, %d failed\n", ck.passed, ck.failed);
    return ck.failed == 0 ? 0 : 1;
}

}  // namespace

int cli_dispatch(std::vector<std::string> args) {
    CLI::App app{"Splitting and exponential-integrator toolkit for the 1D nonlinear "
                 "Schrodinger equation with rough potentials"};
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "Run one scheme once and print final norms");
    std::string r_scheme = "ltfs", r_pot = "zero", r_init = "gaussian";
    double r_sigma = 1.0, r_beta = -1.0, r_a = -16.0, r_b = 16.0, r_tau = 0.0, r_T = 1.0;
    int r_n = 512, r_q = 0;
    run_cmd->add_option("--scheme", r_scheme, "ltfs | stfs | ewi")->capture_default_str();
    run_cmd->add_option("--potential", r_pot, "potential key")->capture_default_str();
    run_cmd->add_option("--initial", r_init, "initial-data key")->capture_default_str();
    run_cmd->add_option("--sigma", r_sigma, "nonlinearity exponent")->capture_default_str();
    run_cmd->add_option("--beta", r_beta, "nonlinearity strength")->capture_default_str();
    run_cmd->add_option("--N", r_n, "grid points")->capture_default_str();
    run_cmd->add_option("--a", r_a, "left endpoint")->capture_default_str();
    run_cmd->add_option("--b", r_b, "right endpoint")->capture_default_str();
    run_cmd->add_option("--tau", r_tau, "time step (snapped to divide T)")->required();
    run_cmd->add_option("--T", r_T, "final time")->capture_default_str();
    run_cmd->add_option("--oversample", r_q, "quadrature factor (0 = automatic)")
        ->capture_default_str();

    // reference
    auto* ref_cmd = app.add_subcommand("reference", "Compute or load a cached reference solution");
    std::string e_pot = "zero", e_init = "gaussian", e_preset = "desk", e_cache;
    double e_sigma = 1.0, e_beta = -1.0, e_T = 1.0, e_a = -16.0, e_b = 16.0, e_tau_e = 0.0;
    int e_k_e = -1, e_q = 0;
    ref_cmd->add_option("--potential", e_pot, "potential key")->capture_default_str();
    ref_cmd->add_option("--initial", e_init, "initial-data key")->capture_default_str();
    ref_cmd->add_option("--sigma", e_sigma, "nonlinearity exponent")->capture_default_str();
    ref_cmd->add_option("--beta", e_beta, "nonlinearity strength")->capture_default_str();
    ref_cmd->add_option("--T", e_T, "final time")->capture_default_str();
    ref_cmd->add_option("--a", e_a, "left endpoint")->capture_default_str();
    ref_cmd->add_option("--b", e_b, "right endpoint")->capture_default_str();
    ref_cmd->add_option("--preset", e_preset, "desk (h=2^-7, tau=1e-5) or fine (2^-9, 1e-6)")
        ->check(CLI::IsMember({"desk", "fine"}))
        ->capture_default_str();
    ref_cmd->add_option("--k-e", e_k_e, "override: h = 2^-k_e");
    ref_cmd->add_option("--tau-e", e_tau_e, "override: reference step");
    ref_cmd->add_option("--oversample", e_q, "quadrature factor (0 = automatic)")
        ->capture_default_str();
    ref_cmd->add_option("--cache-dir", e_cache, "cache directory (default $NLSE_CACHE_DIR)");

    // converge
    auto* conv_cmd = app.add_subcommand("converge", "Run a convergence study from a config file");
    std::string c_config, c_cache, c_preset;
    bool c_zero_wall = false;
    conv_cmd->add_option("--config", c_config, "config file")->required();
    conv_cmd->add_option("--cache-dir", c_cache, "cache directory (default $NLSE_CACHE_DIR)");
    conv_cmd->add_option("--preset", c_preset, "override reference: desk or fine")
        ->check(CLI::IsMember({"desk", "fine"}));
    conv_cmd->add_flag("--zero-wall", c_zero_wall, "write wall_seconds as 0 for byte-stable CSV");

    // rco
    auto* rco_cmd = app.add_subcommand("rco", "Emit the per-mode phase-cancellation table");
    double o_a = -16.0, o_b = 16.0, o_tau = 0.0, o_frac = 0.9;
    int o_n_modes = 512;
    long o_steps = 1000;
    std::string o_out;
    rco_cmd->add_option("--N", o_n_modes, "grid points")->capture_default_str();
    rco_cmd->add_option("--a", o_a, "left endpoint")->capture_default_str();
    rco_cmd->add_option("--b", o_b, "right endpoint")->capture_default_str();
    auto* tau_opt = rco_cmd->add_option("--tau", o_tau, "explicit time step");
    rco_cmd->add_option("--tau-over-cfl", o_frac, "tau as a fraction of h^2/pi")
        ->excludes(tau_opt)
        ->capture_default_str();
    rco_cmd->add_option("--n", o_steps, "number of steps n in the phase sum")
        ->capture_default_str();
    rco_cmd->add_option("--out", o_out, "CSV path (default stdout)");

    // selftest
    auto* self_cmd = app.add_subcommand("selftest", "Run the property suite");
    unsigned long s_seed = 424243;
    self_cmd->add_option("--seed", s_seed, "seed for randomized properties")
        ->capture_default_str();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));

        if (run_cmd->parsed())
            return do_run(r_scheme, r_pot, r_init, r_sigma, r_beta, r_n, r_a, r_b, r_tau, r_T,
                          r_q);
        if (ref_cmd->parsed())
            return do_reference(e_pot, e_init, e_sigma, e_beta, e_T, e_a, e_b, e_preset, e_k_e,
                                e_tau_e, e_q, e_cache);
        if (conv_cmd->parsed()) return do_converge(c_config, c_cache, c_preset, c_zero_wall);
        if (rco_cmd->parsed()) return do_rco(o_n_modes, o_a, o_b, o_tau, o_frac, o_steps, o_out);
        if (self_cmd->parsed()) return do_selftest(s_seed);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const DivergenceError& e) {
        std::fprintf(stderr, "divergence: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

}  // namespace nlse
