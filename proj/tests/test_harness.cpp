#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "nlse/cli.hpp"
#include "nlse/config.hpp"
#include "nlse/plot.hpp"
#include "nlse/reference.hpp"
#include "nlse/spectral.hpp"
#include "nlse/study.hpp"
#include "oracles.hpp"

using namespace nlse;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// Cheap but real sweep: three diagonal cells against an N = 256 reference.
ExperimentConfig small_study_config() {
    ExperimentConfig cfg;
    cfg.schemes = {Scheme::lie};
    cfg.potential = "zero";
    cfg.initial = "gaussian";
    cfg.beta = -1.0;
    cfg.sigmas = {1.0};
    cfg.norm = NormSel::l2;
    cfg.mode = SweepMode::cfl_diagonal;
    cfg.ks = {0, 1, 2};
    cfg.cfl_fraction = 0.9;
    cfg.reference.k_e = 3;
    cfg.reference.tau_e = 1e-3;
    cfg.zero_wall_seconds = true;
    return cfg;
}

ReferenceKey small_key() {
    ReferenceKey key;
    key.grid = Grid(-16.0, 16.0, 64);
    key.tau_e = 0.01;
    key.T = 0.1;
    key.scheme = Scheme::strang;
    key.beta = -1.0;
    key.sigma = 1.0;
    key.potential = "box4";
    key.initial = "gaussian";
    key.oversample = 16;
    return key;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("config text parses every key") {
    const std::string text =
        "# full exercise\n"
        "[experiment]\n"
        "schemes = ltfs, strang\n"
        "potential = box4\n"
        "initial = odd-gaussian\n"
        "beta = -2.5\n"
        "sigmas = 0.5, 1.0\n"
        "norm = both\n"
        "T = 2.0\n"
        "a = -8\n"
        "b = 8\n"
        "mode = fixed-h\n"
        "ks = 3, 4\n"
        "cfl_fraction = 0.8\n"
        "tau0 = 0.02\n"
        "fixed_k = 5\n"
        "taus = 1e-2, 5e-3\n"
        "oversample = 32\n"
        "seed = 7\n"
        "[reference]\n"
        "k_e = 6\n"
        "tau_e = 1e-4\n"
        "[output]\n"
        "csv = \"out.csv\"   # quoted paths are unquoted\n"
        "svg = plot.svg\n"
        "zero_wall_seconds = true\n";
    ExperimentConfig cfg = parse_config_text(text, "cfg");
    CHECK(cfg.schemes == std::vector<Scheme>{Scheme::lie, Scheme::strang});
    CHECK(cfg.potential == "box4");
    CHECK(cfg.initial == "odd-gaussian");
    CHECK(cfg.beta == -2.5);
    CHECK(cfg.sigmas == std::vector<double>{0.5, 1.0});
    CHECK(cfg.norm == NormSel::both);
    CHECK(cfg.T == 2.0);
    CHECK(cfg.a == -8.0);
    CHECK(cfg.b == 8.0);
    CHECK(cfg.mode == SweepMode::fixed_h);
    CHECK(cfg.ks == std::vector<int>{3, 4});
    CHECK(cfg.cfl_fraction == 0.8);
    CHECK(cfg.tau0 == 0.02);
    CHECK(cfg.fixed_k == 5);
    CHECK(cfg.taus == std::vector<double>{1e-2, 5e-3});
    CHECK(cfg.oversample == 32);
    CHECK(cfg.seed == 7);
    CHECK(cfg.reference.k_e == 6);
    CHECK(cfg.reference.tau_e == 1e-4);
    CHECK(cfg.csv_path == "out.csv");
    CHECK(cfg.svg_path == "plot.svg");
    CHECK(cfg.zero_wall_seconds);
}

TEST_CASE("config errors carry file and line context") {
    auto fails_with = [](const std::string& text, const std::string& needle) {
        try {
            (void)parse_config_text(text, "cfg");
            FAIL("expected ConfigError for: " << needle);
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    fails_with("[experiment]\nbeta = -1\nfoo = 3\n", "cfg:3: unknown key in [experiment]: foo");
    fails_with("[outputs]\n", "cfg:1: unknown section [outputs]");
    fails_with("[experiment]\nbeta = 1\nbeta = 2\n", "cfg:3: duplicate key: beta");
    fails_with("beta = 1\n", "cfg:1: key outside any section");
    fails_with("[experiment]\njust words\n", "cfg:2: expected key = value");
    fails_with("[experiment]\nbeta = abc\n", "cfg:2: not a number: abc");
    fails_with("[experiment\n", "cfg:1: unterminated section header");
    fails_with("[experiment]\nschemes =\n", "cfg:2: empty scheme list");
    fails_with("[experiment]\nschemes = rk4\n", "cfg:2: unknown scheme");
    fails_with("[output]\nzero_wall_seconds = maybe\n", "not a boolean");
    CHECK_THROWS_AS(parse_config_file("/nonexistent/sweep.toml"), ConfigError);
}

TEST_CASE("tau snapping divides the horizon exactly") {
    CHECK(snap_tau(0.2, 1.0) == 0.2);
    CHECK(snap_tau(0.04, 1.0) == doctest::Approx(0.04).epsilon(1e-15));
    CHECK(snap_tau(3e-2, 1.0) == doctest::Approx(1.0 / 34.0).epsilon(1e-15));
    CHECK(snap_tau(0.9, 1.0) == 0.5);
    CHECK(snap_tau(2.0, 1.0) == 1.0);  // never exceeds the horizon
    CHECK(snap_tau(0.3, 1.5) == 0.3);
    CHECK_THROWS_AS(snap_tau(0.0, 1.0), InvalidInputError);
    CHECK_THROWS_AS(snap_tau(0.1, 0.0), InvalidInputError);
    // Snapped values always yield integer step counts.
    for (double req : {0.013, 0.7, 1e-3, 0.09999}) {
        const double t = snap_tau(req, 1.0);
        CHECK(t <= req * (1.0 + 1e-12));
        CHECK(step_count(1.0, t) == static_cast<long>(std::lround(1.0 / t)));
    }
}

TEST_CASE("validation enforces the sweep's structural rules") {
    ExperimentConfig ok = small_study_config();
    CHECK_NOTHROW(validate_config(ok));

    auto rejects = [](ExperimentConfig cfg, const std::string& needle) {
        try {
            validate_config(cfg);
            FAIL("expected ConfigError for: " << needle);
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };

    ExperimentConfig bad = ok;
    bad.cfl_fraction = 1.2;
    rejects(bad, "violates tau < h^2/pi");

    bad = ok;
    bad.reference.tau_e = 1e-2;
    rejects(bad, "tau_e must satisfy");

    bad = ok;
    bad.reference.k_e = 2;
    rejects(bad, "h_e must satisfy");

    bad = ok;
    bad.potential = "nope";
    rejects(bad, "unknown potential key");

    bad = ok;
    bad.a = 16.0;
    bad.b = -16.0;
    rejects(bad, "interval requires a < b");

    bad = ok;
    bad.mode = SweepMode::fixed_h;
    bad.taus.clear();
    rejects(bad, "fixed-h sweep needs taus");

    bad = ok;
    bad.sigmas = {1.0, -0.5};
    rejects(bad, "sigma must be positive");

    bad = ok;
    bad.a = -1.0;
    bad.b = 1.0;  // k = 0 gives a 2-node grid
    rejects(bad, "does not give an even grid");
}

TEST_CASE("cell expansion orders and snaps the sweep") {
    ExperimentConfig cfg = small_study_config();
    std::vector<SweepCell> cells = expand_cells(cfg);
    REQUIRE(cells.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(cells[i].k == i);
        CHECK(cells[i].h == std::pow(2.0, -i));
        CHECK(cells[i].grid_n == 32 << i);
        CHECK(cells[i].tau < cells[i].h * cells[i].h / M_PI);
        CHECK(cells[i].tau == snap_tau(cfg.cfl_fraction * cells[i].h * cells[i].h / M_PI, 1.0));
        CHECK(cells[i].n_steps == std::lround(1.0 / cells[i].tau));
    }

    ExperimentConfig fx = cfg;
    fx.mode = SweepMode::fixed_h;
    fx.fixed_k = 2;
    fx.taus = {0.05, 0.2, 0.1, 0.05};  // unsorted, one duplicate
    fx.reference.k_e = 2;  // semi-discrete comparison allows h_e = h
    fx.reference.tau_e = 1e-3;
    fx.schemes = {Scheme::strang, Scheme::lie};
    fx.sigmas = {1.5, 0.5};
    CHECK_NOTHROW(validate_config(fx));
    std::vector<SweepCell> fcells = expand_cells(fx);
    REQUIRE(fcells.size() == 2 * 2 * 3);
    // schemes ascending, sigmas ascending, taus descending within a block
    CHECK(fcells[0].scheme == Scheme::lie);
    CHECK(fcells[0].sigma == 0.5);
    CHECK(fcells[0].tau == 0.2);
    CHECK(fcells[1].tau == 0.1);
    CHECK(fcells[2].tau == 0.05);
    CHECK(fcells[3].sigma == 1.5);
    CHECK(fcells[6].scheme == Scheme::strang);
    for (const auto& c : fcells) CHECK(c.grid_n == 128);

    ExperimentConfig mk = cfg;
    mk.mode = SweepMode::marker_diagonal;
    mk.ks = {2, 3};
    mk.tau0 = 0.04;
    mk.reference.k_e = 4;
    mk.reference.tau_e = 1e-4;
    std::vector<SweepCell> mcells = expand_cells(mk);
    REQUIRE(mcells.size() == 2);
    CHECK(mcells[0].tau == doctest::Approx(0.04).epsilon(1e-15));          // k = 2
    CHECK(mcells[1].tau == doctest::Approx(0.01).epsilon(1e-15));          // k = 3
    CHECK(mcells[1].tau / (mcells[1].h * mcells[1].h) ==
          doctest::Approx(0.64).epsilon(1e-12));  // fixed tau/h^2 ratio
}

TEST_CASE("reference cache round-trips bitwise and heals corruption") {
    const fs::path dir = fresh_dir("nlse_unit_cache");
    ReferenceKey key = small_key();

    SpectralField first = compute_reference(key, dir);
    const fs::path file = dir / cache_file_name(key);
    REQUIRE(fs::exists(file));
    const std::string bytes = slurp(file);
    CHECK(bytes.size() == 76 + 16 * static_cast<std::size_t>(key.grid.n));
    CHECK(bytes.compare(0, 8, "NLSR0001") == 0);

    SpectralField second = compute_reference(key, dir);
    CHECK(slurp(file) == bytes);  // untouched cache
    REQUIRE(first.coeffs.size() == second.coeffs.size());
    CHECK(std::memcmp(first.coeffs.data(), second.coeffs.data(),
                      first.coeffs.size() * sizeof(cplx)) == 0);

    SpectralField direct = read_reference(file, key);
    CHECK(std::memcmp(first.coeffs.data(), direct.coeffs.data(),
                      first.coeffs.size() * sizeof(cplx)) == 0);

    // Key mismatch on an otherwise valid file is rejected.
    ReferenceKey other = key;
    other.sigma = 2.0;
    CHECK_THROWS_AS(read_reference(file, other), CacheError);
    CHECK(cache_file_name(other) != cache_file_name(key));
    ReferenceKey pot = key;
    pot.potential = "zero";
    CHECK(cache_file_name(pot) != cache_file_name(key));

    // Corrupt a metadata byte (inside the stored right endpoint): direct
    // reads fail the consistency check, the cached getter recomputes.
    {
        std::string evil = bytes;
        evil[17] = static_cast<char>(evil[17] ^ 0x40);
        std::ofstream out(file, std::ios::binary | std::ios::trunc);
        out.write(evil.data(), static_cast<std::streamsize>(evil.size()));
    }
    CHECK(slurp(file) != bytes);
    SpectralField healed = compute_reference(key, dir);
    CHECK(std::memcmp(first.coeffs.data(), healed.coeffs.data(),
                      first.coeffs.size() * sizeof(cplx)) == 0);
    CHECK(slurp(file) == bytes);  // rewritten atomically with the good payload

    // Truncation and bad magic are cache errors, not crashes.
    {
        std::ofstream out(file, std::ios::binary | std::ios::trunc);
        out.write(bytes.data(), 50);
    }
    CHECK_THROWS_AS(read_reference(file, key), CacheError);
    {
        std::string evil = bytes;
        evil[0] = 'X';
        std::ofstream out(file, std::ios::binary | std::ios::trunc);
        out.write(evil.data(), static_cast<std::streamsize>(evil.size()));
    }
    CHECK_THROWS_AS(read_reference(file, key), CacheError);
    fs::remove_all(dir);
}

TEST_CASE("cache directory honours the environment override") {
    REQUIRE(setenv("NLSE_CACHE_DIR", "/tmp/somewhere_else", 1) == 0);
    CHECK(default_cache_dir() == fs::path("/tmp/somewhere_else"));
    REQUIRE(unsetenv("NLSE_CACHE_DIR") == 0);
    CHECK(default_cache_dir() == fs::path("nlse_cache"));
}

TEST_CASE("a small study yields one record per cell, deterministically") {
    const fs::path dir = fresh_dir("nlse_unit_study");
    ExperimentConfig cfg = small_study_config();

    std::vector<ConvergenceRecord> recs = run_convergence_study(cfg, dir);
    REQUIRE(recs.size() == 3);
    for (const auto& r : recs) {
        CHECK(r.scheme == "ltfs");
        CHECK(r.potential == "zero");
        CHECK(r.sigma == 1.0);
        CHECK(r.beta == -1.0);
        CHECK(r.norm == "l2");
        CHECK(r.error > 0.0);
        CHECK(r.n_steps == std::lround(1.0 / r.tau));
    }
    CHECK(recs[0].h == 1.0);
    CHECK(recs[1].h == 0.5);
    CHECK(recs[2].h == 0.25);
    CHECK(recs[2].error < recs[0].error);  // refinement helps

    std::ostringstream csv1, csv2;
    write_records_csv(recs, csv1, cfg.zero_wall_seconds);
    const std::string text = csv1.str();
    CHECK(text.rfind("scheme,potential,sigma,beta,h,tau,norm,error,n_steps,wall_seconds\n", 0) ==
          0);
    long lines = 0;
    for (char c : text) lines += (c == '\n');
    CHECK(lines == 4);
    CHECK(text.find(",0\n") != std::string::npos);  // zeroed wall column

    // Same study again: identical records bit for bit (cache hit included).
    std::vector<ConvergenceRecord> again = run_convergence_study(cfg, dir);
    write_records_csv(again, csv2, cfg.zero_wall_seconds);
    CHECK(csv2.str() == text);
    REQUIRE(again.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i)
        CHECK(std::memcmp(&again[i].error, &recs[i].error, sizeof(double)) == 0);

    // Both norms double the record count, l2 before h1 per cell.
    ExperimentConfig both = cfg;
    both.norm = NormSel::both;
    std::vector<ConvergenceRecord> recs2 = run_convergence_study(both, dir);
    REQUIRE(recs2.size() == 6);
    for (std::size_t i = 0; i < recs2.size(); i += 2) {
        CHECK(recs2[i].norm == "l2");
        CHECK(recs2[i + 1].norm == "h1");
        CHECK(recs2[i].h == recs2[i + 1].h);
        CHECK(recs2[i].error <= recs2[i + 1].error);  // H1 dominates L2
    }
    fs::remove_all(dir);
}

TEST_CASE("plots are deterministic with one polyline per series") {
    std::vector<ConvergenceRecord> recs;
    for (double tau : {0.1, 0.05, 0.025}) {
        ConvergenceRecord r;
        r.scheme = "ltfs";
        r.potential = "box4";
        r.sigma = 1.0;
        r.beta = -1.0;
        r.h = 0.0625;
        r.tau = tau;
        r.norm = "l2";
        r.error = 0.5 * tau;
        r.n_steps = std::lround(1.0 / tau);
        recs.push_back(r);
    }

    std::ostringstream svg1, svg2;
    emit_plot(recs, "sweep", svg1);
    emit_plot(recs, "sweep", svg2);
    const std::string text = svg1.str();
    CHECK(svg2.str() == text);

    std::size_t polylines = 0, pos = 0;
    while ((pos = text.find("<polyline", pos)) != std::string::npos) {
        ++polylines;
        pos += 9;
    }
    CHECK(polylines == 1);
    CHECK(text.find("stroke-dasharray=\"6 3\"") != std::string::npos);   // slope-1 guide
    CHECK(text.find("stroke-dasharray=\"2 3\"") == std::string::npos);   // no strang data

    // A strang series adds its own polyline and the slope-2 guide.
    std::vector<ConvergenceRecord> two = recs;
    for (double tau : {0.1, 0.05}) {
        ConvergenceRecord r = recs[0];
        r.scheme = "stfs";
        r.tau = tau;
        r.error = 0.2 * tau * tau;
        two.push_back(r);
    }
    std::ostringstream svg3;
    emit_plot(two, "sweep", svg3);
    const std::string text2 = svg3.str();
    polylines = 0;
    pos = 0;
    while ((pos = text2.find("<polyline", pos)) != std::string::npos) {
        ++polylines;
        pos += 9;
    }
    CHECK(polylines == 2);
    CHECK(text2.find("stroke-dasharray=\"2 3\"") != std::string::npos);

    std::ostringstream sink;
    CHECK_THROWS_AS(emit_plot({}, "empty", sink), InvalidInputError);
    std::vector<ConvergenceRecord> bad = recs;
    bad[0].error = 0.0;
    CHECK_THROWS_AS(emit_plot(bad, "bad", sink), InvalidInputError);
}

TEST_CASE("command dispatch maps failures to stable exit codes") {
    CHECK(cli_dispatch({"converge", "--config", "missing.toml"}) == 1);
    CHECK(cli_dispatch({"definitely-not-a-subcommand"}) == 1);
    CHECK(cli_dispatch({}) == 1);
    CHECK(cli_dispatch({"run", "--scheme", "rk4", "--tau", "1e-2"}) == 1);

    const fs::path dir = fresh_dir("nlse_unit_cli");
    const fs::path csv = dir / "rco.csv";
    CHECK(cli_dispatch({"rco", "--N", "64", "--tau", "1e-3", "--n", "5", "--out",
                        csv.string()}) == 0);
    CHECK(slurp(csv).rfind("l,mu,abs_delta,abs_S,abs_product\n", 0) == 0);

    // Numerical blow-up is distinguished from usage errors.
    CHECK(cli_dispatch({"run", "--scheme", "ewi", "--potential", "harmonic", "--sigma", "1",
                        "--beta", "-1", "--N", "64", "--tau", "1", "--T", "1024"}) == 2);
    fs::remove_all(dir);
}

// Gates use of the desk-scale reference against the fine one. Opt-in: the
// fine reference is ~10^6 steps at N=16384 (hours when the cache is cold),
// so the case skips unless NLSE_SELFCHECK_FINE is set.
//
// Tolerance basis: at q = 16 the box potential's quadrature-alias floor
// dominates the desk reference's own error and scales like C/N. Measured
// against an N = 8192, tau_e = 2.5e-6 target: N = 2048 gap 2.684e-4 and
// N = 4096 gap 8.945e-5, ratio 3.0003 vs the 3.0 the C/N model predicts
// (C = 0.73, matching the floors the convergence ladders hit). That puts
// the desk-vs-fine gap at C*(1/4096 - 1/16384) = 1.34e-4; the bound below
// leaves ~50% headroom. The q = 16 ladders resolve nothing below 5e-3, so
// this floor is invisible to every study that uses the desk reference.
TEST_CASE("desk and fine references agree in L2") {
    if (!std::getenv("NLSE_SELFCHECK_FINE")) {
        MESSAGE("skipped: set NLSE_SELFCHECK_FINE=1 to run (computes the fine reference)");
        return;
    }
    ReferenceKey desk;
    desk.grid = Grid(-16.0, 16.0, 4096);
    desk.tau_e = 1e-5;
    desk.potential = "box4";
    desk.initial = "gaussian";
    desk.oversample = 16;
    ReferenceKey fine = desk;
    fine.grid = Grid(-16.0, 16.0, 16384);
    fine.tau_e = 1e-6;
    const SpectralField d = compute_reference(desk, default_cache_dir());
    const SpectralField f = compute_reference(fine, default_cache_dir());
    CHECK(sobolev_error(d, f, 0) < 2e-4);
}

}  // TEST_SUITE
