#include "nlse/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "nlse/analysis.hpp"
#include "nlse/errors.hpp"
#include "nlse/reference.hpp"

namespace nlse {

namespace {

int grid_n_for(const ExperimentConfig& cfg, int k) {
    return static_cast<int>(std::lround((cfg.b - cfg.a) * std::pow(2.0, k)));
}

}  // namespace

std::vector<SweepCell> expand_cells(const ExperimentConfig& cfg) {
    std::vector<Scheme> schemes = cfg.schemes;
    std::sort(schemes.begin(), schemes.end());
    schemes.erase(std::unique(schemes.begin(), schemes.end()), schemes.end());

    std::vector<double> sigmas = cfg.sigmas;
    std::sort(sigmas.begin(), sigmas.end());
    sigmas.erase(std::unique(sigmas.begin(), sigmas.end()), sigmas.end());

    // (k, tau) pairs shared by every (scheme, sigma) combination
    std::vector<std::pair<int, double>> shape;
    if (cfg.mode == SweepMode::fixed_h) {
        std::vector<double> taus;
        for (double t : cfg.taus) taus.push_back(snap_tau(t, cfg.T));
        std::sort(taus.begin(), taus.end(), std::greater<>());
        taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
        for (double t : taus) shape.emplace_back(cfg.fixed_k, t);
    } else {
        std::vector<int> ks = cfg.ks;
        std::sort(ks.begin(), ks.end());
        ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
        for (int k : ks) {
            const double h = std::pow(2.0, -k);
            const double tau_req = cfg.mode == SweepMode::cfl_diagonal
                                       ? cfg.cfl_fraction * h * h / M_PI
                                       : cfg.tau0 / std::pow(4.0, k - 2);
            shape.emplace_back(k, snap_tau(tau_req, cfg.T));
        }
    }

    std::vector<SweepCell> cells;
    cells.reserve(schemes.size() * sigmas.size() * shape.size());
    for (Scheme s : schemes)
        for (double sigma : sigmas)
            for (const auto& [k, tau] : shape) {
                SweepCell c;
                c.scheme = s;
                c.sigma = sigma;
                c.k = k;
                c.h = std::pow(2.0, -k);
                c.grid_n = grid_n_for(cfg, k);
                c.tau = tau;
                c.n_steps = step_count(cfg.T, tau);
                cells.push_back(c);
            }
    return cells;
}

std::vector<ConvergenceRecord> run_convergence_study(const ExperimentConfig& cfg,
                                                     const std::filesystem::path& cache_dir) {
    validate_config(cfg);
    const std::vector<SweepCell> cells = expand_cells(cfg);

    const Potential pot = make_potential(cfg.potential);
    const InitialData init = make_initial_data(cfg.initial);
    const int q = cfg.oversample_for(cfg.potential);
    const Grid ref_grid(cfg.a, cfg.b, grid_n_for(cfg, cfg.reference.k_e));

    std::map<double, SpectralField> refs;  // sigma -> reference field
    auto reference_for = [&](double sigma) -> const SpectralField& {
        auto it = refs.find(sigma);
        if (it != refs.end()) return it->second;
        ReferenceKey key;
        key.grid = ref_grid;
        key.tau_e = cfg.reference.tau_e;
        key.T = cfg.T;
        key.scheme = Scheme::strang;
        key.beta = cfg.beta;
        key.sigma = sigma;
        key.potential = cfg.potential;
        key.initial = cfg.initial;
        key.oversample = q;
        return refs.emplace(sigma, compute_reference(key, cache_dir)).first->second;
    };

    std::vector<ConvergenceRecord> records;
    records.reserve(cells.size() * (cfg.norm == NormSel::both ? 2 : 1));
    for (const SweepCell& cell : cells) {
        SchemeRun run;
        run.scheme = cell.scheme;
        run.tau = cell.tau;
        run.T = cfg.T;
        run.grid = Grid(cfg.a, cfg.b, cell.grid_n);
        run.potential = pot;
        run.f = Nonlinearity{cfg.beta, cell.sigma};
        run.initial = init;
        run.oversample = q;

        const Trajectory traj = evolve(run);
        const SpectralField& final_field = traj.fields.back();
        const SpectralField& ref = reference_for(cell.sigma);

        auto push = [&](const char* norm_name, int m) {
            ConvergenceRecord r;
            r.scheme = scheme_name(cell.scheme);
            r.potential = cfg.potential;
            r.sigma = cell.sigma;
            r.beta = cfg.beta;
            r.h = cell.h;
            r.tau = cell.tau;
            r.norm = norm_name;
            r.error = error_norms(final_field, ref, m);
            r.n_steps = cell.n_steps;
            r.wall_seconds = traj.wall_seconds;
            records.push_back(std::move(r));
        };
        if (cfg.norm == NormSel::l2 || cfg.norm == NormSel::both) push("l2", 0);
        if (cfg.norm == NormSel::h1 || cfg.norm == NormSel::both) push("h1", 1);
    }
    return records;
}

void write_records_csv(const std::vector<ConvergenceRecord>& records, std::ostream& out,
                       bool zero_wall) {
    out << "scheme,potential,sigma,beta,h,tau,norm,error,n_steps,wall_seconds\n";
    char buf[512];
    for (const ConvergenceRecord& r : records) {
        std::snprintf(buf, sizeof(buf), "%s,%s,%.12g,%.12g,%.12g,%.12g,%s,%.12g,%ld,%.12g\n",
                      r.scheme.c_str(), r.potential.c_str(), r.sigma, r.beta, r.h, r.tau,
                      r.norm.c_str(), r.error, r.n_steps, zero_wall ? 0.0 : r.wall_seconds);
        out << buf;
    }
}

}  // namespace nlse
