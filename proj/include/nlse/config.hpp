#pragma once

#include <string>
#include <vector>

#include "nlse/integrators.hpp"

namespace nlse {

enum class SweepMode {
    cfl_diagonal,     // tau = cfl_fraction * h^2/pi per grid; every pair must satisfy tau < h^2/pi
    marker_diagonal,  // tau = tau0 / 4^(k-2) on h = 2^-k (tau ~ h^2 with a fixed ratio)
    fixed_h           // one grid, explicit tau list
};

enum class NormSel { l2, h1, both };

/// Reference ("exact") solution resolution: STFS at h_e = 2^-k_e,
/// step tau_e. Presets: desk (k_e=7, tau_e=1e-5) and fine (k_e=9,
/// tau_e=1e-6); the fine preset costs ~10^6 steps at N=16384.
struct ReferenceSpec {
    int k_e = 7;
    double tau_e = 1e-5;

    double h() const;
    int grid_n() const;  // (b-a)/h with the standard interval
};

struct ExperimentConfig {
    std::vector<Scheme> schemes{Scheme::lie};
    std::string potential = "zero";
    std::string initial = "gaussian";
    double beta = -1.0;
    std::vector<double> sigmas{1.0};
    NormSel norm = NormSel::l2;
    double T = 1.0;
    double a = -16.0;
    double b = 16.0;

    SweepMode mode = SweepMode::cfl_diagonal;
    std::vector<int> ks{3, 4, 5};   // diagonal modes: h = 2^-k family
    double cfl_fraction = 0.9;      // cfl-diagonal
    double tau0 = 0.04;             // marker-diagonal
    int fixed_k = 2;                // fixed-h grid
    std::vector<double> taus;       // fixed-h tau list (before snapping)

    int oversample = 0;             // 0 = auto: 16 for box4, 8 otherwise
    ReferenceSpec reference;

    std::string csv_path;
    std::string svg_path;
    bool zero_wall_seconds = false;
    unsigned long seed = 424243;

    int oversample_for(const std::string& potential_key) const;
};

/// Flat sectioned key/value format (INI-style, '#' comments). Unknown
/// sections or keys are errors. Throws ConfigError with file/line context.
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);
ExperimentConfig parse_config_file(const std::string& path);

/// Structural checks beyond parsing: known potential/initial/scheme keys,
/// positive T and taus, snapped step counts, reference dominance
/// (h_e <= min h / 2 and tau_e <= min tau / 10 for diagonal sweeps; fixed-h
/// sweeps compare semi-discretely and only need h_e <= h), and the strict
/// tau < h^2/pi gate for every cfl-diagonal cell. Throws ConfigError.
void validate_config(const ExperimentConfig& cfg);

/// Largest tau <= tau_req with T/tau an exact integer: T / ceil(T/tau_req).
double snap_tau(double tau_req, double T);

}  // namespace nlse
