#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nlse/config.hpp"

namespace nlse {

/// One sweep cell: a (scheme, sigma, grid, tau) combination to run.
struct SweepCell {
    Scheme scheme = Scheme::lie;
    double sigma = 1.0;
    int k = 0;  // h = 2^-k
    double h = 0.0;
    int grid_n = 0;
    double tau = 0.0;  // snapped
    long n_steps = 0;
};

/// Expands a validated config into its cells, sorted by (scheme, sigma, h
/// descending i.e. k ascending, tau descending).
std::vector<SweepCell> expand_cells(const ExperimentConfig& cfg);

struct ConvergenceRecord {
    std::string scheme;
    std::string potential;
    double sigma = 0.0;
    double beta = 0.0;
    double h = 0.0;
    double tau = 0.0;
    std::string norm;  // "l2" | "h1"
    double error = 0.0;
    long n_steps = 0;
    double wall_seconds = 0.0;
};

/// Runs every cell against the configured reference (computed or loaded
/// from cache_dir) and measures the requested norms. One record per
/// (cell, norm), sorted like the cells with l2 before h1.
std::vector<ConvergenceRecord> run_convergence_study(const ExperimentConfig& cfg,
                                                     const std::filesystem::path& cache_dir);

/// Header exactly `scheme,potential,sigma,beta,h,tau,norm,error,n_steps,wall_seconds`.
/// zero_wall writes 0 in the last column for byte-stable output.
void write_records_csv(const std::vector<ConvergenceRecord>& records, std::ostream& out,
                       bool zero_wall);

}  // namespace nlse
