#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nlse/grid.hpp"
#include "nlse/physics.hpp"

namespace nlse {

enum class Scheme { lie, strang, ewi };

/// "ltfs" | "strang"/"stfs" | "ewi".
Scheme parse_scheme(const std::string& name);
std::string scheme_name(Scheme s);

/// In-place exp(-i t mu_l^2) multiplier (exact free propagator, an isometry
/// in every H^m).
void free_flight(SpectralField& psi, double t);

/// phi1(z) = (exp(z) - 1)/z, phi1(0) = 1. Series branch near 0 avoids
/// cancellation.
cplx phi1(cplx z);

/// One full problem setup: scheme, step size, horizon, grid, physics,
/// quadrature factor.
struct SchemeRun {
    Scheme scheme = Scheme::lie;
    double tau = 0.0;
    double T = 0.0;
    Grid grid;
    Potential potential;
    Nonlinearity f;
    InitialData initial;
    int oversample = 8;
};

/// round(T/tau), rejecting non-integer step counts (1e-9 relative gate).
long step_count(double T, double tau);

struct Trajectory {
    std::vector<double> times;
    std::vector<SpectralField> fields;
    double wall_seconds = 0.0;
    long n_steps = 0;
};

/// Time stepper for i d/dt psi = -psi_xx + V psi + f(|psi|^2) psi on a
/// fixed grid. Pointwise products (the nonlinear phase flow, the EWI source
/// term) are evaluated on a grid oversampled by q before projecting back,
/// so the projection sees the product's spectrum rather than its alias.
/// Potential node values and per-tau phase tables are cached across steps.
class Stepper {
  public:
    Stepper(Grid grid, Potential v, Nonlinearity f, int oversample);
    ~Stepper();
    Stepper(Stepper&&) noexcept;
    Stepper& operator=(Stepper&&) noexcept;

    const Grid& grid() const;
    int oversample() const;

    /// P_N Phi_B^tau: synthesize on the oversampled grid, apply the exact
    /// pointwise phase, project back to the stepper's modes.
    void nonlinear_flow(SpectralField& psi, double tau);

    /// One step of the chosen scheme with step size tau.
    void step(Scheme s, SpectralField& psi, double tau);

    /// n_steps steps. Every 1024 steps (and at the end) coefficients are
    /// checked for NaN/Inf or L^2 growth beyond 1e3x the initial norm;
    /// violations raise DivergenceError naming the global step index
    /// (step_offset counts steps taken before this call).
    void evolve(Scheme s, SpectralField& psi, double tau, long n_steps, long step_offset = 0);

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One-shot steps matching Stepper::step; convenient for tests and small
/// studies (each call builds its own transform plans).
SpectralField lie_step(const SpectralField& psi, const SchemeRun& run);
SpectralField strang_step(const SpectralField& psi, const SchemeRun& run);
SpectralField ewi_step(const SpectralField& psi, const SchemeRun& run);
SpectralField nonlinear_flow(const SpectralField& psi, double tau, const Potential& v,
                             const Nonlinearity& f, int oversample);

/// Full evolution from P_N psi_0 over round(T/tau) steps, recording the
/// field at the requested times (each must be an integer multiple of tau up
/// to T, within 1e-9 relative; the final time is always recorded).
Trajectory evolve(const SchemeRun& run, const std::vector<double>& snapshot_times = {});

}  // namespace nlse
