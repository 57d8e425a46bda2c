#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nlse/grid.hpp"

namespace nlse {

/// Power nonlinearity f(rho) = beta * rho^sigma acting on rho = |psi|^2.
/// f(0) = 0 for every sigma > 0, also fractional ones.
struct Nonlinearity {
    double beta = 0.0;
    double sigma = 1.0;

    /// rho < 0 is rejected (a modulus squared cannot be negative).
    double operator()(double rho) const;
};

/// Real potential V(x), either a closed form or samples on a stated grid.
/// Sampled potentials are band-limited by construction: requesting values
/// on a finer grid goes through their trigonometric interpolant, while
/// pointwise evaluation off the stated nodes is an error. Discontinuous
/// potentials therefore must be closed forms, which get sampled on the
/// oversampled grid at step time.
class Potential {
  public:
    Potential();  // zero potential
    static Potential closed_form(std::string key, std::function<double(double)> fn);
    static Potential from_samples(std::string key, const Grid& grid, std::vector<double> values);

    double operator()(double x) const;
    const std::string& key() const { return key_; }
    bool sampled() const { return !samples_.empty(); }

    /// Values at the nodes of `fine`. Closed forms evaluate directly;
    /// sampled potentials synthesize their interpolant (fine.n must be a
    /// multiple of the stated grid's n on the same interval).
    std::vector<double> table(const Grid& fine) const;

  private:
    std::string key_;
    std::function<double(double)> fn_;
    Grid sample_grid_;
    std::vector<double> samples_;
};

/// Built-in potentials by config key, all on (-16,16):
///   zero        : 0
///   box4        : -4 on (-2,2), 0 elsewhere (x = +-2 take the outer value)
///   fracpow076  : |x|^0.76
///   fracpow151w : |x|^1.51 (1 - x^2/16^2)^2
///   fracpow251w : |x|^2.51 (1 - x^2/16^2)^3
///   harmonic    : x^2/2 (smoke tests)
Potential make_potential(const std::string& key);

/// Initial datum psi_0: a closure, or an exact single Fourier mode.
struct InitialData {
    std::string key;
    std::function<cplx(double)> fn;
    bool is_single_mode = false;
    int mode = 0;

    cplx operator()(double x) const { return fn(x); }
};

/// Built-in initial data by config key:
///   gaussian     : exp(-x^2/2)
///   odd-gaussian : x exp(-x^2/2)
InitialData make_initial_data(const std::string& key);
InitialData single_mode(int l);
InitialData custom_initial(std::function<cplx(double)> fn);

/// psi^0 = P_N psi_0: sample on a grid oversampled by `oversample`, take
/// interpolation coefficients, truncate to the target modes. Single modes
/// are placed exactly in coefficient space.
SpectralField sample_initial(const InitialData& data, const Grid& grid, int oversample = 8);

/// Exact flow of i d/dt psi = (V + f(|psi|^2)) psi over time t. The modulus
/// is conserved pointwise, so psi(t) = psi0 * exp(-i t (v + f(|psi0|^2))).
cplx nonlinear_phase(cplx psi0, double v, const Nonlinearity& f, double t);

}  // namespace nlse
