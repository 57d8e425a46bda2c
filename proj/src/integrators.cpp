#include "nlse/integrators.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <utility>

#include "nlse/errors.hpp"
#include "nlse/fft.hpp"
#include "nlse/spectral.hpp"

namespace nlse {

Scheme parse_scheme(const std::string& name) {
    if (name == "ltfs" || name == "lie") return Scheme::lie;
    if (name == "stfs" || name == "strang") return Scheme::strang;
    if (name == "ewi" || name == "ewi1") return Scheme::ewi;
    throw InvalidInputError("unknown scheme: " + name);
}

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::lie: return "ltfs";
        case Scheme::strang: return "stfs";
        case Scheme::ewi: return "ewi";
    }
    throw InvalidInputError("unknown scheme value");
}

void free_flight(SpectralField& psi, double t) {
    const Grid& g = psi.grid;
    for (int l = g.min_mode(); l <= g.max_mode(); ++l) {
        const double mu = g.mode(l);
        const double phase = -t * mu * mu;
        psi.at(l) *= cplx(std::cos(phase), std::sin(phase));
    }
}

cplx phi1(cplx z) {
    if (z == cplx(0.0, 0.0)) return cplx(1.0, 0.0);
    if (z.real() == 0.0) {
        // e^{iy} - 1 = -2 sin^2(y/2) + i sin(y), stable at every magnitude
        const double y = z.imag();
        const double s = std::sin(0.5 * y);
        return cplx(-2.0 * s * s, std::sin(y)) / z;
    }
    if (std::abs(z) < 1e-3) {
        // 1 + z/2 + z^2/6 + z^3/24 + z^4/120 + z^5/720, tail < 1e-21
        cplx acc(1.0, 0.0);
        for (int k = 6; k >= 2; --k) acc = cplx(1.0, 0.0) + acc * z / static_cast<double>(k);
        return acc;
    }
    return (std::exp(z) - cplx(1.0, 0.0)) / z;
}

long step_count(double T, double tau) {
    if (T < 0.0) throw InvalidInputError("step_count: T must be >= 0");
    if (T == 0.0) return 0;
    if (!(tau > 0.0)) throw InvalidInputError("step_count: tau must be positive");
    const long n = std::lround(T / tau);
    if (n < 1 || std::abs(n * tau - T) > 1e-9 * T)
        throw InvalidInputError("step_count: T/tau is not an integer step count");
    return n;
}

namespace {

// beta * rho^sigma with cheap branches for the common exponents
struct PowerLaw {
    double beta;
    double sigma;
    int kind;  // 0 beta==0, 1 sigma==1, 2 sigma==0.5, 3 sigma==1.5, 4 sigma==2, 5 sigma==0.25, 6 general

    PowerLaw(double b, double s) : beta(b), sigma(s) {
        kind = b == 0.0  ? 0
             : s == 1.0  ? 1
             : s == 0.5  ? 2
             : s == 1.5  ? 3
             : s == 2.0  ? 4
             : s == 0.25 ? 5
                         : 6;
    }

    double operator()(double rho) const {
        switch (kind) {
            case 0: return 0.0;
            case 1: return beta * rho;
            case 2: return beta * std::sqrt(rho);
            case 3: return beta * rho * std::sqrt(rho);
            case 4: return beta * rho * rho;
            case 5: return beta * std::sqrt(std::sqrt(rho));
            default: return rho == 0.0 ? 0.0 : beta * std::pow(rho, sigma);
        }
    }
};

}  // namespace

struct Stepper::Impl {
    Grid grid;
    Grid fine;
    Potential pot;
    Nonlinearity f;
    PowerLaw law;
    int q;
    Fft fft;  // size fine.n
    std::vector<double> vtab;
    std::vector<cplx> native;  // fine.n workspace (frequency, FFT layout)
    std::vector<cplx> vals;    // fine.n workspace (nodes)

    double tau_vphase = std::numeric_limits<double>::quiet_NaN();
    std::vector<cplx> vphase;
    double tau_full = std::numeric_limits<double>::quiet_NaN();
    std::vector<cplx> full;
    double tau_half = std::numeric_limits<double>::quiet_NaN();
    std::vector<cplx> half;
    double tau_ewi = std::numeric_limits<double>::quiet_NaN();
    std::vector<cplx> ewi_mult;

    Impl(Grid g, Potential v, Nonlinearity nl, int q_)
        : grid(g),
          fine(g.a, g.b, g.n * q_),
          pot(std::move(v)),
          f(nl),
          law(nl.beta, nl.sigma),
          q(q_),
          fft(g.n * q_),
          vtab(pot.table(fine)),
          native(fine.n),
          vals(fine.n) {}

    // canonical N coefficients -> field values on the fine nodes
    void synth(const SpectralField& psi) {
        const int n = grid.n, m = fine.n;
        std::fill(native.begin(), native.end(), cplx(0.0, 0.0));
        for (int l = 0; l < n / 2; ++l) native[l] = psi.coeffs[l + n / 2];
        for (int l = -n / 2; l < 0; ++l) native[m + l] = psi.coeffs[l + n / 2];
        fft.backward(native.data(), vals.data());
    }

    // fine node values -> canonical N coefficients (the P_N of the product)
    void project(SpectralField& psi) {
        const int n = grid.n, m = fine.n;
        fft.forward(vals.data(), native.data());
        const double inv = 1.0 / m;
        for (int l = 0; l < n / 2; ++l) psi.coeffs[l + n / 2] = native[l] * inv;
        for (int l = -n / 2; l < 0; ++l) psi.coeffs[l + n / 2] = native[m + l] * inv;
    }

    const std::vector<cplx>& vphase_for(double tau) {
        if (tau != tau_vphase) {
            vphase.resize(fine.n);
            for (int j = 0; j < fine.n; ++j) {
                const double ph = -tau * vtab[j];
                vphase[j] = cplx(std::cos(ph), std::sin(ph));
            }
            tau_vphase = tau;
        }
        return vphase;
    }

    void mode_table(double tau, std::vector<cplx>& out, bool ewi) {
        out.resize(grid.n);
        for (int l = grid.min_mode(); l <= grid.max_mode(); ++l) {
            const double mu2 = grid.mode(l) * grid.mode(l);
            if (ewi)
                out[l + grid.n / 2] = cplx(0.0, -tau) * phi1(cplx(0.0, -tau * mu2));
            else
                out[l + grid.n / 2] = cplx(std::cos(tau * mu2), -std::sin(tau * mu2));
        }
    }

    const std::vector<cplx>& full_for(double tau) {
        if (tau != tau_full) {
            mode_table(tau, full, false);
            tau_full = tau;
        }
        return full;
    }

    const std::vector<cplx>& half_for(double tau) {
        if (tau != tau_half) {
            mode_table(0.5 * tau, half, false);
            tau_half = tau;
        }
        return half;
    }

    const std::vector<cplx>& ewi_for(double tau) {
        if (tau != tau_ewi) {
            mode_table(tau, ewi_mult, true);
            tau_ewi = tau;
        }
        return ewi_mult;
    }

    void nonlinear(SpectralField& psi, double tau) {
        const auto& vp = vphase_for(tau);
        synth(psi);
        if (law.kind == 0) {
            for (int j = 0; j < fine.n; ++j) vals[j] *= vp[j];
        } else {
            for (int j = 0; j < fine.n; ++j) {
                const double ph = -tau * law(std::norm(vals[j]));
                vals[j] *= vp[j] * cplx(std::cos(ph), std::sin(ph));
            }
        }
        project(psi);
    }

    void apply(const std::vector<cplx>& table, SpectralField& psi) const {
        for (int i = 0; i < grid.n; ++i) psi.coeffs[i] *= table[i];
    }

    void step(Scheme s, SpectralField& psi, double tau) {
        if (psi.grid != grid) throw InvalidInputError("Stepper: field grid mismatch");
        switch (s) {
            case Scheme::lie:
                nonlinear(psi, tau);
                apply(full_for(tau), psi);
                return;
            case Scheme::strang:
                apply(half_for(tau), psi);
                nonlinear(psi, tau);
                apply(half_for(tau), psi);
                return;
            case Scheme::ewi: {
                synth(psi);
                for (int j = 0; j < fine.n; ++j)
                    vals[j] *= vtab[j] + law(std::norm(vals[j]));
                SpectralField ghat(grid);
                project(ghat);
                const auto& fl = full_for(tau);
                const auto& em = ewi_for(tau);
                for (int i = 0; i < grid.n; ++i)
                    psi.coeffs[i] = fl[i] * psi.coeffs[i] + em[i] * ghat.coeffs[i];
                return;
            }
        }
    }
};

Stepper::Stepper(Grid grid, Potential v, Nonlinearity f, int oversample) {
    if (oversample < 1) throw InvalidInputError("Stepper: oversample must be >= 1");
    impl_ = std::make_unique<Impl>(grid, std::move(v), f, oversample);
}

Stepper::~Stepper() = default;
Stepper::Stepper(Stepper&&) noexcept = default;
Stepper& Stepper::operator=(Stepper&&) noexcept = default;

const Grid& Stepper::grid() const { return impl_->grid; }
int Stepper::oversample() const { return impl_->q; }

void Stepper::nonlinear_flow(SpectralField& psi, double tau) {
    if (psi.grid != impl_->grid) throw InvalidInputError("Stepper: field grid mismatch");
    impl_->nonlinear(psi, tau);
}

void Stepper::step(Scheme s, SpectralField& psi, double tau) { impl_->step(s, psi, tau); }

namespace {

double l2_of(const SpectralField& psi) {
    double acc = 0.0;
    for (const auto& c : psi.coeffs) acc += std::norm(c);
    return std::sqrt(psi.grid.length() * acc);
}

}  // namespace

void Stepper::evolve(Scheme s, SpectralField& psi, double tau, long n_steps, long step_offset) {
    if (n_steps < 0) throw InvalidInputError("evolve: n_steps must be >= 0");
    const double norm0 = l2_of(psi);
    const double cap = 1e3 * norm0;
    for (long i = 1; i <= n_steps; ++i) {
        impl_->step(s, psi, tau);
        if (i % 1024 == 0 || i == n_steps) {
            const double nrm = l2_of(psi);
            if (!std::isfinite(nrm) || nrm > cap)
                throw DivergenceError("coefficients diverged", step_offset + i);
        }
    }
}

namespace {

SpectralField one_step(Scheme s, const SpectralField& psi, const SchemeRun& run) {
    Stepper st(run.grid, run.potential, run.f, run.oversample);
    SpectralField out = psi;
    st.step(s, out, run.tau);
    return out;
}

}  // namespace

SpectralField lie_step(const SpectralField& psi, const SchemeRun& run) {
    return one_step(Scheme::lie, psi, run);
}

SpectralField strang_step(const SpectralField& psi, const SchemeRun& run) {
    return one_step(Scheme::strang, psi, run);
}

SpectralField ewi_step(const SpectralField& psi, const SchemeRun& run) {
    return one_step(Scheme::ewi, psi, run);
}

SpectralField nonlinear_flow(const SpectralField& psi, double tau, const Potential& v,
                             const Nonlinearity& f, int oversample) {
    Stepper st(psi.grid, v, f, oversample);
    SpectralField out = psi;
    st.nonlinear_flow(out, tau);
    return out;
}

Trajectory evolve(const SchemeRun& run, const std::vector<double>& snapshot_times) {
    const long n = step_count(run.T, run.tau);
    std::vector<long> stops;
    stops.reserve(snapshot_times.size() + 1);
    for (double t : snapshot_times) {
        const long idx = std::lround(t / run.tau);
        if (idx < 0 || idx > n || std::abs(idx * run.tau - t) > 1e-9 * std::max(run.T, 1.0))
            throw InvalidInputError("evolve: snapshot time is not a step multiple within [0,T]");
        stops.push_back(idx);
    }
    stops.push_back(n);  // final time always recorded
    std::sort(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

    const auto t0 = std::chrono::steady_clock::now();
    Stepper st(run.grid, run.potential, run.f, run.oversample);
    SpectralField psi = sample_initial(run.initial, run.grid, 8);

    Trajectory traj;
    traj.n_steps = n;
    long at = 0;
    for (long stop : stops) {
        st.evolve(run.scheme, psi, run.tau, stop - at, at);
        at = stop;
        traj.times.push_back(stop * run.tau);
        traj.fields.push_back(psi);
    }

    traj.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return traj;
}

}  // namespace nlse
