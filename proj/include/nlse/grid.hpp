#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "nlse/errors.hpp"

namespace nlse {

using cplx = std::complex<double>;

/// Uniform periodic grid on (a,b) with N nodes x_j = a + j*h and N Fourier
/// modes mu_l = 2*pi*l/(b-a), l = -N/2 .. N/2-1.
struct Grid {
    double a = -16.0;
    double b = 16.0;
    int n = 0;  // node/mode count, even, >= 4

    Grid() = default;
    Grid(double a_, double b_, int n_) : a(a_), b(b_), n(n_) {
        if (!(b > a)) throw InvalidInputError("Grid: need b > a");
        if (n < 4 || n % 2 != 0) throw InvalidInputError("Grid: N must be even and >= 4");
    }

    double length() const { return b - a; }
    double spacing() const { return (b - a) / n; }
    double node(int j) const { return a + j * spacing(); }
    /// l in [-N/2, N/2)
    double mode(int l) const { return 2.0 * M_PI * l / (b - a); }
    int min_mode() const { return -n / 2; }
    int max_mode() const { return n / 2 - 1; }

    bool same_interval(const Grid& o) const { return a == o.a && b == o.b; }
    bool operator==(const Grid& o) const = default;
};

/// Truncated Fourier series: coefficients u_hat_l stored in canonical order
/// l = -N/2, ..., N/2-1, i.e. coeffs[l + N/2]. All public surfaces use this
/// ordering; transform-native layouts never escape the FFT wrapper.
struct SpectralField {
    Grid grid;
    std::vector<cplx> coeffs;

    SpectralField() = default;
    explicit SpectralField(const Grid& g) : grid(g), coeffs(g.n, cplx{0.0, 0.0}) {}
    SpectralField(const Grid& g, std::vector<cplx> c) : grid(g), coeffs(std::move(c)) {
        if (static_cast<int>(coeffs.size()) != g.n)
            throw InvalidInputError("SpectralField: coefficient count != grid mode count");
    }

    cplx& at(int l) { return coeffs[l + grid.n / 2]; }
    const cplx& at(int l) const { return coeffs[l + grid.n / 2]; }
};

/// Point values on a grid's nodes (possibly an oversampled grid).
struct SampledField {
    Grid grid;
    std::vector<cplx> values;

    SampledField() = default;
    explicit SampledField(const Grid& g) : grid(g), values(g.n, cplx{0.0, 0.0}) {}
    SampledField(const Grid& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
        if (static_cast<int>(values.size()) != g.n)
            throw InvalidInputError("SampledField: value count != grid node count");
    }
};

}  // namespace nlse
