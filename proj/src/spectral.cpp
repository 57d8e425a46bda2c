#include "nlse/spectral.hpp"

#include <cmath>
#include <vector>

#include "nlse/errors.hpp"
#include "nlse/fft.hpp"

namespace nlse {

SpectralField forward_transform(const SampledField& u) {
    const int m = u.grid.n;
    Fft fft(m);
    std::vector<cplx> native(m);
    fft.forward(u.values.data(), native.data());
    SpectralField out(u.grid);
    shift_half(native.data(), out.coeffs.data(), m);
    const double inv = 1.0 / m;
    for (auto& c : out.coeffs) c *= inv;
    return out;
}

SampledField inverse_transform(const SpectralField& coeffs) {
    const int m = coeffs.grid.n;
    Fft fft(m);
    std::vector<cplx> native(m);
    shift_half(coeffs.coeffs.data(), native.data(), m);
    SampledField out(coeffs.grid);
    fft.backward(native.data(), out.values.data());
    return out;
}

SpectralField truncate(const SpectralField& coeffs, int n_out) {
    const int n_in = coeffs.grid.n;
    if (n_out > n_in) throw InvalidInputError("truncate: n_out exceeds input mode count");
    SpectralField out(Grid(coeffs.grid.a, coeffs.grid.b, n_out));
    for (int l = -n_out / 2; l < n_out / 2; ++l) out.at(l) = coeffs.at(l);
    return out;
}

SpectralField embed(const SpectralField& coeffs, int n_out) {
    const int n_in = coeffs.grid.n;
    if (n_out < n_in) throw InvalidInputError("embed: n_out below input mode count");
    SpectralField out(Grid(coeffs.grid.a, coeffs.grid.b, n_out));
    for (int l = -n_in / 2; l < n_in / 2; ++l) out.at(l) = coeffs.at(l);
    return out;
}

SampledField synthesize(const SpectralField& coeffs, int n_out) {
    return inverse_transform(embed(coeffs, n_out));
}

double sobolev_norm(const SpectralField& coeffs, int m) {
    if (m < 0) throw InvalidInputError("sobolev_norm: m must be >= 0");
    const Grid& g = coeffs.grid;
    double acc = 0.0;
    for (int l = g.min_mode(); l <= g.max_mode(); ++l) {
        const double mu2 = g.mode(l) * g.mode(l);
        double w = 1.0;
        for (int i = 0; i < m; ++i) w *= 1.0 + mu2;
        acc += w * std::norm(coeffs.at(l));
    }
    return std::sqrt(g.length() * acc);
}

double sobolev_error(const SpectralField& u, const SpectralField& v, int m) {
    if (!u.grid.same_interval(v.grid))
        throw InvalidInputError("sobolev_error: fields live on different intervals");
    const SpectralField& fine = u.grid.n >= v.grid.n ? u : v;
    const SpectralField& coarse = u.grid.n >= v.grid.n ? v : u;
    SpectralField diff = embed(coarse, fine.grid.n);
    for (int l = fine.grid.min_mode(); l <= fine.grid.max_mode(); ++l)
        diff.at(l) -= fine.at(l);
    return sobolev_norm(diff, m);
}

}  // namespace nlse
