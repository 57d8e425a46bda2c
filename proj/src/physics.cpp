#include "nlse/physics.hpp"

#include <cmath>
#include <utility>

#include "nlse/errors.hpp"
#include "nlse/spectral.hpp"

namespace nlse {

double Nonlinearity::operator()(double rho) const {
    if (rho < 0.0) throw InvalidInputError("Nonlinearity: rho must be >= 0");
    if (rho == 0.0) return 0.0;  // also for fractional sigma
    if (sigma == 1.0) return beta * rho;
    return beta * std::pow(rho, sigma);
}

Potential::Potential() : key_("zero"), fn_([](double) { return 0.0; }) {}

Potential Potential::closed_form(std::string key, std::function<double(double)> fn) {
    Potential p;
    p.key_ = std::move(key);
    p.fn_ = std::move(fn);
    return p;
}

Potential Potential::from_samples(std::string key, const Grid& grid, std::vector<double> values) {
    if (static_cast<int>(values.size()) != grid.n)
        throw InvalidInputError("Potential: sample count != grid node count");
    Potential p;
    p.key_ = std::move(key);
    p.fn_ = nullptr;
    p.sample_grid_ = grid;
    p.samples_ = std::move(values);
    return p;
}

double Potential::operator()(double x) const {
    if (!sampled()) return fn_(x);
    const double jr = (x - sample_grid_.a) / sample_grid_.spacing();
    const long j = std::lround(jr);
    if (std::abs(jr - j) > 1e-9)
        throw InvalidInputError("Potential: sampled variant evaluated off its grid");
    const long n = sample_grid_.n;
    return samples_[static_cast<size_t>(((j % n) + n) % n)];
}

std::vector<double> Potential::table(const Grid& fine) const {
    std::vector<double> out(fine.n);
    if (!sampled()) {
        for (int j = 0; j < fine.n; ++j) out[j] = fn_(fine.node(j));
        return out;
    }
    if (!fine.same_interval(sample_grid_))
        throw InvalidInputError("Potential: table interval differs from sample grid");
    if (fine.n == sample_grid_.n) return samples_;
    if (fine.n < sample_grid_.n || fine.n % sample_grid_.n != 0)
        throw InvalidInputError("Potential: table grid must refine the sample grid");
    // Band-limited by construction: go through the trigonometric interpolant.
    SampledField s(sample_grid_);
    for (int j = 0; j < sample_grid_.n; ++j) s.values[j] = samples_[j];
    SampledField up = synthesize(forward_transform(s), fine.n);
    for (int j = 0; j < fine.n; ++j) out[j] = up.values[j].real();
    return out;
}

Potential make_potential(const std::string& key) {
    if (key == "zero") return Potential();
    if (key == "box4")
        return Potential::closed_form(key, [](double x) {
            return (x > -2.0 && x < 2.0) ? -4.0 : 0.0;
        });
    if (key == "fracpow076")
        return Potential::closed_form(key, [](double x) { return std::pow(std::abs(x), 0.76); });
    if (key == "fracpow151w")
        return Potential::closed_form(key, [](double x) {
            const double w = 1.0 - x * x / 256.0;
            return std::pow(std::abs(x), 1.51) * w * w;
        });
    if (key == "fracpow251w")
        return Potential::closed_form(key, [](double x) {
            const double w = 1.0 - x * x / 256.0;
            return std::pow(std::abs(x), 2.51) * w * w * w;
        });
    if (key == "harmonic")
        return Potential::closed_form(key, [](double x) { return 0.5 * x * x; });
    throw InvalidInputError("unknown potential key: " + key);
}

InitialData make_initial_data(const std::string& key) {
    if (key == "gaussian")
        return InitialData{key, [](double x) { return cplx(std::exp(-0.5 * x * x), 0.0); }};
    if (key == "odd-gaussian")
        return InitialData{key, [](double x) { return cplx(x * std::exp(-0.5 * x * x), 0.0); }};
    throw InvalidInputError("unknown initial data key: " + key);
}

InitialData single_mode(int l) {
    InitialData d;
    d.key = "mode" + std::to_string(l);
    d.is_single_mode = true;
    d.mode = l;
    d.fn = [l](double) -> cplx {
        throw InvalidInputError("single-mode initial data has no pointwise closure; "
                                "use sample_initial");
        return cplx{};
    };
    return d;
}

InitialData custom_initial(std::function<cplx(double)> fn) {
    return InitialData{"custom", std::move(fn)};
}

SpectralField sample_initial(const InitialData& data, const Grid& grid, int oversample) {
    if (oversample < 1) throw InvalidInputError("sample_initial: oversample must be >= 1");
    if (data.is_single_mode) {
        SpectralField out(grid);
        if (data.mode >= grid.min_mode() && data.mode <= grid.max_mode())
            out.at(data.mode) = cplx(1.0, 0.0);
        return out;  // modes outside T_N project to zero
    }
    const Grid fine(grid.a, grid.b, grid.n * oversample);
    SampledField s(fine);
    for (int j = 0; j < fine.n; ++j) s.values[j] = data.fn(fine.node(j));
    return truncate(forward_transform(s), grid.n);
}

cplx nonlinear_phase(cplx psi0, double v, const Nonlinearity& f, double t) {
    const double phase = -t * (v + f(std::norm(psi0)));
    return psi0 * cplx(std::cos(phase), std::sin(phase));
}

}  // namespace nlse
