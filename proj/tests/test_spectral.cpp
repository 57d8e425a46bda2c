#include <cmath>
#include <complex>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "nlse/fft.hpp"
#include "nlse/physics.hpp"
#include "nlse/spectral.hpp"
#include "oracles.hpp"

using namespace nlse;

TEST_SUITE("spectral") {

TEST_CASE("forward transform matches the direct sum") {
    for (int n : {8, 16, 32}) {
        Grid g(-16.0, 16.0, n);
        SampledField u = oracle::random_samples(g, 1000 + n);
        SpectralField fast = forward_transform(u);
        SpectralField slow = oracle::brute_forward(u);
        CHECK(oracle::max_coeff_diff(fast, slow) < 1e-13);
    }
}

TEST_CASE("inverse then forward is the identity") {
    Grid g(-16.0, 16.0, 128);
    SpectralField c = oracle::random_coeffs(g, 7);
    SpectralField back = forward_transform(inverse_transform(c));
    CHECK(oracle::max_coeff_diff(c, back) < 1e-13);
}

TEST_CASE("unit coefficient synthesizes a plane wave") {
    Grid g(-16.0, 16.0, 64);
    SpectralField c(g);
    c.at(1) = cplx(1.0, 0.0);
    SampledField u = inverse_transform(c);
    const double mu1 = M_PI / 16.0;
    CHECK(g.mode(1) == doctest::Approx(mu1).epsilon(1e-15));
    for (int j = 0; j < g.n; ++j) {
        const cplx want = std::exp(cplx(0.0, mu1 * (g.node(j) - g.a)));
        CHECK(std::abs(u.values[j] - want) < 1e-13);
    }
}

TEST_CASE("constant samples load only the zero mode") {
    Grid g(-16.0, 16.0, 32);
    SampledField u(g);
    for (auto& v : u.values) v = cplx(2.5, -1.0);
    SpectralField c = forward_transform(u);
    CHECK(std::abs(c.at(0) - cplx(2.5, -1.0)) < 1e-14);
    for (int l = g.min_mode(); l <= g.max_mode(); ++l)
        if (l != 0) CHECK(std::abs(c.at(l)) < 1e-14);
}

TEST_CASE("discrete Parseval identity") {
    Grid g(-16.0, 16.0, 256);
    SampledField u = oracle::random_samples(g, 99);
    double grid_sq = 0.0;
    for (const auto& v : u.values) grid_sq += std::norm(v);
    const double grid_norm = std::sqrt(g.spacing() * grid_sq);
    const double coeff_norm = sobolev_norm(forward_transform(u), 0);
    CHECK(coeff_norm == doctest::Approx(grid_norm).epsilon(1e-13));
}

TEST_CASE("projected Gaussian has the continuum L2 norm") {
    Grid g(-16.0, 16.0, 512);
    SpectralField psi0 = sample_initial(make_initial_data("gaussian"), g);
    // integral of exp(-x^2) over the interval; the tails beyond +-16 are
    // below 1e-100, so this is sqrt(pi) for any purpose here.
    const double quad = oracle::periodic_quad(
        [](double x) { return std::exp(-x * x); }, g.a, g.b, 1 << 16);
    CHECK(quad == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
    CHECK(sobolev_norm(psi0, 0) == doctest::Approx(std::sqrt(quad)).epsilon(1e-8));
    CHECK(sobolev_norm(psi0, 0) == doctest::Approx(std::pow(M_PI, 0.25)).epsilon(1e-8));
}

TEST_CASE("Sobolev norm of a single coefficient") {
    Grid g(-16.0, 16.0, 64);
    const double eps = 3e-4;
    for (int l : {0, 1, -5, 31, -32}) {
        SpectralField c(g);
        c.at(l) = cplx(0.0, eps);
        const double mu = g.mode(l);
        const double want0 = eps * std::sqrt(32.0);
        const double want1 = eps * std::sqrt(32.0 * (1.0 + mu * mu));
        CHECK(sobolev_norm(c, 0) == doctest::Approx(want0).epsilon(1e-14));
        CHECK(sobolev_norm(c, 1) == doctest::Approx(want1).epsilon(1e-14));
    }
    CHECK_THROWS_AS(sobolev_norm(SpectralField(g), -1), InvalidInputError);
}

TEST_CASE("truncate and embed are section and inclusion") {
    Grid g(-16.0, 16.0, 32);
    SpectralField c = oracle::random_coeffs(g, 5);

    SpectralField up = embed(c, 128);
    CHECK(up.grid.n == 128);
    for (int l = -64; l < 64; ++l) {
        const cplx want = (l >= -16 && l <= 15) ? c.at(l) : cplx(0.0, 0.0);
        CHECK(up.at(l) == want);  // exact: embedding moves coefficients verbatim
    }
    SpectralField down = truncate(up, 32);
    CHECK(oracle::max_coeff_diff(down, c) == 0.0);

    CHECK_THROWS_AS(truncate(c, 64), InvalidInputError);
    CHECK_THROWS_AS(embed(c, 16), InvalidInputError);
    CHECK_THROWS_AS(embed(c, 33), InvalidInputError);  // odd target
}

TEST_CASE("synthesize agrees with direct evaluation on the finer nodes") {
    Grid g(-16.0, 16.0, 16);
    SpectralField c = oracle::random_coeffs(g, 21);
    SampledField fine = synthesize(c, 64);
    Grid gf(-16.0, 16.0, 64);
    for (int j = 0; j < gf.n; ++j)
        CHECK(std::abs(fine.values[j] - oracle::brute_eval(c, gf.node(j))) < 1e-12);
}

TEST_CASE("error against a finer field counts its tail modes in full") {
    Grid coarse(-16.0, 16.0, 32);
    Grid fine(-16.0, 16.0, 64);
    SpectralField vf = oracle::random_coeffs(fine, 31);
    SpectralField vc = truncate(vf, 32);
    // vc matches vf on the shared modes, so the distance is exactly the
    // norm of vf's tail.
    SpectralField tail = vf;
    for (int l = -16; l <= 15; ++l) tail.at(l) = cplx(0.0, 0.0);
    for (int m : {0, 1}) {
        CHECK(sobolev_error(vc, vf, m) ==
              doctest::Approx(sobolev_norm(tail, m)).epsilon(1e-14));
        CHECK(sobolev_error(vc, vf, m) == sobolev_error(vf, vc, m));
        CHECK(sobolev_error(vf, vf, m) == 0.0);
    }
    Grid other(-8.0, 8.0, 32);
    CHECK_THROWS_AS(sobolev_error(vc, oracle::random_coeffs(other, 1), 0),
                    InvalidInputError);
}

TEST_CASE("mode reordering is a self-inverse rotation") {
    const int m = 16;
    std::vector<cplx> src(m), once(m), twice(m);
    for (int i = 0; i < m; ++i) src[i] = cplx(i, -i);
    shift_half(src.data(), once.data(), m);
    for (int i = 0; i < m; ++i) CHECK(once[i] == src[(i + m / 2) % m]);
    shift_half(once.data(), twice.data(), m);
    CHECK(std::memcmp(twice.data(), src.data(), m * sizeof(cplx)) == 0);
}

}  // TEST_SUITE
