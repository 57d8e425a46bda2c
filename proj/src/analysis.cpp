#include "nlse/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "nlse/errors.hpp"
#include "nlse/spectral.hpp"

namespace nlse {

double error_norms(const SpectralField& numeric, const SpectralField& reference, int m) {
    return sobolev_error(numeric, reference, m);
}

double estimate_order(const std::vector<std::pair<double, double>>& points, bool drop_coarsest) {
    std::vector<std::pair<double, double>> pts = points;
    if (drop_coarsest && !pts.empty()) {
        std::size_t imax = 0;
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (pts[i].first > pts[imax].first) imax = i;
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(imax));
    }
    if (pts.size() < 2) throw InvalidInputError("estimate_order: need at least two points");

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [tau, err] : pts) {
        if (!(tau > 0.0) || !(err > 0.0))
            throw InvalidInputError("estimate_order: taus and errors must be positive");
        const double x = std::log(tau), y = std::log(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double k = static_cast<double>(pts.size());
    const double denom = k * sxx - sx * sx;
    if (denom <= 0.0) throw InvalidInputError("estimate_order: taus must not all coincide");
    return (k * sxy - sx * sy) / denom;
}

cplx rco_delta(double tau, double mu) {
    const double y = tau * mu * mu;
    if (y == 0.0) return cplx(0.0, 0.0);
    // (e^{iy} - 1)/(i mu^2) without cancellation: e^{iy}-1 = -2 sin^2(y/2) + i sin y
    const double s = std::sin(0.5 * y);
    const cplx em1(-2.0 * s * s, std::sin(y));
    return cplx(tau, 0.0) - em1 / cplx(0.0, mu * mu);
}

cplx rco_sum(long n, double tau, double mu) {
    if (n < 0) throw InvalidInputError("rco_sum: n must be >= 0");
    const double theta = tau * mu * mu;
    const double sh = std::sin(0.5 * theta);
    // e^{i theta} = 1: all n+1 terms equal one
    if (sh == 0.0) return cplx(static_cast<double>(n + 1), 0.0);
    const double np1 = static_cast<double>(n + 1);
    // sum = e^{i n theta / 2} sin((n+1) theta / 2) / sin(theta / 2)
    const double mag = std::sin(0.5 * np1 * theta) / sh;
    const double ph = 0.5 * static_cast<double>(n) * theta;
    return mag * cplx(std::cos(ph), std::sin(ph));
}

RcoTable rco_diagnostics(const Grid& grid, double tau, long n) {
    if (!(tau > 0.0)) throw InvalidInputError("rco_diagnostics: tau must be positive");
    if (n < 0) throw InvalidInputError("rco_diagnostics: n must be >= 0");
    RcoTable table;
    table.tau = tau;
    table.n = n;
    table.rows.reserve(static_cast<std::size_t>(grid.n));
    for (int l = grid.min_mode(); l <= grid.max_mode(); ++l) {
        const double mu = grid.mode(l);
        const double ad = std::abs(rco_delta(tau, mu));
        const double as = std::abs(rco_sum(n, tau, mu));
        RcoRow row{l, mu, ad, as, ad * as};
        table.max_product = std::max(table.max_product, row.abs_product);
        table.rows.push_back(row);
    }
    return table;
}

void write_rco_csv(const RcoTable& table, std::ostream& out) {
    out << "l,mu,abs_delta,abs_S,abs_product\n";
    char buf[256];
    for (const RcoRow& r : table.rows) {
        std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g,%.12g,%.12g\n", r.l, r.mu, r.abs_delta,
                      r.abs_s, r.abs_product);
        out << buf;
    }
}

}  // namespace nlse
