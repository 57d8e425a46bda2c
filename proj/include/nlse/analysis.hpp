#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "nlse/grid.hpp"

namespace nlse {

/// H^m distance between two fields on the same interval, compared in
/// coefficient space: the coarser field is zero-padded into the finer mode
/// set and the difference measured with sobolev_norm. Exact for
/// trigonometric polynomials; no physical-space resampling.
double error_norms(const SpectralField& numeric, const SpectralField& reference, int m);

/// Least-squares slope of log(error) vs log(tau). drop_coarsest excludes
/// the largest-tau point (pre-asymptotic bending). Requires >= 2 (remaining)
/// points, all taus and errors positive.
double estimate_order(const std::vector<std::pair<double, double>>& points,
                      bool drop_coarsest = false);

/// delta_l = integral_0^tau (1 - e^{i s mu_l^2}) ds
///         = tau - (e^{i tau mu_l^2} - 1)/(i mu_l^2), delta = 0 at mu = 0.
cplx rco_delta(double tau, double mu);

/// S_{n,l} = sum_{k=0}^{n} e^{i k tau mu_l^2}, the geometric sum; the
/// degenerate case e^{i tau mu^2} = 1 returns n+1 exactly (hit at l = 0
/// every time, and whenever tau mu^2 is a multiple of 2 pi).
cplx rco_sum(long n, double tau, double mu);

struct RcoRow {
    int l;
    double mu;
    double abs_delta;
    double abs_s;
    double abs_product;
};

/// Per-mode phase-cancellation table. When tau < h^2/pi, the bounds
/// |delta_l| <= tau^2 mu_l^2 / 2 and |S_{n,l}| <= pi/(tau mu_l^2) combine
/// to max_product <= pi tau / 2; off that regime the product can exceed
/// any O(tau) bound.
struct RcoTable {
    double tau = 0.0;
    long n = 0;
    std::vector<RcoRow> rows;  // one per mode, l ascending
    double max_product = 0.0;
};

RcoTable rco_diagnostics(const Grid& grid, double tau, long n);

/// CSV with header `l,mu,abs_delta,abs_S,abs_product`.
void write_rco_csv(const RcoTable& table, std::ostream& out);

}  // namespace nlse
