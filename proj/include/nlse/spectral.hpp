#pragma once

#include "nlse/grid.hpp"

namespace nlse {

/// Trigonometric interpolation coefficients of grid samples:
///   c_l = (1/M) sum_j u_j exp(-i mu_l (x_j - a)),  l = -M/2 .. M/2-1.
/// Matches the continuous normalization c_l = (1/(b-a)) \int u e^{-i mu_l (x-a)}.
SpectralField forward_transform(const SampledField& u);

/// Evaluates sum_l c_l exp(+i mu_l (x_j - a)) at the grid nodes of `coeffs.grid`.
SampledField inverse_transform(const SpectralField& coeffs);

/// Restricts coefficients to the modes of a coarser grid (n_out <= n_in),
/// i.e. the L^2-orthogonal projection onto span{e^{i mu_l x} : l in T_{n_out}}.
SpectralField truncate(const SpectralField& coeffs, int n_out);

/// Zero-pads coefficients into a finer mode set (n_out >= n_in); the
/// represented function is unchanged.
SpectralField embed(const SpectralField& coeffs, int n_out);

/// Zero-pads coefficients to a finer grid (n_out >= n_in) and evaluates on
/// its nodes. Exact for trigonometric polynomials; used for oversampled
/// pointwise operations.
SampledField synthesize(const SpectralField& coeffs, int n_out);

/// H^m norm of the interpolant: sqrt((b-a) sum_l (1 + mu_l^2)^m |c_l|^2).
/// m = 0 gives the L^2 norm.
double sobolev_norm(const SpectralField& coeffs, int m);

/// H^m norm of the difference of two fields on the same interval. The
/// coarser field is compared against the matching modes of the finer one;
/// the finer field's extra modes count in full.
double sobolev_error(const SpectralField& u, const SpectralField& v, int m);

}  // namespace nlse
