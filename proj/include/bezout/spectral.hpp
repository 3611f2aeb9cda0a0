//
// spectral.hpp
//
// Canonical spectral factorization R(z) = R_plus^*(z) R_plus(z) of a strictly
// positive Hermitian Laurent symbol, by Bauer's finite-section method:
// Cholesky-factor a large banded block Toeplitz section of R and read the
// converged last block row. The factor R_plus is analytic, outer (invertible
// on the closed disc) and normalized so R_plus(0) is lower triangular with
// positive real diagonal.
//

#pragma once

#include "bezout/config.hpp"
#include "bezout/series.hpp"

namespace bezout {

struct SpectralFactor {
    CoeffSeries r_plus;    ///< analytic polynomial factor, degree = band of R
    double residual = 0;   ///< max_boundary ||R(z) - R_plus(z)^H R_plus(z)||_F
    int section_used = 0;  ///< final Bauer section size (block rows)
};

/// Factorize a Hermitian Laurent symbol (R_{-nu} = R_nu^H required).
/// Throws NotPositive when min eig R(z) <= cfg.positivity_tol on the boundary
/// grid, NoConvergence when the residual will not go below cfg.factor_tol
/// within the section cap.
SpectralFactor spectralFactorize(const CoeffSeries& r, const SolveConfig& cfg);

/// Taylor coefficients 0..deg of R_plus(z)^{-1} by the block forward
/// recursion. Throws Singular when R_plus(0) is numerically singular.
CoeffSeries invertOuter(const CoeffSeries& r_plus, int deg);

}  // namespace bezout
