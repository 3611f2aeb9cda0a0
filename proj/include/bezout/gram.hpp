//
// gram.hpp
//
// Application of (T_G T_G^H)^{-1} to block vectors, two independent routes:
//
//  * structured: the inverse splits as
//        T_R^{-1} + T_R^{-1} H_G M^{-1} H_G^H T_R^{-1},
//    with R = G G^*, M = I - H_G^H T_R^{-1} H_G, and T_R^{-1} applied through
//    the spectral factor as two banded triangular Toeplitz substitutions.
//    For right-hand sides supported away from the section edge this equals
//    the infinite-operator inverse restricted to the section.
//
//  * direct: dense Cholesky solve of the exact Gram section (oracle).
//
// For a polynomial symbol of degree d, H_G has support in the leading d
// block rows/columns, so M differs from the identity only in its leading
// (d*p) x (d*p) corner; only that corner is factored.
//

#pragma once

#include <memory>

#include <Eigen/Cholesky>

#include "bezout/config.hpp"
#include "bezout/sections.hpp"
#include "bezout/series.hpp"
#include "bezout/spectral.hpp"

namespace bezout {

struct GramSolver {
    CoeffSeries g;            ///< the symbol G (m x p, analytic)
    SpectralFactor r_factor;  ///< canonical factor of R = G G^*
    OperatorSection hankel;   ///< H_G at working size N
    int n_blocks = 0;         ///< N
    double margin = 0;        ///< smallest Gram-section eigenvalue at N

    /// Middle operator M = I - H_G^H T_R^{-1} H_G: identity outside the
    /// leading corner, whose Hermitian factorization is stored here.
    Matrix middle_leading;                       ///< the corner of M itself
    Eigen::LDLT<Matrix> middle_factor;
    int middle_blocks = 0;                       ///< corner size in p-blocks

    bool cross_check = false;
    SolveConfig cfg;
};

/// Assemble every sub-operator at size N and factor M.
/// Throws NotPositive when the margin or the boundary symbol fails the
/// positivity gate, NoConvergence from the spectral factorization.
GramSolver buildGramSolver(const CoeffSeries& g, int n, const SolveConfig& cfg);

/// Structured application x ~= (T_G T_G^H)^{-1} b; b has N blocks of size m.
Vector applyGramInverse(const GramSolver& s, const Vector& b);

/// Column-wise batched version (parallel over columns).
Matrix applyGramInverseBatch(const GramSolver& s, const Matrix& b);

/// Dense oracle: Cholesky solve of gramSection(G, N), with residual
/// self-check ||Ax-b|| <= 1e-10 ||b||.
Vector applyGramInverseDirect(const CoeffSeries& g, int n, const Vector& b);

}  // namespace bezout
