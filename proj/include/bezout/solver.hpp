//
// solver.hpp
//
// The structural data of the corona equation G(z) X(z) = I_m over the
// Wiener class on the disc, for a strictly positive block Toeplitz Gram
// operator:
//
//   Xi0    constant least-squares data, G0 Xi0 = I_m
//   Theta0 constant defect factor, Theta0 Theta0^H = I_p - (range compression)
//   Y      invertible-outer multiplier with G(z) Y(z) = G0, Y(0) = I_p
//   Y^-1   explicit inverse, a polynomial of degree <= deg G
//   Xi     = Y Xi0, the least-squares solution
//   Theta  = Y Theta0, inner, with im T_Theta = ker T_G
//   H      = H0 Y^-1, left inverse of Theta in the parametrization
//
// Every Wiener solution is X = Y(Xi0 + Theta0 V) for a free analytic
// parameter V, and ||Xu||^2 = ||Xi u||^2 + ||Vu||^2 in H^2.
//

#pragma once

#include "bezout/gram.hpp"

namespace bezout {

struct BezoutDiagnostics {
    double tail_y = 0;        ///< tailMass of y
    double tail_y_inv = 0;    ///< tailMass of y_inv
    double rank_gap = 0;      ///< smallest kept / largest dropped eigenvalue of P
    double h0_identity = 0;   ///< residual of [G0;H0][Xi0 Theta0] = I (both orders)
};

struct BezoutData {
    Matrix xi0;        ///< p x m
    Matrix theta0;     ///< p x (p-m)
    Matrix h0;         ///< (p-m) x p
    CoeffSeries y;     ///< p x p, y.coeffs[0] = I
    CoeffSeries y_inv; ///< p x p polynomial, degree <= deg G
    CoeffSeries xi;    ///< p x m
    CoeffSeries theta; ///< p x (p-m)
    CoeffSeries h;     ///< (p-m) x p polynomial
    double margin = 0;
    BezoutDiagnostics diagnostics;

    int m() const { return static_cast<int>(xi0.cols()); }
    int p() const { return static_cast<int>(xi0.rows()); }
};

/// Xi0 column j = first block of T_G^H (T_G T_G^H)^{-1} (e_j in block 0).
Matrix computeXi0(const GramSolver& s);

/// Eigen-based factor of P = I_p - E_p^H T_G^H (T_G T_G^H)^{-1} T_G E_p.
/// Requires exactly p-m eigenvalues above the relative rank cut; columns are
/// sqrt(lambda_i) v_i in descending order, phases fixed so each column's
/// largest-magnitude entry is real positive. rank_gap_out (optional)
/// receives the kept/dropped eigenvalue ratio.
Matrix computeTheta0(const GramSolver& s, const SolveConfig& cfg,
                     double* rank_gap_out = nullptr);

/// Taylor coefficients of Y: Y_0 = I, [Y_1;Y_2;...] stacked from
/// -T_G^H (T_G T_G^H)^{-1} [G_1;G_2;...].
CoeffSeries computeY(const GramSolver& s, int deg);

/// Coefficient nu >= 1 of Y^{-1} from the Hankel block columns; vanishes
/// identically beyond deg G.
CoeffSeries computeYInverse(const GramSolver& s, int deg);

/// H0 = (Theta0^H Theta0)^{-1} Theta0^H (I_p - Xi0 G0); verifies the
/// two-sided constant inverse [G0;H0][Xi0 Theta0] = I_p to 1e-10.
Matrix computeH0(const Matrix& xi0, const Matrix& theta0, const Matrix& g0,
                 double* identity_residual = nullptr);

/// Direct route to Xi: coefficient nu = block nu of T_G^H (T_GT_G^H)^{-1} E_m
/// (the same solve as Xi0, read past its first block). Cross-checks Y*Xi0.
CoeffSeries computeXiDirect(const GramSolver& s, int deg);

/// Full pipeline for an analytic m x p symbol, m <= p.
BezoutData solve(const CoeffSeries& g, const SolveConfig& cfg_in);

/// The assembly half of solve() for callers that already hold a GramSolver.
BezoutData assembleFromSolver(const GramSolver& s, const SolveConfig& cfg);

/// X = Y (Xi0 + Theta0 V) truncated to deg. V analytic (p-m) x m; for p = m
/// pass a 0 x m series (or anything empty) — X = Xi is then unique.
CoeffSeries assembleSolution(const BezoutData& d, const CoeffSeries& v, int deg);

struct NormSplit {
    double x_sq = 0;   ///< ||X u||^2 in H^2
    double xi_sq = 0;  ///< ||Xi u||^2
    double v_sq = 0;   ///< ||V u||^2
};

/// Squared-coefficient sums of the three series applied to u; the split
/// x_sq = xi_sq + v_sq is the H^2 norm identity.
NormSplit solveNormSplit(const BezoutData& d, const CoeffSeries& v, const Vector& u);

/// Recover the parameter V = H X from a solution X. Throws NotASolution when
/// ||G X - I|| on the boundary grid exceeds cfg tolerance.
CoeffSeries extractParameter(const BezoutData& d, const CoeffSeries& x,
                             double solution_tol = 1e-6,
                             const EvalGrid* grid = nullptr);

}  // namespace bezout
