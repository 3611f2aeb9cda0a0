//
// series.hpp
//
// Matrix coefficient series F(z) = sum_{nu=lo..hi} F_nu z^nu with absolutely
// summable coefficients, together with the evaluation grid used by all
// residual checks. Analytic series have lo = 0; Laurent symbols such as
// R = G G^* carry negative frequencies.
//
// Frequency nu maps to storage index nu - lo.
//

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "bezout/errors.hpp"

namespace bezout {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct CoeffSeries {
    int rows = 0;
    int cols = 0;
    int lo = 0;                   ///< lowest stored frequency
    std::vector<Matrix> coeffs;   ///< coeffs[k] is the coefficient of z^(lo+k)

    CoeffSeries() = default;
    CoeffSeries(int r, int c, int lo_, int count);

    int hi() const { return lo + static_cast<int>(coeffs.size()) - 1; }
    int count() const { return static_cast<int>(coeffs.size()); }
    bool analytic() const { return lo >= 0; }

    /// Coefficient of z^nu; zero matrix outside the stored range.
    Matrix at(int nu) const;
    /// Mutable access; nu must lie in the stored range.
    Matrix& ref(int nu);

    /// Degree of an analytic polynomial: highest stored frequency (>= 0).
    int degree() const { return hi(); }

    void validate() const;

    static CoeffSeries constant(const Matrix& m0);
    static CoeffSeries identity(int n);
};

/// Point evaluation by Horner's scheme over the stored range.
/// Requires |z| <= 1 + 1e-12; a Laurent series cannot be evaluated at 0.
Matrix evaluate(const CoeffSeries& f, Complex z);

/// Cauchy product h = f * g (full coefficient range, no truncation).
CoeffSeries convolve(const CoeffSeries& f, const CoeffSeries& g);

/// Sum f + g over the union of the stored ranges.
CoeffSeries add(const CoeffSeries& f, const CoeffSeries& g);

/// Scale every coefficient.
CoeffSeries scale(const CoeffSeries& f, Complex s);

/// Adjoint boundary symbol F^*(z): coefficient at -nu is F_nu^H.
/// On |z| = 1 this is the pointwise conjugate transpose.
CoeffSeries adjointSymbol(const CoeffSeries& f);

/// Same-frequency conjugate transpose F_*(z) = F(conj(z))^H: coefficient at
/// nu is F_nu^H. Defined for analytic series only.
CoeffSeries lowerStar(const CoeffSeries& f);

/// Drop coefficients with frequency above deg. If dropped_mass is non-null it
/// receives the summed norm of what was cut.
CoeffSeries truncate(const CoeffSeries& f, int deg, double* dropped_mass = nullptr);

/// sum_nu ||F_nu||_F — the absolute-summability norm of the stored range.
double wienerNorm(const CoeffSeries& f);

/// Norm fraction carried by the top 10% of the stored coefficient range;
/// a small value certifies that the truncation captured the series.
double tailMass(const CoeffSeries& f);

/// Largest entry-wise absolute difference over the common shape.
double maxCoeffDiff(const CoeffSeries& f, const CoeffSeries& g);

struct EvalGrid {
    std::vector<Complex> boundary;   ///< points on |z| = 1
    std::vector<Complex> interior;   ///< points with |z| < 1

    std::vector<Complex> all() const;

    /// boundary_n roots of unity plus per_radius equispaced points on each
    /// of the given radii.
    static EvalGrid make(int boundary_n, int per_radius,
                         const std::vector<double>& radii = {0.3, 0.6, 0.9});
};

}  // namespace bezout
