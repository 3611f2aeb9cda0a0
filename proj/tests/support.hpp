//
// support.hpp
//
// Shared test fixtures: the fully worked 1x2 gold instance with closed-form
// data for every pipeline stage, plus random-instance generators whose
// strict positivity is guaranteed by construction (diagonal-dominance of the
// constant term over the coefficient tail).
//

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "bezout/series.hpp"

namespace testsup {

using bezout::CoeffSeries;
using bezout::Complex;
using bezout::Matrix;
using bezout::Vector;

// --------------------------------------------------------------------------
// Gold instance: G(z) = [1 + z, -z], i.e. G0 = [1 0], G1 = [1 -1].
//
// Everything below is exact arithmetic in q = (3 - sqrt 5)/2, the smaller
// root of q^2 - 3q + 1 = 0.  For this q:  sqrt(q) = 1 - q.
//
//   R(z)      = G G^* = 3 + z + z^{-1}
//   R_plus(z) = q^{-1/2} + q^{1/2} z
//   Xi0       = [1; sqrt q],     Theta0 = [0; sqrt q]  (canonical phases)
//   H0        = [-1, 1/sqrt q]
//   Y(z)      = 1/(1+qz) * [[1-(1-q)z, z], [-(1-q)z, 1+z]]
//   Y^{-1}(z) = [[1+z, -z], [(1-q)z, 1-(1-q)z]]      (degree 1, exact)
//   Xi(z)     = [1; 1-q] / (1+qz)
//   Theta(z)  = sqrt(q)/(1+qz) * [z; 1+z]
//   det Y(z)  = 1/(1+qz)
// --------------------------------------------------------------------------

inline double goldQ() { return (3.0 - std::sqrt(5.0)) / 2.0; }
inline double goldSqrtQ() { return 1.0 - goldQ(); }

inline CoeffSeries goldSymbol() {
    CoeffSeries g(1, 2, 0, 2);
    g.ref(0) << 1.0, 0.0;
    g.ref(1) << 1.0, -1.0;
    return g;
}

/// R = G G^* = 3 + z + z^{-1} as a 1x1 Laurent series.
inline CoeffSeries goldLaurent() {
    CoeffSeries r(1, 1, -1, 3);
    r.ref(-1) << 1.0;
    r.ref(0) << 3.0;
    r.ref(1) << 1.0;
    return r;
}

inline Matrix goldXi0() {
    Matrix x(2, 1);
    x << 1.0, goldSqrtQ();
    return x;
}

inline Matrix goldTheta0() {
    Matrix t(2, 1);
    t << 0.0, goldSqrtQ();
    return t;
}

inline Matrix goldH0() {
    Matrix h(1, 2);
    h << -1.0, 1.0 / goldSqrtQ();
    return h;
}

/// Taylor coefficient nu of Y.
inline Matrix goldYCoeff(int nu) {
    if (nu == 0) return Matrix::Identity(2, 2);
    const double q = goldQ();
    const double f = std::pow(-q, nu) / (1.0 - 2.0 * q);
    Matrix y(2, 2);
    y << f * (1.0 - q), -f * (1.0 - q), f * q, -f * q;
    return y;
}

/// Y^{-1} is the exact degree-1 polynomial [[1+z, -z], [(1-q)z, 1-(1-q)z]].
inline Matrix goldYInvCoeff(int nu) {
    const double q = goldQ();
    Matrix c = Matrix::Zero(2, 2);
    if (nu == 0) c = Matrix::Identity(2, 2);
    if (nu == 1) c << 1.0, -1.0, 1.0 - q, -(1.0 - q);
    return c;
}

/// Taylor coefficient nu of Xi(z) = [1; 1-q] / (1+qz).
inline Matrix goldXiCoeff(int nu) {
    const double q = goldQ();
    Matrix c(2, 1);
    c << 1.0, 1.0 - q;
    return std::pow(-q, nu) * c;
}

/// Taylor coefficient nu of Theta(z) = sqrt(q)/(1+qz) * [z; 1+z].
inline Matrix goldThetaCoeff(int nu) {
    const double q = goldQ();
    const double s = goldSqrtQ();
    Matrix c(2, 1);
    if (nu == 0) {
        c << 0.0, s;
    } else {
        const double w = s * std::pow(-q, nu - 1);
        c << w, w * (1.0 - q);
    }
    return c;
}

/// Taylor coefficient nu of R_plus(z)^{-1} = sqrt(q)/(1+qz).
inline double goldRPlusInvCoeff(int nu) {
    return goldSqrtQ() * std::pow(-goldQ(), nu);
}

inline Complex goldDetY(Complex z) { return 1.0 / (1.0 + goldQ() * z); }

// --------------------------------------------------------------------------
// Random draws
// --------------------------------------------------------------------------

inline Matrix gaussianMatrix(std::mt19937_64& rng, int r, int c) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Matrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = Complex(nd(rng), nd(rng));
    return m;
}

inline Vector gaussianVector(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(nd(rng), nd(rng));
    return v;
}

/// Haar-ish unitary from the QR of a Gaussian matrix.
inline Matrix randomUnitary(std::mt19937_64& rng, int n) {
    Eigen::HouseholderQR<Matrix> qr(gaussianMatrix(rng, n, n));
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        Complex d = r(j, j);
        double a = std::abs(d);
        if (a > 0) q.col(j) *= d / a;
    }
    return q;
}

/// Unstructured random polynomial series (no positivity guarantee).
inline CoeffSeries randomSeries(std::mt19937_64& rng, int r, int c, int deg) {
    CoeffSeries f(r, c, 0, deg + 1);
    for (int nu = 0; nu <= deg; ++nu) f.ref(nu) = gaussianMatrix(rng, r, c);
    return f;
}

/// Random m x p symbol (m <= p) whose Gram operator T_G T_G^H is strictly
/// positive by construction and whose derived series decay fast enough for
/// degree-24 truncations to be converged to ~1e-10.
///
/// The constant term has singular values in [0.9, 1.6]; the tail is scaled so
///     sum_{k>=1} ||G_k|| * 2.5^k  <=  0.5 * sigma_min(G0).
/// At 2.5^k = 1 this leaves the tail below 0.2 * sigma_min, so
/// sigma_min(T_G) >= 0.8 * 0.9 and the Gram margin stays above 0.5; the
/// weighted bound keeps G (hence R_plus^{-1}, Y, Xi, Theta) analytic with
/// coefficient decay ~ 2.5^{-nu}.
inline CoeffSeries randomStrictlyPositive(std::mt19937_64& rng, int m, int p,
                                          int deg) {
    std::uniform_real_distribution<double> sv(0.9, 1.6);
    Matrix u = randomUnitary(rng, m);
    Matrix v = randomUnitary(rng, p);
    Matrix s = Matrix::Zero(m, p);
    double smin = 2.0;
    for (int i = 0; i < m; ++i) {
        double x = sv(rng);
        s(i, i) = x;
        if (x < smin) smin = x;
    }
    CoeffSeries g(m, p, 0, deg + 1);
    g.ref(0) = u * s * v.adjoint();
    if (deg == 0) return g;

    double weighted = 0;
    for (int nu = 1; nu <= deg; ++nu) {
        g.ref(nu) = std::pow(0.35, nu) * gaussianMatrix(rng, m, p);
        weighted += g.ref(nu).operatorNorm() * std::pow(2.5, nu);
    }
    const double budget = 0.5 * smin;
    if (weighted > budget) {
        const double f = budget / weighted;
        for (int nu = 1; nu <= deg; ++nu) g.ref(nu) *= f;
    }
    return g;
}

// --------------------------------------------------------------------------
// Naive oracles
// --------------------------------------------------------------------------

/// Direct power-sum evaluation (no Horner).
inline Matrix naiveEvaluate(const CoeffSeries& f, Complex z) {
    Matrix acc = Matrix::Zero(f.rows, f.cols);
    for (int k = 0; k < f.count(); ++k)
        acc += f.coeffs[k] * std::pow(z, f.lo + k);
    return acc;
}

/// Triple-loop Cauchy product.
inline CoeffSeries naiveConvolve(const CoeffSeries& f, const CoeffSeries& g) {
    CoeffSeries h(f.rows, g.cols, f.lo + g.lo, f.count() + g.count() - 1);
    for (int a = 0; a < f.count(); ++a)
        for (int b = 0; b < g.count(); ++b)
            h.coeffs[a + b] += f.coeffs[a] * g.coeffs[b];
    return h;
}

/// Brute-force Gram section: block (i,j) = sum_k G_{i-k} G_{j-k}^H.
inline Matrix naiveGramSection(const CoeffSeries& g, int blocks) {
    const int m = g.rows;
    Matrix out = Matrix::Zero(blocks * m, blocks * m);
    for (int i = 0; i < blocks; ++i)
        for (int j = 0; j < blocks; ++j) {
            Matrix b = Matrix::Zero(m, m);
            for (int k = 0; k <= std::min(i, j); ++k)
                b += g.at(i - k) * g.at(j - k).adjoint();
            out.block(i * m, j * m, m, m) = b;
        }
    return out;
}

inline double maxAbsDiff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return 1e300;
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace testsup
