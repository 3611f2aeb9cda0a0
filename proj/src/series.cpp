#include "bezout/series.hpp"

#include <cmath>
#include <numbers>

#include "bezout/kernels.hpp"

namespace bezout {

CoeffSeries::CoeffSeries(int r, int c, int lo_, int count) : rows(r), cols(c), lo(lo_) {
    if (r < 0 || c < 0 || count < 1) throw ShapeError("CoeffSeries: bad shape or count");
    coeffs.assign(count, Matrix::Zero(r, c));
}

Matrix CoeffSeries::at(int nu) const {
    if (nu < lo || nu > hi()) return Matrix::Zero(rows, cols);
    return coeffs[nu - lo];
}

Matrix& CoeffSeries::ref(int nu) {
    if (nu < lo || nu > hi()) throw ShapeError("CoeffSeries::ref: frequency out of range");
    return coeffs[nu - lo];
}

void CoeffSeries::validate() const {
    if (coeffs.empty()) throw ShapeError("CoeffSeries: no coefficients");
    for (const Matrix& c : coeffs) {
        if (c.rows() != rows || c.cols() != cols)
            throw ShapeError("CoeffSeries: coefficient shape mismatch");
        if (!c.allFinite()) throw DomainError("CoeffSeries: non-finite coefficient");
    }
}

CoeffSeries CoeffSeries::constant(const Matrix& m0) {
    CoeffSeries f(static_cast<int>(m0.rows()), static_cast<int>(m0.cols()), 0, 1);
    f.coeffs[0] = m0;
    return f;
}

CoeffSeries CoeffSeries::identity(int n) {
    return constant(Matrix::Identity(n, n));
}

Matrix evaluate(const CoeffSeries& f, Complex z) {
    if (std::abs(z) > 1.0 + 1e-12)
        throw DomainError("evaluate: |z| > 1");
    if (f.lo < 0 && z == Complex(0, 0))
        throw DomainError("evaluate: Laurent series at z = 0");
    if (z == Complex(0, 0))
        return f.lo == 0 ? f.coeffs[0] : Matrix::Zero(f.rows, f.cols);
    // Horner over the stored range, then the z^lo prefactor.
    Matrix acc = f.coeffs.back();
    for (int k = f.count() - 2; k >= 0; --k)
        acc = (acc * z + f.coeffs[k]).eval();
    if (f.lo != 0) {
        Complex zp(1, 0);
        for (int k = 0; k < std::abs(f.lo); ++k) zp *= z;
        acc *= (f.lo > 0) ? zp : Complex(1, 0) / zp;
    }
    return acc;
}

CoeffSeries convolve(const CoeffSeries& f, const CoeffSeries& g) {
    if (f.cols != g.rows) throw ShapeError("convolve: inner dimensions differ");
    CoeffSeries h(f.rows, g.cols, f.lo + g.lo, f.count() + g.count() - 1);
    h.coeffs = kernels::convolveDispatch(f.coeffs, g.coeffs);
    return h;
}

CoeffSeries add(const CoeffSeries& f, const CoeffSeries& g) {
    if (f.rows != g.rows || f.cols != g.cols) throw ShapeError("add: shapes differ");
    int lo = std::min(f.lo, g.lo);
    int hi = std::max(f.hi(), g.hi());
    CoeffSeries h(f.rows, f.cols, lo, hi - lo + 1);
    for (int nu = lo; nu <= hi; ++nu) h.ref(nu) = f.at(nu) + g.at(nu);
    return h;
}

CoeffSeries scale(const CoeffSeries& f, Complex s) {
    CoeffSeries h = f;
    for (Matrix& c : h.coeffs) c *= s;
    return h;
}

CoeffSeries adjointSymbol(const CoeffSeries& f) {
    CoeffSeries h(f.cols, f.rows, -f.hi(), f.count());
    for (int k = 0; k < f.count(); ++k)
        h.coeffs[k] = f.coeffs[f.count() - 1 - k].adjoint();
    return h;
}

CoeffSeries lowerStar(const CoeffSeries& f) {
    if (f.lo < 0) throw ShapeError("lowerStar: series must be analytic");
    CoeffSeries h(f.cols, f.rows, f.lo, f.count());
    for (int k = 0; k < f.count(); ++k) h.coeffs[k] = f.coeffs[k].adjoint();
    return h;
}

CoeffSeries truncate(const CoeffSeries& f, int deg, double* dropped_mass) {
    if (deg < f.lo) throw ShapeError("truncate: degree below lowest frequency");
    double dropped = 0;
    CoeffSeries h = f;
    if (deg < f.hi()) {
        for (int nu = deg + 1; nu <= f.hi(); ++nu) dropped += f.at(nu).norm();
        h.coeffs.resize(deg - f.lo + 1);
    }
    if (dropped_mass) *dropped_mass = dropped;
    return h;
}

double wienerNorm(const CoeffSeries& f) {
    double s = 0;
    for (const Matrix& c : f.coeffs) s += c.norm();
    return s;
}

double tailMass(const CoeffSeries& f) {
    double total = wienerNorm(f);
    if (total == 0) return 0;
    int tail_start = f.count() - std::max(1, f.count() / 10);
    double tail = 0;
    for (int k = tail_start; k < f.count(); ++k) tail += f.coeffs[k].norm();
    return tail / total;
}

double maxCoeffDiff(const CoeffSeries& f, const CoeffSeries& g) {
    if (f.rows != g.rows || f.cols != g.cols) throw ShapeError("maxCoeffDiff: shapes differ");
    if (f.rows == 0 || f.cols == 0) return 0;
    double m = 0;
    int lo = std::min(f.lo, g.lo);
    int hi = std::max(f.hi(), g.hi());
    for (int nu = lo; nu <= hi; ++nu) {
        double d = (f.at(nu) - g.at(nu)).cwiseAbs().maxCoeff();
        if (d > m) m = d;
    }
    return m;
}

std::vector<Complex> EvalGrid::all() const {
    std::vector<Complex> pts = boundary;
    pts.insert(pts.end(), interior.begin(), interior.end());
    return pts;
}

EvalGrid EvalGrid::make(int boundary_n, int per_radius, const std::vector<double>& radii) {
    EvalGrid g;
    g.boundary.reserve(boundary_n);
    for (int k = 0; k < boundary_n; ++k) {
        double t = 2.0 * std::numbers::pi * k / boundary_n;
        g.boundary.emplace_back(std::cos(t), std::sin(t));
    }
    for (double r : radii) {
        for (int k = 0; k < per_radius; ++k) {
            double t = 2.0 * std::numbers::pi * k / per_radius;
            g.interior.emplace_back(r * std::cos(t), r * std::sin(t));
        }
    }
    return g;
}

}  // namespace bezout
