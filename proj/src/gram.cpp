#include "bezout/gram.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>

#include "bezout/kernels.hpp"
#include "bezout/log.hpp"

namespace bezout {

namespace {

void requireAnalyticSymbol(const CoeffSeries& g, const char* who) {
    g.validate();
    if (g.lo != 0) throw ShapeError(std::string(who) + ": symbol must be analytic (lo == 0)");
}

/// Margins at the standard diagnostic sizes plus the working size; attached
/// to every NotPositive thrown out of the builder.
std::vector<std::pair<int, double>> rejectionLadder(const CoeffSeries& g, int n) {
    std::vector<int> sizes{32, 64, 128};
    if (std::find(sizes.begin(), sizes.end(), n) == sizes.end()) sizes.push_back(n);
    std::sort(sizes.begin(), sizes.end());
    return marginLadder(g, sizes);
}

/// T_R^{-1} on every column of b through the spectral factor: back
/// substitution with the adjoint factor first, then forward substitution.
Matrix applyToeplitzRInverse(const GramSolver& s, const Matrix& b) {
    return kernels::lowerToeplitzSolveDispatch(
        s.r_factor.r_plus.coeffs,
        kernels::upperToeplitzSolveDispatch(s.r_factor.r_plus.coeffs, b));
}

Matrix applyBatchImpl(const GramSolver& s, const Matrix& b) {
    Matrix w = applyToeplitzRInverse(s, b);
    if (s.middle_blocks > 0) {
        const int corner = s.middle_blocks * s.g.cols;
        const auto hc = s.hankel.matrix.leftCols(corner);
        Matrix u = hc.adjoint() * w;
        Matrix v = s.middle_factor.solve(u);
        w += applyToeplitzRInverse(s, (hc * v).eval());
    }
    return w;
}

}  // namespace

GramSolver buildGramSolver(const CoeffSeries& g, int n, const SolveConfig& cfg_in) {
    requireAnalyticSymbol(g, "buildGramSolver");
    if (g.rows > g.cols)
        throw ShapeError("buildGramSolver: symbol must be wide or square (m <= p)");
    const int d = g.degree();
    SolveConfig cfg = cfg_in.resolved(d);
    if (n <= 0) n = cfg.section_blocks;
    cfg.section_blocks = n;
    if (n < d + 1)
        throw ShapeError("buildGramSolver: section size must exceed the symbol degree");

    GramSolver s;
    s.g = g;
    s.n_blocks = n;
    s.cross_check = cfg.cross_check;
    s.cfg = cfg;

    s.margin = strictPositivityMargin(g, n);
    if (!(s.margin > cfg.positivity_tol)) {
        std::ostringstream msg;
        msg << "Gram operator not strictly positive: margin " << s.margin
            << " <= tol " << cfg.positivity_tol << " at section " << n;
        throw NotPositive(msg.str(), rejectionLadder(g, n));
    }

    CoeffSeries r = convolve(g, adjointSymbol(g));
    try {
        s.r_factor = spectralFactorize(r, cfg);
    } catch (const NotPositive& e) {
        // Re-throw with the section-size ladder so the caller can show why
        // the instance was rejected even though finite sections look fine.
        throw NotPositive(e.what(), rejectionLadder(g, n));
    }
    log::info("gram solver: N=" + std::to_string(n) + " margin=" + std::to_string(s.margin) +
              " factor residual=" + std::to_string(s.r_factor.residual));

    s.hankel = hankelSection(g, n);

    // The Hankel operator of a degree-d polynomial lives in the leading d
    // block columns, so M = I - H^H T_R^{-1} H is the identity outside its
    // leading (d p) x (d p) corner.
    s.middle_blocks = d;
    if (d > 0) {
        const int p = g.cols;
        const int corner = d * p;
        Matrix hc = s.hankel.matrix.leftCols(corner);
        Matrix z = applyToeplitzRInverse(s, hc);
        Matrix mc = Matrix::Identity(corner, corner) - hc.adjoint() * z;
        double herm = (mc - mc.adjoint()).norm();
        if (herm > 1e-12 * std::max(1.0, mc.norm()))
            throw NumericalError("middle operator lost Hermitian symmetry: deviation " +
                                 std::to_string(herm));
        mc = ((mc + mc.adjoint()) / 2.0).eval();
        s.middle_leading = mc;
        s.middle_factor.compute(mc);
        if (s.middle_factor.info() != Eigen::Success)
            throw Singular("middle operator factorization failed");
        Eigen::VectorXd dv = s.middle_factor.vectorD().real();
        double dmax = dv.cwiseAbs().maxCoeff();
        double dmin = dv.cwiseAbs().minCoeff();
        if (!(dmin > 0) || dmax / dmin > 1e12)
            throw Singular("middle operator numerically singular (condition estimate " +
                           std::to_string(dmin > 0 ? dmax / dmin : std::numeric_limits<double>::infinity()) + ")");
    }
    return s;
}

Vector applyGramInverse(const GramSolver& s, const Vector& b) {
    return applyGramInverseBatch(s, b).col(0);
}

Matrix applyGramInverseBatch(const GramSolver& s, const Matrix& b) {
    if (b.rows() != static_cast<Eigen::Index>(s.n_blocks) * s.g.rows)
        throw ShapeError("applyGramInverse: right-hand side must have N blocks of size m");
    Matrix x = applyBatchImpl(s, b);
    if (s.cross_check) {
        Matrix a = gramSection(s.g, s.n_blocks);
        Eigen::LLT<Matrix> llt(a);
        if (llt.info() == Eigen::Success) {
            Matrix xd = llt.solve(b);
            double rel = (x - xd).norm() / std::max(xd.norm(), 1e-300);
            log::info("gram cross-check: structured vs dense rel diff " + std::to_string(rel));
        } else {
            log::info("gram cross-check: dense section not positive definite, skipped");
        }
    }
    return x;
}

Vector applyGramInverseDirect(const CoeffSeries& g, int n, const Vector& b) {
    requireAnalyticSymbol(g, "applyGramInverseDirect");
    if (b.size() != static_cast<Eigen::Index>(n) * g.rows)
        throw ShapeError("applyGramInverseDirect: right-hand side must have N blocks of size m");
    Matrix a = gramSection(g, n);
    Eigen::LLT<Matrix> llt(a);
    if (llt.info() != Eigen::Success)
        throw NotPositive("applyGramInverseDirect: Gram section not positive definite");
    Vector x = llt.solve(b);
    // One refinement step, then certify the residual.
    Vector r = b - a * x;
    x += llt.solve(r);
    double bn = b.norm();
    double res = (a * x - b).norm();
    if (bn > 0 && res > 1e-10 * bn)
        throw NumericalError("applyGramInverseDirect: residual " + std::to_string(res / bn) +
                             " exceeds certification gate");
    return x;
}

}  // namespace bezout
