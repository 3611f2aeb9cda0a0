#include "bezout/solver.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "bezout/kernels.hpp"
#include "bezout/log.hpp"

namespace bezout {

namespace {

/// Leading out_blocks block rows of T_G^H w (upper banded block Toeplitz
/// apply): block i = sum_{j=i..i+d} G_{j-i}^H w_j.
Matrix adjointToeplitzApply(const CoeffSeries& g, const Matrix& w, int out_blocks) {
    const int m = g.rows;
    const int p = g.cols;
    const int d = g.degree();
    const int n = static_cast<int>(w.rows()) / m;
    Matrix z = Matrix::Zero(static_cast<Eigen::Index>(out_blocks) * p, w.cols());
    for (int i = 0; i < out_blocks; ++i)
        for (int j = i; j <= std::min(n - 1, i + d); ++j)
            z.middleRows(static_cast<Eigen::Index>(i) * p, p).noalias() +=
                g.coeffs[j - i].adjoint() * w.middleRows(static_cast<Eigen::Index>(j) * m, m);
    return z;
}

/// E_m as a dense right-hand side: identity in block 0, zero below.
Matrix firstBlockEmbedding(int n, int m) {
    Matrix b = Matrix::Zero(static_cast<Eigen::Index>(n) * m, m);
    b.topRows(m) = Matrix::Identity(m, m);
    return b;
}

void requireSolverInput(const CoeffSeries& g) {
    g.validate();
    if (g.lo != 0) throw ShapeError("solve: symbol must be analytic");
    if (g.rows < 1 || g.rows > g.cols)
        throw ShapeError("solve: symbol must be m x p with 1 <= m <= p");
}

CoeffSeries padToDegree(CoeffSeries f, int deg) {
    if (f.hi() > deg) f = truncate(f, deg);
    if (f.hi() < deg)
        f.coeffs.resize(static_cast<size_t>(deg - f.lo + 1), Matrix::Zero(f.rows, f.cols));
    return f;
}

double squaredCoeffNormApplied(const CoeffSeries& f, const Vector& u) {
    double s = 0;
    for (const Matrix& c : f.coeffs) s += (c * u).squaredNorm();
    return s;
}

}  // namespace

Matrix computeXi0(const GramSolver& s) {
    Matrix w = applyGramInverseBatch(s, firstBlockEmbedding(s.n_blocks, s.g.rows));
    return adjointToeplitzApply(s.g, w, 1);
}

Matrix computeTheta0(const GramSolver& s, const SolveConfig& cfg, double* rank_gap_out) {
    const int m = s.g.rows;
    const int p = s.g.cols;
    const int k = p - m;
    const int n = s.n_blocks;

    // First block column of T_G, i.e. T_G E_p.
    Matrix b = Matrix::Zero(static_cast<Eigen::Index>(n) * m, p);
    for (int j = 0; j <= s.g.degree() && j < n; ++j)
        b.middleRows(static_cast<Eigen::Index>(j) * m, m) = s.g.coeffs[j];

    Matrix w = applyGramInverseBatch(s, b);
    Matrix compression = adjointToeplitzApply(s.g, w, 1);
    Matrix pm = Matrix::Identity(p, p) - compression;
    pm = ((pm + pm.adjoint()) / 2.0).eval();

    Eigen::SelfAdjointEigenSolver<Matrix> es(pm);
    if (es.info() != Eigen::Success)
        throw NumericalError("computeTheta0: eigen decomposition failed");
    Eigen::VectorXd ev = es.eigenvalues();  // ascending
    double lam_max = std::max(ev.maxCoeff(), 0.0);
    double cut = std::max(cfg.rank_tol * lam_max, 1e-12);

    int survivors = 0;
    for (int i = 0; i < p; ++i)
        if (ev(i) > cut) ++survivors;
    if (survivors != k) {
        std::ostringstream msg;
        msg << "defect Gram matrix has " << survivors << " eigenvalues above the rank cut "
            << cut << ", expected " << k << "; ladder:";
        msg << std::scientific << std::setprecision(3);
        for (int i = p - 1; i >= 0; --i) msg << " " << ev(i);
        throw RankError(msg.str());
    }

    Matrix theta0(p, k);
    for (int t = 0; t < k; ++t) {
        int idx = p - 1 - t;  // descending eigenvalue order
        Vector col = std::sqrt(ev(idx)) * es.eigenvectors().col(idx);
        Eigen::Index at = 0;
        col.cwiseAbs().maxCoeff(&at);
        Complex lead = col(at);
        if (std::abs(lead) > 0) col *= std::conj(lead) / std::abs(lead);
        theta0.col(t) = col;
    }

    if (rank_gap_out) {
        if (k == 0) {
            *rank_gap_out = 0;
        } else {
            double kept_min = ev(p - k);
            double dropped_max = std::abs(ev(p - k - 1));
            *rank_gap_out = std::min(kept_min / std::max(dropped_max, 1e-300), 1e300);
        }
    }
    return theta0;
}

CoeffSeries computeY(const GramSolver& s, int deg) {
    const int m = s.g.rows;
    const int p = s.g.cols;
    const int n = s.n_blocks;
    const int d = s.g.degree();
    if (deg < 0 || deg > n - 1)
        throw ShapeError("computeY: degree must lie in [0, N-1]");

    CoeffSeries y(p, p, 0, deg + 1);
    y.coeffs[0] = Matrix::Identity(p, p);
    if (deg == 0 || d == 0) return y;

    // Stacked tail coefficients [G_1; G_2; ...] per column of C^p.
    Matrix b = Matrix::Zero(static_cast<Eigen::Index>(n) * m, p);
    for (int i = 0; i + 1 <= d && i < n; ++i)
        b.middleRows(static_cast<Eigen::Index>(i) * m, m) = s.g.coeffs[i + 1];

    Matrix w = applyGramInverseBatch(s, b);
    Matrix z = adjointToeplitzApply(s.g, w, deg);
    for (int nu = 1; nu <= deg; ++nu)
        y.coeffs[nu] = -z.middleRows(static_cast<Eigen::Index>(nu - 1) * p, p);
    return y;
}

CoeffSeries computeYInverse(const GramSolver& s, int deg) {
    const int m = s.g.rows;
    const int p = s.g.cols;
    const int n = s.n_blocks;
    const int d = s.g.degree();
    if (deg < 0 || deg > n - 1)
        throw ShapeError("computeYInverse: degree must lie in [0, N-1]");

    CoeffSeries yi(p, p, 0, deg + 1);
    yi.coeffs[0] = Matrix::Identity(p, p);
    const int dd = std::min(deg, d);
    if (dd < 1) return yi;

    // Shifted first block columns of the Hankel operator: for coefficient nu
    // the right-hand side block i is G_{i+nu}; it vanishes once nu > d, which
    // is what makes the inverse a polynomial of degree <= d.
    Matrix b = Matrix::Zero(static_cast<Eigen::Index>(n) * m, static_cast<Eigen::Index>(dd) * p);
    for (int nu = 1; nu <= dd; ++nu)
        for (int i = 0; i + nu <= d && i < n; ++i)
            b.block(static_cast<Eigen::Index>(i) * m, static_cast<Eigen::Index>(nu - 1) * p, m, p) =
                s.g.coeffs[i + nu];

    Matrix w = applyGramInverseBatch(s, b);
    Matrix z = adjointToeplitzApply(s.g, w, 1);
    for (int nu = 1; nu <= dd; ++nu)
        yi.coeffs[nu] = z.middleCols(static_cast<Eigen::Index>(nu - 1) * p, p);
    return yi;
}

Matrix computeH0(const Matrix& xi0, const Matrix& theta0, const Matrix& g0,
                 double* identity_residual) {
    const int p = static_cast<int>(xi0.rows());
    const int m = static_cast<int>(xi0.cols());
    const int k = static_cast<int>(theta0.cols());
    if (theta0.rows() != p || g0.rows() != m || g0.cols() != p || k != p - m)
        throw ShapeError("computeH0: inconsistent shapes");

    Matrix h0(k, p);
    if (k > 0) {
        Matrix gram = theta0.adjoint() * theta0;
        Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
        double lmin = es.eigenvalues().minCoeff();
        double lmax = es.eigenvalues().maxCoeff();
        if (!(lmin > 0) || lmax / lmin > 1e12)
            throw RankError("computeH0: defect factor columns are numerically dependent");
        h0 = gram.ldlt().solve(theta0.adjoint() * (Matrix::Identity(p, p) - xi0 * g0));
    }

    Matrix a(p, p);
    a.leftCols(m) = xi0;
    a.rightCols(k) = theta0;
    Matrix bm(p, p);
    bm.topRows(m) = g0;
    bm.bottomRows(k) = h0;
    double res = std::max((bm * a - Matrix::Identity(p, p)).norm(),
                          (a * bm - Matrix::Identity(p, p)).norm());
    if (identity_residual) *identity_residual = res;
    if (res > 1e-10)
        throw NumericalError("computeH0: two-sided constant inverse identity failed, residual " +
                             std::to_string(res));
    return h0;
}

CoeffSeries computeXiDirect(const GramSolver& s, int deg) {
    const int n = s.n_blocks;
    if (deg < 0 || deg > n - 1)
        throw ShapeError("computeXiDirect: degree must lie in [0, N-1]");
    const int m = s.g.rows;
    const int p = s.g.cols;
    Matrix w = applyGramInverseBatch(s, firstBlockEmbedding(n, m));
    Matrix z = adjointToeplitzApply(s.g, w, deg + 1);
    CoeffSeries xi(p, m, 0, deg + 1);
    for (int nu = 0; nu <= deg; ++nu)
        xi.coeffs[nu] = z.middleRows(static_cast<Eigen::Index>(nu) * p, p);
    return xi;
}

BezoutData solve(const CoeffSeries& g, const SolveConfig& cfg_in) {
    requireSolverInput(g);
    SolveConfig cfg = cfg_in.resolved(g.degree());
    if (cfg.output_degree > cfg.section_blocks - 1)
        throw ShapeError("solve: output degree must be at most section size - 1");
    GramSolver s = buildGramSolver(g, cfg.section_blocks, cfg);
    return assembleFromSolver(s, cfg);
}

BezoutData assembleFromSolver(const GramSolver& s, const SolveConfig& cfg_in) {
    SolveConfig cfg = cfg_in.resolved(s.g.degree());
    const int deg = std::min(cfg.output_degree, s.n_blocks - 1);

    BezoutData out;
    out.margin = s.margin;
    out.xi0 = computeXi0(s);
    out.theta0 = computeTheta0(s, cfg, &out.diagnostics.rank_gap);
    out.y = computeY(s, deg);
    out.y_inv = computeYInverse(s, deg);
    out.h0 = computeH0(out.xi0, out.theta0, s.g.coeffs[0], &out.diagnostics.h0_identity);
    out.xi = convolve(out.y, CoeffSeries::constant(out.xi0));
    out.theta = convolve(out.y, CoeffSeries::constant(out.theta0));
    out.h = convolve(CoeffSeries::constant(out.h0), out.y_inv);
    out.diagnostics.tail_y = tailMass(out.y);
    out.diagnostics.tail_y_inv = tailMass(out.y_inv);
    log::info("solved: p=" + std::to_string(out.p()) + " m=" + std::to_string(out.m()) +
              " margin=" + std::to_string(out.margin) +
              " tail(Y)=" + std::to_string(out.diagnostics.tail_y));
    return out;
}

CoeffSeries assembleSolution(const BezoutData& d, const CoeffSeries& v, int deg) {
    const int m = d.m();
    const int p = d.p();
    const int k = p - m;
    if (deg < 0) throw ShapeError("assembleSolution: negative degree");
    if (k == 0) return padToDegree(convolve(d.y, CoeffSeries::constant(d.xi0)), deg);

    v.validate();
    if (v.rows != k || v.cols != m || v.lo != 0)
        throw ShapeError("assembleSolution: parameter must be analytic of shape (p-m) x m");
    CoeffSeries inner = add(CoeffSeries::constant(d.xi0),
                            convolve(CoeffSeries::constant(d.theta0), v));
    return padToDegree(convolve(d.y, inner), deg);
}

NormSplit solveNormSplit(const BezoutData& d, const CoeffSeries& v, const Vector& u) {
    const int m = d.m();
    const int k = d.p() - m;
    if (u.size() != m) throw ShapeError("solveNormSplit: direction vector must have size m");

    NormSplit split;
    split.xi_sq = squaredCoeffNormApplied(d.xi, u);
    if (k == 0 || v.rows == 0) {
        split.x_sq = split.xi_sq;
        split.v_sq = 0;
        return split;
    }
    v.validate();
    if (v.rows != k || v.cols != m || v.lo != 0)
        throw ShapeError("solveNormSplit: parameter must be analytic of shape (p-m) x m");
    CoeffSeries inner = add(CoeffSeries::constant(d.xi0),
                            convolve(CoeffSeries::constant(d.theta0), v));
    CoeffSeries x = convolve(d.y, inner);  // full product, no truncation
    split.x_sq = squaredCoeffNormApplied(x, u);
    split.v_sq = squaredCoeffNormApplied(v, u);
    return split;
}

CoeffSeries extractParameter(const BezoutData& d, const CoeffSeries& x,
                             double solution_tol, const EvalGrid* grid) {
    const int m = d.m();
    const int p = d.p();
    const int k = p - m;
    x.validate();
    if (x.rows != p || x.cols != m || x.lo != 0)
        throw ShapeError("extractParameter: candidate must be analytic of shape p x m");

    // Recover the symbol from the stored data: G(z) = G0 Y(z)^{-1} with
    // [G0; H0] the constant inverse of [Xi0 Theta0].
    Matrix a(p, p);
    a.leftCols(m) = d.xi0;
    a.rightCols(k) = d.theta0;
    Matrix g0 = Eigen::PartialPivLU<Matrix>(a)
                    .solve(Matrix::Identity(p, p))
                    .topRows(m)
                    .eval();
    CoeffSeries gx = convolve(convolve(CoeffSeries::constant(g0), d.y_inv), x);

    EvalGrid fallback;
    const EvalGrid* gr = grid;
    if (!gr) {
        fallback = EvalGrid::make(128, 64);
        gr = &fallback;
    }
    std::vector<Complex> pts = gr->all();
    std::vector<Matrix> vals = kernels::evalBatchDispatch(gx, pts);
    double res = 0;
    for (const Matrix& val : vals)
        res = std::max(res, (val - Matrix::Identity(m, m)).norm());
    if (res > solution_tol) {
        std::ostringstream msg;
        msg << "extractParameter: candidate is not a solution; grid residual " << res
            << " > " << solution_tol;
        throw NotASolution(msg.str());
    }

    if (k == 0) return CoeffSeries(0, m, 0, 1);
    return convolve(d.h, x);
}

}  // namespace bezout
