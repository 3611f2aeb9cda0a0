#include "bezout/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "bezout/kernels.hpp"
#include "bezout/log.hpp"

namespace bezout {

namespace {

constexpr int kMaxBauerSection = 4096;

void requireHermitianLaurent(const CoeffSeries& r) {
    r.validate();
    if (r.rows != r.cols) throw ShapeError("spectralFactorize: symbol must be square");
    if (r.lo != -r.hi())
        throw ShapeError("spectralFactorize: stored range must be symmetric around 0");
    double scale = wienerNorm(r);
    for (int nu = 0; nu <= r.hi(); ++nu) {
        double dev = (r.at(-nu) - r.at(nu).adjoint()).norm();
        if (dev > 1e-12 * std::max(1.0, scale))
            throw ShapeError("spectralFactorize: symbol is not Hermitian (R_{-v} != R_v^H)");
    }
}

/// Last block row of the Cholesky factor of the K x K block Toeplitz section
/// with band coefficients a[0..d] (a[k] sits on subdiagonal k). The factor of
/// a banded matrix keeps the band, so only a (d+1)-wide strip is stored.
std::vector<Matrix> bauerLastRow(const std::vector<Matrix>& a, int k_blocks) {
    const int d = static_cast<int>(a.size()) - 1;
    const int m = static_cast<int>(a[0].rows());
    const int w = d + 1;
    // strip[i*w + t] holds L_{i, i-t}
    std::vector<Matrix> strip(static_cast<size_t>(k_blocks) * w);
    std::vector<Matrix> diag(k_blocks);  // lower Cholesky factors L_{ii}
    for (int i = 0; i < k_blocks; ++i) {
        for (int j = std::max(0, i - d); j <= i; ++j) {
            Matrix s = a[i - j];
            for (int t = std::max(0, i - d); t < j; ++t) {
                if (t < j - d) continue;
                s.noalias() -= strip[static_cast<size_t>(i) * w + (i - t)] *
                               strip[static_cast<size_t>(j) * w + (j - t)].adjoint();
            }
            if (j < i) {
                Matrix u = diag[j].adjoint();
                strip[static_cast<size_t>(i) * w + (i - j)] =
                    u.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(s);
            } else {
                Eigen::LLT<Matrix> llt(s);
                if (llt.info() != Eigen::Success)
                    throw NotPositive("spectralFactorize: Toeplitz section is not positive definite");
                diag[i] = llt.matrixL();
                strip[static_cast<size_t>(i) * w] = diag[i];
            }
        }
    }
    std::vector<Matrix> row(w);
    for (int t = 0; t < w; ++t) row[t] = strip[static_cast<size_t>(k_blocks - 1) * w + t];
    return row;
}

double boundaryResidual(const CoeffSeries& r, const CoeffSeries& r_plus, int grid_n) {
    EvalGrid grid = EvalGrid::make(grid_n, 0, {});
    std::vector<Matrix> rv = kernels::evalBatchDispatch(r, grid.boundary);
    std::vector<Matrix> pv = kernels::evalBatchDispatch(r_plus, grid.boundary);
    double worst = 0;
    for (size_t k = 0; k < grid.boundary.size(); ++k)
        worst = std::max(worst, (rv[k] - pv[k].adjoint() * pv[k]).norm());
    return worst;
}

/// Constant unitary bringing W * c0 to lower triangular form with positive
/// real diagonal (the QL route, via reversal + Householder QR).
Matrix normalizingUnitary(const Matrix& c0) {
    const int m = static_cast<int>(c0.rows());
    Matrix rev = Matrix::Zero(m, m);
    for (int i = 0; i < m; ++i) rev(i, m - 1 - i) = 1.0;
    Eigen::HouseholderQR<Matrix> qr(rev * c0 * rev);
    Matrix q = rev * Matrix(qr.householderQ()) * rev;
    Matrix l = q.adjoint() * c0;
    Vector phases(m);
    for (int i = 0; i < m; ++i) {
        Complex lii = l(i, i);
        phases(i) = (std::abs(lii) == 0) ? Complex(1, 0) : std::conj(lii) / std::abs(lii);
    }
    return phases.asDiagonal() * q.adjoint();
}

}  // namespace

SpectralFactor spectralFactorize(const CoeffSeries& r, const SolveConfig& cfg_in) {
    requireHermitianLaurent(r);
    const int d = r.hi();
    const int m = r.rows;
    SolveConfig cfg = cfg_in.resolved(std::max(1, d));

    // Boundary positivity gates solvability: a zero of R on |z|=1 defeats any
    // outer factorization.
    {
        EvalGrid grid = EvalGrid::make(cfg.grid_boundary, 0, {});
        std::vector<Matrix> rv = kernels::evalBatchDispatch(r, grid.boundary);
        double min_eig = std::numeric_limits<double>::infinity();
        for (const Matrix& v : rv) {
            Eigen::SelfAdjointEigenSolver<Matrix> es(((v + v.adjoint()) / 2.0).eval(),
                                                     Eigen::EigenvaluesOnly);
            min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
        }
        if (!(min_eig > cfg.positivity_tol)) {
            std::ostringstream msg;
            msg << "spectralFactorize: boundary symbol not strictly positive (min eig "
                << min_eig << " <= tol " << cfg.positivity_tol << ")";
            throw NotPositive(msg.str());
        }
    }

    // Bauer reads the transposed symbol so the converged row gives the right
    // factorization R = R_plus^H R_plus rather than the left one.
    std::vector<Matrix> band(d + 1);
    for (int k = 0; k <= d; ++k) band[k] = r.at(k).transpose();

    int k0 = std::clamp(4 * cfg.section_blocks, 4 * (d + 1), kMaxBauerSection);
    CoeffSeries best;
    double best_res = std::numeric_limits<double>::infinity();
    int best_k = 0;
    double prev_res = std::numeric_limits<double>::infinity();
    for (int k = k0; k <= kMaxBauerSection; k *= 2) {
        std::vector<Matrix> row = bauerLastRow(band, k);
        CoeffSeries cand(m, m, 0, d + 1);
        for (int t = 0; t <= d; ++t) cand.coeffs[t] = row[t].transpose();
        double res = boundaryResidual(r, cand, cfg.grid_boundary);
        log::debug("bauer section " + std::to_string(k) + " residual " + std::to_string(res));
        if (res < best_res) {
            best = cand;
            best_res = res;
            best_k = k;
        }
        // Stop once converged to rounding, or once below tolerance with the
        // doubling no longer paying for itself.
        if (res <= 1e-13 * std::max(1.0, wienerNorm(r))) break;
        if (res <= cfg.factor_tol && res > 0.5 * prev_res) break;
        prev_res = res;
    }
    if (!(best_res <= cfg.factor_tol)) {
        std::ostringstream msg;
        msg << "spectralFactorize: residual " << best_res << " above tolerance "
            << cfg.factor_tol << " at section cap " << kMaxBauerSection;
        throw NoConvergence(msg.str());
    }

    Matrix w = normalizingUnitary(best.coeffs[0]);
    for (Matrix& c : best.coeffs) c = (w * c).eval();

    SpectralFactor f;
    f.r_plus = best;
    f.residual = best_res;
    f.section_used = best_k;
    return f;
}

CoeffSeries invertOuter(const CoeffSeries& r_plus, int deg) {
    r_plus.validate();
    if (r_plus.rows != r_plus.cols || r_plus.lo != 0)
        throw ShapeError("invertOuter: factor must be square and analytic");
    if (deg < 0) throw ShapeError("invertOuter: negative degree");
    const Matrix& c0 = r_plus.coeffs[0];
    {
        Eigen::JacobiSVD<Matrix> svd(c0);
        double smin = svd.singularValues().minCoeff();
        double smax = svd.singularValues().maxCoeff();
        if (!(smin > 0) || smax / smin > 1e12)
            throw Singular("invertOuter: constant term numerically singular");
    }
    Eigen::PartialPivLU<Matrix> lu(c0);
    const int d = r_plus.degree();
    CoeffSeries out(r_plus.rows, r_plus.cols, 0, deg + 1);
    out.coeffs[0] = lu.solve(Matrix::Identity(r_plus.rows, r_plus.cols));
    for (int k = 1; k <= deg; ++k) {
        Matrix s = Matrix::Zero(r_plus.rows, r_plus.cols);
        for (int j = 1; j <= std::min(k, d); ++j)
            s.noalias() += r_plus.coeffs[j] * out.coeffs[k - j];
        out.coeffs[k] = -lu.solve(s);
    }
    return out;
}

}  // namespace bezout
