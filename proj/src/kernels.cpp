#include "bezout/kernels.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <Eigen/LU>

namespace bezout::kernels {

namespace {

std::atomic<bool> g_parallel{true};

// Per-entry arithmetic shared by both variants. Parallel loops split over
// output entries only, so the summation order inside one entry never changes
// and serial/parallel results are bit-identical.

Matrix convolveEntry(const std::vector<Matrix>& f, const std::vector<Matrix>& g, int k) {
    const int rows = static_cast<int>(f.front().rows());
    const int cols = static_cast<int>(g.front().cols());
    Matrix acc = Matrix::Zero(rows, cols);
    const int nf = static_cast<int>(f.size());
    const int ng = static_cast<int>(g.size());
    const int i0 = std::max(0, k - ng + 1);
    const int i1 = std::min(nf - 1, k);
    for (int i = i0; i <= i1; ++i) acc += f[i] * g[k - i];
    return acc;
}

Matrix gramBlock(const CoeffSeries& g, int i, int j) {
    const int m = g.rows;
    Matrix acc = Matrix::Zero(m, m);
    const int d = g.degree();
    // sum_{k <= min(i,j)} G_{i-k} G_{j-k}^H restricted to the stored band
    const int kmin = std::max(0, std::max(i - d, j - d));
    const int kmax = std::min(i, j);
    for (int k = kmin; k <= kmax; ++k) acc += g.coeffs[i - k] * g.coeffs[j - k].adjoint();
    return acc;
}

Matrix columnGramEntry(const CoeffSeries& f, int blocks, int j, int k) {
    // gamma_j^H gamma_k for block columns of the lower triangular Toeplitz
    // section: sum_{i < blocks} F_{i-j}^H F_{i-k}
    const int q = f.cols;
    Matrix acc = Matrix::Zero(q, q);
    const int d = f.degree();
    const int i0 = std::max(j, k);
    const int i1 = std::min(blocks - 1, std::min(j, k) + d);
    for (int i = i0; i <= i1; ++i) {
        const Matrix& a = f.coeffs[i - j];
        const Matrix& b = f.coeffs[i - k];
        acc += a.adjoint() * b;
    }
    return acc;
}

}  // namespace

bool parallelEnabled() {
#ifdef _OPENMP
    return g_parallel.load();
#else
    return false;
#endif
}

void setParallel(bool on) { g_parallel.store(on); }

// --- convolve ---------------------------------------------------------------

std::vector<Matrix> convolveSerial(const std::vector<Matrix>& f,
                                   const std::vector<Matrix>& g) {
    const int n = static_cast<int>(f.size() + g.size()) - 1;
    std::vector<Matrix> out(n);
    for (int k = 0; k < n; ++k) out[k] = convolveEntry(f, g, k);
    return out;
}

std::vector<Matrix> convolveParallel(const std::vector<Matrix>& f,
                                     const std::vector<Matrix>& g) {
    const int n = static_cast<int>(f.size() + g.size()) - 1;
    std::vector<Matrix> out(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (int k = 0; k < n; ++k) out[k] = convolveEntry(f, g, k);
    return out;
}

std::vector<Matrix> convolveDispatch(const std::vector<Matrix>& f,
                                     const std::vector<Matrix>& g) {
    if (f.empty() || g.empty()) throw ShapeError("convolve: empty coefficient list");
    return parallelEnabled() ? convolveParallel(f, g) : convolveSerial(f, g);
}

// --- gram section -----------------------------------------------------------

Matrix gramSectionSerial(const CoeffSeries& g, int blocks) {
    const int m = g.rows;
    Matrix a(blocks * m, blocks * m);
    for (int i = 0; i < blocks; ++i)
        for (int j = 0; j <= i; ++j) {
            Matrix b = gramBlock(g, i, j);
            a.block(i * m, j * m, m, m) = b;
            if (j < i) a.block(j * m, i * m, m, m) = b.adjoint();
        }
    return a;
}

Matrix gramSectionParallel(const CoeffSeries& g, int blocks) {
    const int m = g.rows;
    Matrix a(blocks * m, blocks * m);
#pragma omp parallel for schedule(dynamic, 8)
    for (int i = 0; i < blocks; ++i)
        for (int j = 0; j <= i; ++j) {
            Matrix b = gramBlock(g, i, j);
            a.block(i * m, j * m, m, m) = b;
            if (j < i) a.block(j * m, i * m, m, m) = b.adjoint();
        }
    return a;
}

Matrix gramSectionDispatch(const CoeffSeries& g, int blocks) {
    if (blocks < 1) throw ShapeError("gramSection: need at least one block");
    return parallelEnabled() ? gramSectionParallel(g, blocks) : gramSectionSerial(g, blocks);
}

// --- banded triangular Toeplitz solves --------------------------------------

namespace {

// Forward substitution for one column: block (i,j) = C_{i-j}.
void lowerSolveColumn(const std::vector<Matrix>& c,
                      const Eigen::PartialPivLU<Matrix>& lu0, int dim, int blocks,
                      const Matrix& b, Matrix& x, int col) {
    const int d = static_cast<int>(c.size()) - 1;
    for (int i = 0; i < blocks; ++i) {
        Vector s = b.block(i * dim, col, dim, 1);
        const int kmax = std::min(i, d);
        for (int k = 1; k <= kmax; ++k)
            s.noalias() -= c[k] * x.block((i - k) * dim, col, dim, 1);
        x.block(i * dim, col, dim, 1) = lu0.solve(s);
    }
}

// Back substitution for one column: block (i,j) = C_{j-i}^H.
void upperSolveColumn(const std::vector<Matrix>& c,
                      const Eigen::PartialPivLU<Matrix>& lu0h, int dim, int blocks,
                      const Matrix& b, Matrix& x, int col) {
    const int d = static_cast<int>(c.size()) - 1;
    for (int i = blocks - 1; i >= 0; --i) {
        Vector s = b.block(i * dim, col, dim, 1);
        const int kmax = std::min(blocks - 1 - i, d);
        for (int k = 1; k <= kmax; ++k)
            s.noalias() -= c[k].adjoint() * x.block((i + k) * dim, col, dim, 1);
        x.block(i * dim, col, dim, 1) = lu0h.solve(s);
    }
}

void checkToeplitzSolveArgs(const std::vector<Matrix>& c, const Matrix& b) {
    if (c.empty()) throw ShapeError("toeplitz solve: empty coefficient list");
    const int dim = static_cast<int>(c.front().rows());
    if (dim == 0 || c.front().cols() != dim)
        throw ShapeError("toeplitz solve: coefficients must be square");
    if (b.rows() % dim != 0) throw ShapeError("toeplitz solve: rhs not block aligned");
}

}  // namespace

Matrix lowerToeplitzSolveSerial(const std::vector<Matrix>& c, const Matrix& b) {
    checkToeplitzSolveArgs(c, b);
    const int dim = static_cast<int>(c.front().rows());
    const int blocks = static_cast<int>(b.rows()) / dim;
    Eigen::PartialPivLU<Matrix> lu0(c.front());
    Matrix x(b.rows(), b.cols());
    for (int col = 0; col < b.cols(); ++col)
        lowerSolveColumn(c, lu0, dim, blocks, b, x, col);
    return x;
}

Matrix lowerToeplitzSolveParallel(const std::vector<Matrix>& c, const Matrix& b) {
    checkToeplitzSolveArgs(c, b);
    const int dim = static_cast<int>(c.front().rows());
    const int blocks = static_cast<int>(b.rows()) / dim;
    Eigen::PartialPivLU<Matrix> lu0(c.front());
    Matrix x(b.rows(), b.cols());
#pragma omp parallel for schedule(dynamic)
    for (int col = 0; col < static_cast<int>(b.cols()); ++col)
        lowerSolveColumn(c, lu0, dim, blocks, b, x, col);
    return x;
}

Matrix lowerToeplitzSolveDispatch(const std::vector<Matrix>& c, const Matrix& b) {
    return parallelEnabled() ? lowerToeplitzSolveParallel(c, b)
                             : lowerToeplitzSolveSerial(c, b);
}

Matrix upperToeplitzSolveSerial(const std::vector<Matrix>& c, const Matrix& b) {
    checkToeplitzSolveArgs(c, b);
    const int dim = static_cast<int>(c.front().rows());
    const int blocks = static_cast<int>(b.rows()) / dim;
    Eigen::PartialPivLU<Matrix> lu0h(c.front().adjoint().eval());
    Matrix x(b.rows(), b.cols());
    for (int col = 0; col < b.cols(); ++col)
        upperSolveColumn(c, lu0h, dim, blocks, b, x, col);
    return x;
}

Matrix upperToeplitzSolveParallel(const std::vector<Matrix>& c, const Matrix& b) {
    checkToeplitzSolveArgs(c, b);
    const int dim = static_cast<int>(c.front().rows());
    const int blocks = static_cast<int>(b.rows()) / dim;
    Eigen::PartialPivLU<Matrix> lu0h(c.front().adjoint().eval());
    Matrix x(b.rows(), b.cols());
#pragma omp parallel for schedule(dynamic)
    for (int col = 0; col < static_cast<int>(b.cols()); ++col)
        upperSolveColumn(c, lu0h, dim, blocks, b, x, col);
    return x;
}

Matrix upperToeplitzSolveDispatch(const std::vector<Matrix>& c, const Matrix& b) {
    return parallelEnabled() ? upperToeplitzSolveParallel(c, b)
                             : upperToeplitzSolveSerial(c, b);
}

// --- batch evaluation -------------------------------------------------------

std::vector<Matrix> evalBatchSerial(const CoeffSeries& f,
                                    const std::vector<Complex>& pts) {
    std::vector<Matrix> out(pts.size());
    for (int k = 0; k < static_cast<int>(pts.size()); ++k) out[k] = evaluate(f, pts[k]);
    return out;
}

std::vector<Matrix> evalBatchParallel(const CoeffSeries& f,
                                      const std::vector<Complex>& pts) {
    std::vector<Matrix> out(pts.size());
#pragma omp parallel for schedule(static)
    for (int k = 0; k < static_cast<int>(pts.size()); ++k) out[k] = evaluate(f, pts[k]);
    return out;
}

std::vector<Matrix> evalBatchDispatch(const CoeffSeries& f,
                                      const std::vector<Complex>& pts) {
    return parallelEnabled() ? evalBatchParallel(f, pts) : evalBatchSerial(f, pts);
}

// --- column Gram ------------------------------------------------------------

Matrix columnGramSerial(const CoeffSeries& f, int blocks, int jmax) {
    const int q = f.cols;
    Matrix g(jmax * q, jmax * q);
    for (int j = 0; j < jmax; ++j)
        for (int k = 0; k < jmax; ++k)
            g.block(j * q, k * q, q, q) = columnGramEntry(f, blocks, j, k);
    return g;
}

Matrix columnGramParallel(const CoeffSeries& f, int blocks, int jmax) {
    const int q = f.cols;
    Matrix g(jmax * q, jmax * q);
#pragma omp parallel for schedule(dynamic, 4)
    for (int j = 0; j < jmax; ++j)
        for (int k = 0; k < jmax; ++k)
            g.block(j * q, k * q, q, q) = columnGramEntry(f, blocks, j, k);
    return g;
}

Matrix columnGramDispatch(const CoeffSeries& f, int blocks, int jmax) {
    if (jmax > blocks) throw ShapeError("columnGram: jmax exceeds section size");
    return parallelEnabled() ? columnGramParallel(f, blocks, jmax) : columnGramSerial(f, blocks, jmax);
}

}  // namespace bezout::kernels
