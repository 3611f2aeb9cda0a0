//
// kernels.hpp
//
// Hot data-parallel loops of the pipeline, each in a serial reference
// version and an OpenMP version. Parallelism is always over independent
// output entries, so both versions perform identical arithmetic per entry
// and produce bit-identical results; tests assert exactly that.
//
// The public library routines go through the dispatch functions, which pick
// the OpenMP version unless it was disabled at runtime (or not compiled in).
//

#pragma once

#include <vector>

#include "bezout/series.hpp"

namespace bezout::kernels {

/// Global switch consulted by the dispatchers (default: parallel on).
bool parallelEnabled();
void setParallel(bool on);

// --- Cauchy product: out[k] = sum_{i+j=k} f[i] g[j] ------------------------

std::vector<Matrix> convolveSerial(const std::vector<Matrix>& f,
                                   const std::vector<Matrix>& g);
std::vector<Matrix> convolveParallel(const std::vector<Matrix>& f,
                                     const std::vector<Matrix>& g);
std::vector<Matrix> convolveDispatch(const std::vector<Matrix>& f,
                                     const std::vector<Matrix>& g);

// --- Gram section: block (i,j) = sum_{k<=min(i,j)} G_{i-k} G_{j-k}^H -------

Matrix gramSectionSerial(const CoeffSeries& g, int blocks);
Matrix gramSectionParallel(const CoeffSeries& g, int blocks);
Matrix gramSectionDispatch(const CoeffSeries& g, int blocks);

// --- Batched banded triangular Toeplitz solves -----------------------------
//
// Solve T x = b column by column, where T is the section with block (i,j)
// = C_{i-j} (lower, forward substitution) or block (i,j) = C_{j-i}^H (upper,
// back substitution), C being the coefficient list of an analytic symbol
// with invertible constant term. b is (blocks*dim) x ncols.

Matrix lowerToeplitzSolveSerial(const std::vector<Matrix>& c, const Matrix& b);
Matrix lowerToeplitzSolveParallel(const std::vector<Matrix>& c, const Matrix& b);
Matrix lowerToeplitzSolveDispatch(const std::vector<Matrix>& c, const Matrix& b);

Matrix upperToeplitzSolveSerial(const std::vector<Matrix>& c, const Matrix& b);
Matrix upperToeplitzSolveParallel(const std::vector<Matrix>& c, const Matrix& b);
Matrix upperToeplitzSolveDispatch(const std::vector<Matrix>& c, const Matrix& b);

// --- Batch evaluation of a series on many points ---------------------------

std::vector<Matrix> evalBatchSerial(const CoeffSeries& f,
                                    const std::vector<Complex>& pts);
std::vector<Matrix> evalBatchParallel(const CoeffSeries& f,
                                      const std::vector<Complex>& pts);
std::vector<Matrix> evalBatchDispatch(const CoeffSeries& f,
                                      const std::vector<Complex>& pts);

// --- Column Gram matrix of a block Toeplitz section ------------------------
//
// g(j,k) = gamma_j^H gamma_k where gamma_j is block column j of the section
// of the analytic symbol; used by the isometry checks. Returns the
// (jmax*cols) x (jmax*cols) Hermitian matrix.

Matrix columnGramSerial(const CoeffSeries& f, int blocks, int jmax);
Matrix columnGramParallel(const CoeffSeries& f, int blocks, int jmax);
Matrix columnGramDispatch(const CoeffSeries& f, int blocks, int jmax);

}  // namespace bezout::kernels
