//
// sections.hpp
//
// Finite sections of the block operators attached to an analytic symbol
// G(z) = sum_{nu=0..d} G_nu z^nu with G_nu of size m x p:
//
//   Toeplitz  T_G : block (i,j) = G_{i-j}   (lower block triangular)
//   Hankel    H_G : block (i,j) = G_{i+j+1}
//   Gram          : T_G T_G^H, assembled exactly as
//                   block (i,j) = sum_{k<=min(i,j)} G_{i-k} G_{j-k}^H.
//
// Sections keep the leading `blocks` block rows and columns. Because T_G is
// block lower triangular, its Gram section equals the section of the
// infinite Gram operator exactly.
//

#pragma once

#include <vector>

#include "bezout/series.hpp"

namespace bezout {

enum class SectionKind { Toeplitz, Hankel };

struct OperatorSection {
    SectionKind kind = SectionKind::Toeplitz;
    CoeffSeries symbol;
    int blocks = 0;
    Matrix matrix;   ///< dense (blocks*rows) x (blocks*cols)
};

/// Dense section of the block lower triangular Toeplitz operator.
OperatorSection toeplitzSection(const CoeffSeries& g, int blocks);

/// Dense section of the block Hankel operator.
OperatorSection hankelSection(const CoeffSeries& g, int blocks);

/// Exact section of T_G T_G^H.
Matrix gramSection(const CoeffSeries& g, int blocks);

/// Smallest eigenvalue of the Gram section; strictly positive iff the finite
/// section is invertible. Decreasing in `blocks` by eigenvalue interlacing.
double strictPositivityMargin(const CoeffSeries& g, int blocks);

/// Margins at a ladder of section sizes (used by rejection diagnostics).
std::vector<std::pair<int, double>> marginLadder(const CoeffSeries& g,
                                                 const std::vector<int>& sizes);

}  // namespace bezout
