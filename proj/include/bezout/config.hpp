//
// config.hpp
//
// Shared solver configuration. Fields left at 0 are resolved against the
// degree of the input symbol by resolveDefaults().
//

#pragma once

#include <cstdint>

namespace bezout {

struct SolveConfig {
    /// Number of coefficient blocks kept in every operator section.
    /// Default: max(64, 8 * deg G).
    int section_blocks = 0;

    /// Highest retained coefficient index of the computed series.
    /// Default: section_blocks / 2.
    int output_degree = 0;

    /// Strict-positivity gate for the Gram margin and the boundary symbol R.
    double positivity_tol = 1e-8;

    /// Relative eigenvalue cut that decides the rank of the defect Gram matrix.
    double rank_tol = 1e-8;

    /// Acceptance residual for the spectral factorization on the boundary grid.
    double factor_tol = 1e-8;

    /// Residual gate used when a candidate solution is checked before
    /// parameter extraction.
    double solution_tol = 1e-6;

    /// Re-run every structured Gram solve through the dense route and log the
    /// relative difference.
    bool cross_check = false;

    /// Seed for all randomized verification draws.
    std::uint64_t seed = 20260822;

    /// Evaluation grid: points on |z| = 1 ...
    int grid_boundary = 128;
    /// ... and points per interior radius.
    int grid_interior = 64;

    /// Resolve the size defaults for a symbol of the given degree.
    SolveConfig resolved(int symbol_degree) const {
        SolveConfig c = *this;
        if (c.section_blocks <= 0) {
            c.section_blocks = 64;
            if (8 * symbol_degree > c.section_blocks) c.section_blocks = 8 * symbol_degree;
        }
        if (c.output_degree <= 0) c.output_degree = c.section_blocks / 2;
        return c;
    }
};

}  // namespace bezout
