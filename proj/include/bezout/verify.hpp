//
// verify.hpp
//
// Machine-checked residuals for every structural identity of the solver:
// multiplier and inverse identities, inner-ness of Theta, the coefficient
// sum identities, the boundary formula for H, kernel/range alignment of the
// Toeplitz sections, and end-to-end solution residuals.
//

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bezout/solver.hpp"

namespace bezout {

struct CheckResult {
    std::string name;
    double residual = 0;
    double tolerance = 0;
    bool pass = false;
    std::string note;   ///< e.g. "n/a (p=m)" or edge-column info
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    EvalGrid grid;
    int degree = 0;
    std::uint64_t seed = 0;

    bool allPass() const;
    const CheckResult* find(const std::string& name) const;
};

/// Isometry and orthogonality of the block columns gamma_j of the Toeplitz
/// section of Theta: gamma_j^H gamma_k = delta_jk I on interior columns.
/// Produces the "C1" and "C2" rows.
std::vector<CheckResult> checkThetaInner(const BezoutData& d, int n_blocks, int jmax);

/// Coefficient sum identities of Y against Gram-inverse data, plus the
/// defect normalization identity. Produces "lemtht1-j0", "lemtht1-jpos",
/// "eqtht0*".
std::vector<CheckResult> checkSumIdentities(const BezoutData& d, const GramSolver& s,
                                            int jmax);

/// Boundary identity H(z) = Theta(z)^H (I - Xi(z) G(z)). Produces "TolH".
std::vector<CheckResult> checkTolokonnikov(const BezoutData& d, const CoeffSeries& g,
                                           const EvalGrid& grid);

/// Range/kernel alignment of the Theta and G Toeplitz sections. Produces
/// "kernel-range".
std::vector<CheckResult> checkKernelRange(const BezoutData& d, const GramSolver& s,
                                          int trials, std::uint64_t seed);

/// Full pipeline + every gated check; never throws on a failed check. When a
/// solvability precondition fails, one failed "precondition" row is emitted
/// and the remaining checks are skipped. `data` optionally supplies an
/// externally computed solution to verify in place of the freshly solved one.
VerifyReport runAll(const CoeffSeries& g, const SolveConfig& cfg,
                    const BezoutData* data = nullptr);

/// Fixed-width human-readable table of the report.
std::string formatReport(const VerifyReport& r);

}  // namespace bezout
