#include "bezout/sections.hpp"

#include <Eigen/Eigenvalues>

#include "bezout/kernels.hpp"

namespace bezout {

namespace {

void requireAnalytic(const CoeffSeries& g, const char* where) {
    g.validate();
    if (!g.analytic()) throw ShapeError(std::string(where) + ": symbol must be analytic");
    if (g.lo != 0) throw ShapeError(std::string(where) + ": symbol must start at frequency 0");
}

}  // namespace

OperatorSection toeplitzSection(const CoeffSeries& g, int blocks) {
    requireAnalytic(g, "toeplitzSection");
    if (blocks < 1) throw ShapeError("toeplitzSection: need at least one block");
    OperatorSection s;
    s.kind = SectionKind::Toeplitz;
    s.symbol = g;
    s.blocks = blocks;
    s.matrix = Matrix::Zero(blocks * g.rows, blocks * g.cols);
    for (int i = 0; i < blocks; ++i)
        for (int j = std::max(0, i - g.degree()); j <= i; ++j)
            s.matrix.block(i * g.rows, j * g.cols, g.rows, g.cols) = g.coeffs[i - j];
    return s;
}

OperatorSection hankelSection(const CoeffSeries& g, int blocks) {
    requireAnalytic(g, "hankelSection");
    if (blocks < 1) throw ShapeError("hankelSection: need at least one block");
    OperatorSection s;
    s.kind = SectionKind::Hankel;
    s.symbol = g;
    s.blocks = blocks;
    s.matrix = Matrix::Zero(blocks * g.rows, blocks * g.cols);
    for (int i = 0; i < blocks; ++i)
        for (int j = 0; j < blocks; ++j)
            if (i + j + 1 <= g.degree())
                s.matrix.block(i * g.rows, j * g.cols, g.rows, g.cols) = g.coeffs[i + j + 1];
    return s;
}

Matrix gramSection(const CoeffSeries& g, int blocks) {
    requireAnalytic(g, "gramSection");
    return kernels::gramSectionDispatch(g, blocks);
}

double strictPositivityMargin(const CoeffSeries& g, int blocks) {
    Matrix a = gramSection(g, blocks);
    Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

std::vector<std::pair<int, double>> marginLadder(const CoeffSeries& g,
                                                 const std::vector<int>& sizes) {
    std::vector<std::pair<int, double>> out;
    out.reserve(sizes.size());
    for (int n : sizes) out.emplace_back(n, strictPositivityMargin(g, n));
    return out;
}

}  // namespace bezout
