#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "bezout/kernels.hpp"
#include "bezout/sections.hpp"
#include "support.hpp"

using namespace bezout;
using namespace testsup;
namespace k = bezout::kernels;

namespace {

std::vector<Matrix> randomList(std::mt19937_64& rng, int n, int r, int c) {
    std::vector<Matrix> v;
    v.reserve(n);
    for (int i = 0; i < n; ++i) v.push_back(gaussianMatrix(rng, r, c));
    return v;
}

double listDiff(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
    if (a.size() != b.size()) return 1e300;
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, maxAbsDiff(a[i], b[i]));
    return m;
}

/// Dense lower block Toeplitz section from a coefficient list.
Matrix denseLower(const std::vector<Matrix>& c, int blocks) {
    const int d = static_cast<int>(c[0].rows());
    Matrix t = Matrix::Zero(blocks * d, blocks * d);
    for (int i = 0; i < blocks; ++i)
        for (int j = 0; j <= i; ++j)
            if (i - j < static_cast<int>(c.size()))
                t.block(i * d, j * d, d, d) = c[i - j];
    return t;
}

/// Coefficient list with a dominant constant term (invertible section).
std::vector<Matrix> bandedSolvable(std::mt19937_64& rng, int dim, int band) {
    std::vector<Matrix> c = randomList(rng, band + 1, dim, dim);
    c[0] += 4.0 * Matrix::Identity(dim, dim);
    return c;
}

}  // namespace

TEST_CASE("convolve kernel: serial/parallel bit-identical, matches naive") {
    std::mt19937_64 rng(201);
    auto f = randomList(rng, 7, 2, 3);
    auto g = randomList(rng, 5, 3, 2);

    auto s = k::convolveSerial(f, g);
    auto p = k::convolveParallel(f, g);
    CHECK(listDiff(s, p) == 0.0);

    CoeffSeries fs(2, 3, 0, 7), gs(3, 2, 0, 5);
    fs.coeffs = f;
    gs.coeffs = g;
    CoeffSeries expect = naiveConvolve(fs, gs);
    CHECK(s.size() == expect.coeffs.size());
    CHECK(listDiff(s, expect.coeffs) < 1e-12);
}

TEST_CASE("gramSection kernel: serial/parallel bit-identical, matches brute force") {
    std::mt19937_64 rng(202);
    CoeffSeries g = randomSeries(rng, 2, 4, 5);
    const int n = 17;

    Matrix s = k::gramSectionSerial(g, n);
    Matrix p = k::gramSectionParallel(g, n);
    CHECK(maxAbsDiff(s, p) == 0.0);
    CHECK(maxAbsDiff(s, naiveGramSection(g, n)) < 1e-12);

    // also equals the dense product of the Toeplitz section with its adjoint
    Matrix t = toeplitzSection(g, n).matrix;
    CHECK(maxAbsDiff(s, Matrix(t * t.adjoint())) < 1e-12);
}

TEST_CASE("lower triangular Toeplitz solve") {
    std::mt19937_64 rng(203);
    const int dim = 3, blocks = 24, ncols = 5;
    auto c = bandedSolvable(rng, dim, 4);
    Matrix b = gaussianMatrix(rng, blocks * dim, ncols);

    Matrix xs = k::lowerToeplitzSolveSerial(c, b);
    Matrix xp = k::lowerToeplitzSolveParallel(c, b);
    CHECK(maxAbsDiff(xs, xp) == 0.0);

    Matrix t = denseLower(c, blocks);
    CHECK((t * xs - b).norm() < 1e-10 * b.norm());
    CHECK(maxAbsDiff(xs, Matrix(t.partialPivLu().solve(b))) < 1e-9);
}

TEST_CASE("upper (adjoint) triangular Toeplitz solve") {
    std::mt19937_64 rng(204);
    const int dim = 2, blocks = 31, ncols = 4;
    auto c = bandedSolvable(rng, dim, 3);
    Matrix b = gaussianMatrix(rng, blocks * dim, ncols);

    Matrix ys = k::upperToeplitzSolveSerial(c, b);
    Matrix yp = k::upperToeplitzSolveParallel(c, b);
    CHECK(maxAbsDiff(ys, yp) == 0.0);

    Matrix th = denseLower(c, blocks).adjoint();
    CHECK((th * ys - b).norm() < 1e-10 * b.norm());
}

TEST_CASE("upper solve then lower solve inverts T^H T") {
    std::mt19937_64 rng(205);
    const int dim = 2, blocks = 20;
    auto c = bandedSolvable(rng, dim, 2);
    Matrix t = denseLower(c, blocks);
    Matrix b = gaussianMatrix(rng, blocks * dim, 1);

    Matrix w = k::upperToeplitzSolveDispatch(c, b);  // T^H w = b
    Matrix x = k::lowerToeplitzSolveDispatch(c, w);  // T x = w
    CHECK((t.adjoint() * (t * x) - b).norm() < 1e-9 * b.norm());
}

TEST_CASE("evalBatch kernel") {
    std::mt19937_64 rng(206);
    CoeffSeries f = randomSeries(rng, 3, 2, 12);
    EvalGrid grid = EvalGrid::make(9, 3);
    auto pts = grid.all();

    auto s = k::evalBatchSerial(f, pts);
    auto p = k::evalBatchParallel(f, pts);
    CHECK(listDiff(s, p) == 0.0);
    REQUIRE(s.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(maxAbsDiff(s[i], evaluate(f, pts[i])) == 0.0);
}

TEST_CASE("columnGram kernel") {
    std::mt19937_64 rng(207);
    CoeffSeries f = randomSeries(rng, 4, 2, 6);
    const int blocks = 19, jmax = 7;

    Matrix s = k::columnGramSerial(f, blocks, jmax);
    Matrix p = k::columnGramParallel(f, blocks, jmax);
    CHECK(maxAbsDiff(s, p) == 0.0);

    Matrix t = toeplitzSection(f, blocks).matrix;
    const int c = f.cols;
    REQUIRE(s.rows() == jmax * c);
    for (int j = 0; j < jmax; ++j)
        for (int l = 0; l < jmax; ++l) {
            Matrix expect = t.middleCols(j * c, c).adjoint() * t.middleCols(l * c, c);
            CHECK(maxAbsDiff(Matrix(s.block(j * c, l * c, c, c)), expect) < 1e-12);
        }
}

TEST_CASE("dispatch honours the parallel switch") {
    std::mt19937_64 rng(208);
    auto f = randomList(rng, 6, 2, 2);
    auto g = randomList(rng, 6, 2, 2);

    CHECK(k::parallelEnabled());           // default on
    auto on = k::convolveDispatch(f, g);
    k::setParallel(false);
    CHECK_FALSE(k::parallelEnabled());
    auto off = k::convolveDispatch(f, g);
    k::setParallel(true);
    CHECK(k::parallelEnabled());

    CHECK(listDiff(on, off) == 0.0);
    CHECK(listDiff(off, k::convolveSerial(f, g)) == 0.0);
}
