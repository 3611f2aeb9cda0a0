// Timing comparison of the serial reference kernels against the OpenMP
// versions, plus a bitwise agreement check (the parallel loops split work
// over independent outputs, so the results must be identical, not merely
// close).

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "bezout/kernels.hpp"
#include "bezout/series.hpp"

using namespace bezout;

namespace {

std::mt19937_64 rng(7);

Matrix randomMatrix(int r, int c) {
    std::normal_distribution<double> nd;
    Matrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = Complex(nd(rng), nd(rng));
    return m;
}

CoeffSeries randomSeries(int r, int c, int deg) {
    CoeffSeries f(r, c, 0, deg + 1);
    for (int nu = 0; nu <= deg; ++nu) f.coeffs[nu] = randomMatrix(r, c);
    return f;
}

template <typename F>
double timeMs(F&& fn, int reps = 3) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

double maxDiff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

double maxDiff(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
    double m = 0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, maxDiff(a[i], b[i]));
    return m;
}

void row(const char* name, double serial_ms, double parallel_ms, double diff) {
    std::printf("%-18s %10.2f ms %10.2f ms %8.2fx   max|diff| %.1e\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms, diff);
}

}  // namespace

int main() {
    std::printf("%-18s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        CoeffSeries f = randomSeries(4, 4, 256);
        CoeffSeries g = randomSeries(4, 4, 256);
        std::vector<Matrix> rs, rp;
        double ts = timeMs([&] { rs = kernels::convolveSerial(f.coeffs, g.coeffs); });
        double tp = timeMs([&] { rp = kernels::convolveParallel(f.coeffs, g.coeffs); });
        row("convolve", ts, tp, maxDiff(rs, rp));
    }
    {
        CoeffSeries g = randomSeries(2, 4, 8);
        Matrix rs, rp;
        double ts = timeMs([&] { rs = kernels::gramSectionSerial(g, 256); });
        double tp = timeMs([&] { rp = kernels::gramSectionParallel(g, 256); });
        row("gramSection", ts, tp, maxDiff(rs, rp));
    }
    {
        CoeffSeries c = randomSeries(4, 4, 8);
        c.coeffs[0] += 8.0 * Matrix::Identity(4, 4);  // well conditioned band
        Matrix b = randomMatrix(512 * 4, 32);
        Matrix rs, rp;
        double ts = timeMs([&] { rs = kernels::lowerToeplitzSolveSerial(c.coeffs, b); });
        double tp = timeMs([&] { rp = kernels::lowerToeplitzSolveParallel(c.coeffs, b); });
        row("lowerSolve", ts, tp, maxDiff(rs, rp));
        double us = timeMs([&] { rs = kernels::upperToeplitzSolveSerial(c.coeffs, b); });
        double up = timeMs([&] { rp = kernels::upperToeplitzSolveParallel(c.coeffs, b); });
        row("upperSolve", us, up, maxDiff(rs, rp));
    }
    {
        CoeffSeries f = randomSeries(4, 4, 512);
        std::vector<Complex> pts;
        for (int k = 0; k < 1024; ++k) {
            double t = 2.0 * 3.14159265358979323846 * k / 1024;
            pts.emplace_back(0.97 * std::cos(t), 0.97 * std::sin(t));
        }
        std::vector<Matrix> rs, rp;
        double ts = timeMs([&] { rs = kernels::evalBatchSerial(f, pts); });
        double tp = timeMs([&] { rp = kernels::evalBatchParallel(f, pts); });
        row("evalBatch", ts, tp, maxDiff(rs, rp));
    }
    {
        CoeffSeries f = randomSeries(4, 2, 32);
        Matrix rs, rp;
        double ts = timeMs([&] { rs = kernels::columnGramSerial(f, 256, 64); });
        double tp = timeMs([&] { rp = kernels::columnGramParallel(f, 256, 64); });
        row("columnGram", ts, tp, maxDiff(rs, rp));
    }
    return 0;
}
