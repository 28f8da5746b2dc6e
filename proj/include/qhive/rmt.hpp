/**
 * @file rmt.hpp
 * Monte Carlo spectra of U diag(e^{2iπα}) U* V diag(e^{2iπβ}) V* for Haar U, V,
 * and histogram comparison against a density on the (γ_1, γ_2) slice.
 */
#pragma once

#include "qhive/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace qhive {

using CMat = Eigen::MatrixXcd;

/// Samples are generated in chunks of this size, each from its own seeded engine.
inline constexpr std::size_t kSampleChunk = 4096;

/// Engine for chunk k of a run with the given seed.
inline std::mt19937_64 chunk_engine(std::uint64_t seed, std::uint64_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32), 0x71686976u};
    return std::mt19937_64(seq);
}

/// Haar unitary: QR of a complex Ginibre matrix with R's diagonal made positive.
template <class Engine>
CMat haar_unitary(int n, Engine& eng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMat z(n, n);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) z(r, c) = {gauss(eng), gauss(eng)};
    Eigen::HouseholderQR<CMat> qr(z);
    CMat q = qr.householderQ();
    CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        double a = std::abs(r(j, j));
        std::complex<double> ph = a > 0 ? r(j, j) / a : std::complex<double>(1.0);
        q.col(j) *= ph;
    }
    return q;
}

inline CMat diag_phases(const std::vector<double>& theta) {
    const int n = static_cast<int>(theta.size());
    CMat m = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = std::polar(1.0, 2 * std::numbers::pi * theta[i]);
    return m;
}

/// Eigenangles in [0,1), sorted decreasing.
inline std::vector<double> eigen_angles(const CMat& w) {
    Eigen::ComplexEigenSolver<CMat> es(w, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
    std::vector<double> out;
    for (int i = 0; i < w.rows(); ++i) {
        double t = std::arg(es.eigenvalues()(i)) / (2 * std::numbers::pi);
        if (t < 0) t += 1.0;
        if (t >= 1.0) t -= 1.0;
        out.push_back(t);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

/// Distance from x to the nearest integer.
inline double circle_distance(double x) { return std::abs(x - std::round(x)); }

struct SpectrumRun {
    std::vector<std::vector<double>> samples;
    std::uint64_t seed = 0;
    int resampled = 0;  ///< eigensolver failures that were redrawn
};

inline SpectrumRun sample_spectrum(const std::vector<double>& alpha, const std::vector<double>& beta,
                                   std::size_t count, std::uint64_t seed, int threads = 1) {
    const int n = static_cast<int>(alpha.size());
    if (static_cast<int>(beta.size()) != n) throw std::invalid_argument("alpha and beta must have the same length");
    for (const auto* v : {&alpha, &beta}) {
        for (std::size_t i = 0; i + 1 < v->size(); ++i)
            if (!((*v)[i] > (*v)[i + 1])) throw std::invalid_argument("classes must be regular (strictly decreasing)");
        for (double x : *v)
            if (x < 0 || x >= 1) throw std::invalid_argument("angles must lie in [0,1)");
    }
    double trace = 0;
    for (int i = 0; i < n; ++i) trace += alpha[i] + beta[i];
    const CMat A = diag_phases(alpha), B = diag_phases(beta);
    SpectrumRun run;
    run.seed = seed;
    run.samples.resize(count);
    const std::size_t chunks = (count + kSampleChunk - 1) / kSampleChunk;
    std::vector<int> failures(chunks, 0);
    parallel_chunks(chunks, threads, [&](std::size_t k) {
        auto eng = chunk_engine(seed, k);
        const std::size_t end = std::min(count, (k + 1) * kSampleChunk);
        for (std::size_t s = k * kSampleChunk; s < end; ++s) {
            for (;;) {
                CMat U = haar_unitary(n, eng), V = haar_unitary(n, eng);
                CMat W = U * A * U.adjoint() * V * B * V.adjoint();
                try {
                    auto g = eigen_angles(W);
                    double sum = 0;
                    for (double x : g) sum += x;
                    if (circle_distance(sum - trace) > 1e-9) throw std::runtime_error("determinant drift");
                    run.samples[s] = std::move(g);
                    break;
                } catch (const std::runtime_error&) {
                    ++failures[k];
                }
            }
        }
    });
    for (int f : failures) run.resampled += f;
    return run;
}

// ---- histogram comparison on (γ_1, γ_2) ------------------------------------------

struct ComparisonReport {
    int grid = 0;
    std::vector<double> empirical;  ///< row-major [i * grid + j] for γ_1 in cell i, γ_2 in cell j
    std::vector<double> predicted;
    double predicted_total = 0.0;
    double sup_discrepancy = 0.0;   ///< max |emp - pred| / binomial σ over cells with pred > 0
    int sup_cell = -1;
    double chi2 = 0.0;
    int chi2_cells = 0;
    std::size_t samples = 0;
    std::size_t zero_cell_samples = 0;     ///< samples in predicted-zero cells
    std::size_t leakage_samples = 0;       ///< of those, in cells touching the support
    std::size_t outside_support = 0;       ///< of those, in cells away from the support
};

inline int cell_of(double x, int grid) { return std::min(grid - 1, std::max(0, static_cast<int>(x * grid))); }

inline std::vector<double> histogram(const std::vector<std::vector<double>>& samples, int grid) {
    if (samples.empty()) throw std::invalid_argument("empty sample list");
    std::vector<double> h(static_cast<std::size_t>(grid) * grid, 0.0);
    for (const auto& g : samples) {
        if (g.size() < 2) throw std::invalid_argument("samples need at least two angles");
        h[cell_of(g[0], grid) * grid + cell_of(g[1], grid)] += 1.0;
    }
    for (auto& x : h) x /= static_cast<double>(samples.size());
    return h;
}

/**
 * Cell masses by the midpoint rule on sub x sub points per cell. A cell whose
 * points mix zero and nonzero values is cut by the edge of the support, where
 * the density jumps; it is redone with sub * refine points per side.
 */
inline std::vector<double> predicted_masses(const std::function<double(double, double)>& density, int grid, int sub,
                                            int refine = 8) {
    std::vector<double> m(static_cast<std::size_t>(grid) * grid, 0.0);
    auto cell = [&](int i, int j, int k, bool& mixed) {
        const double h = 1.0 / (static_cast<double>(grid) * k);
        double acc = 0;
        int zeros = 0;
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                double v = density((i * k + a + 0.5) * h, (j * k + b + 0.5) * h);
                zeros += v == 0.0;
                acc += v;
            }
        mixed = zeros > 0 && zeros < k * k;
        return acc * h * h;
    };
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            bool mixed = false;
            m[i * grid + j] = cell(i, j, sub, mixed);
            if (mixed && refine > 1) m[i * grid + j] = cell(i, j, sub * refine, mixed);
        }
    return m;
}

inline ComparisonReport compare_masses(std::vector<double> empirical, std::vector<double> predicted, int grid,
                                       std::size_t samples) {
    if (samples == 0) throw std::invalid_argument("empty sample list");
    ComparisonReport r;
    r.grid = grid;
    r.samples = samples;
    const double S = static_cast<double>(samples);
    for (double p : predicted) r.predicted_total += p;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            const int c = i * grid + j;
            const double p = predicted[c], e = empirical[c];
            if (p > 0) {
                double sigma = std::sqrt(std::max(p * (1 - p), 0.0) / S);
                double z = sigma > 0 ? std::abs(e - p) / sigma : 0.0;
                if (z > r.sup_discrepancy) {
                    r.sup_discrepancy = z;
                    r.sup_cell = c;
                }
                r.chi2 += S * (e - p) * (e - p) / p;
                ++r.chi2_cells;
                continue;
            }
            const auto hits = static_cast<std::size_t>(std::llround(e * S));
            if (hits == 0) continue;
            r.zero_cell_samples += hits;
            bool touches = false;
            for (int di = -1; di <= 1; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    int a = i + di, b = j + dj;
                    if (a >= 0 && b >= 0 && a < grid && b < grid && predicted[a * grid + b] > 0) touches = true;
                }
            (touches ? r.leakage_samples : r.outside_support) += hits;
        }
    r.empirical = std::move(empirical);
    r.predicted = std::move(predicted);
    return r;
}

inline ComparisonReport compare(const std::vector<std::vector<double>>& samples,
                                const std::function<double(double, double)>& density, int grid, int sub = 5,
                                int refine = 8) {
    return compare_masses(histogram(samples, grid), predicted_masses(density, grid, sub, refine), grid,
                          samples.size());
}

}  // namespace qhive
