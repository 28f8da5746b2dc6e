#include "qhive/rmt.hpp"

#include <gtest/gtest.h>

using namespace qhive;

TEST(Haar, ColumnsAreOrthonormal) {
    auto eng = chunk_engine(5, 0);
    for (int n : {1, 2, 3, 5}) {
        CMat u = haar_unitary(n, eng);
        EXPECT_LT((u.adjoint() * u - CMat::Identity(n, n)).norm(), 1e-12);
    }
}

TEST(Haar, FirstEntryHasUniformModulusLaw) {
    // |U_11|^2 is Beta(1, n-1): mean 1/n
    auto eng = chunk_engine(9, 0);
    const int n = 3, count = 20000;
    double mean = 0;
    for (int i = 0; i < count; ++i) mean += std::norm(haar_unitary(n, eng)(0, 0));
    mean /= count;
    double sd = std::sqrt((n - 1.0) / (n * n * (n + 1.0)) / count);
    EXPECT_NEAR(mean, 1.0 / n, 5 * sd);
}

TEST(Spectrum, DeterminantAndThreadIndependence) {
    std::vector<double> a{0.565, 0.26, 0.087}, b{0.78, 0.43, 0.217};
    auto r1 = sample_spectrum(a, b, 9000, 42, 1), r3 = sample_spectrum(a, b, 9000, 42, 3);
    ASSERT_EQ(r1.samples.size(), 9000u);
    EXPECT_EQ(r1.samples, r3.samples);
    double trace = 0;
    for (int i = 0; i < 3; ++i) trace += a[i] + b[i];
    for (const auto& g : r1.samples) {
        EXPECT_TRUE(std::is_sorted(g.begin(), g.end(), std::greater<>()));
        EXPECT_LT(circle_distance(g[0] + g[1] + g[2] - trace), 1e-9);
    }
    auto other = sample_spectrum(a, b, 100, 43, 1);
    EXPECT_NE(other.samples[0], r1.samples[0]);
}

TEST(Spectrum, RejectsBadClasses) {
    EXPECT_THROW(sample_spectrum({0.2, 0.5}, {0.5, 0.2}, 1, 1), std::invalid_argument);
    EXPECT_THROW(sample_spectrum({0.5, 0.2}, {0.5}, 1, 1), std::invalid_argument);
    EXPECT_THROW(sample_spectrum({1.2, 0.2}, {0.5, 0.2}, 1, 1), std::invalid_argument);
}

TEST(Histogram, NormalizedAndBinnedByFirstTwoAngles) {
    std::vector<std::vector<double>> s{{0.95, 0.5, 0.1}, {0.99, 0.51, 0.0}, {0.05, 0.01, 0.0}, {1.0, 0.0, 0.0}};
    auto h = histogram(s, 10);
    double total = 0;
    for (double x : h) total += x;
    EXPECT_DOUBLE_EQ(total, 1.0);
    EXPECT_DOUBLE_EQ(h[9 * 10 + 5], 0.5);
    EXPECT_DOUBLE_EQ(h[0], 0.25);
    EXPECT_DOUBLE_EQ(h[9 * 10 + 0], 0.25);
}

TEST(Compare, KnownSmoothDensity) {
    // γ_1 with density 2x, γ_2 uniform
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(0, 1);
    std::vector<std::vector<double>> s;
    for (int i = 0; i < 200000; ++i) s.push_back({std::sqrt(U(rng)), U(rng)});
    auto rep = compare(s, [](double x, double) { return 2 * x; }, 20, 5);
    EXPECT_NEAR(rep.predicted_total, 1.0, 1e-9);
    EXPECT_EQ(rep.outside_support, 0u);
    EXPECT_LT(rep.sup_discrepancy, 5.0);
    auto wrong = compare(s, [](double, double) { return 1.0; }, 20, 5);
    EXPECT_GT(wrong.sup_discrepancy, 10.0);
}

TEST(Compare, CountsSamplesAwayFromSupport) {
    std::vector<double> pred(16, 0.0), emp(16, 0.0);
    pred[0] = 1.0;
    emp[0] = 0.5;
    emp[1] = 0.25;   // touches the support
    emp[15] = 0.25;  // far away
    auto r = compare_masses(emp, pred, 4, 4);
    EXPECT_EQ(r.leakage_samples, 1u);
    EXPECT_EQ(r.outside_support, 1u);
    EXPECT_EQ(r.zero_cell_samples, 2u);
}
