#include "qhive/crosscheck.hpp"
#include "qhive/density.hpp"
#include "qhive/qlr_det.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace qhive;

namespace {

// Schur polynomial of λ (n parts) by summing x^T over semistandard tableaux
cplx schur_by_tableaux(const std::vector<int>& lambda, const std::vector<cplx>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<std::pair<int, int>> cells;
    for (int r = 0; r < static_cast<int>(lambda.size()); ++r)
        for (int c = 0; c < lambda[r]; ++c) cells.push_back({r, c});
    std::map<std::pair<int, int>, int> T;
    cplx total = 0.0;
    auto rec = [&](auto&& self, std::size_t k, cplx w) -> void {
        if (k == cells.size()) {
            total += w;
            return;
        }
        auto [r, c] = cells[k];
        int lo = 0;
        if (c > 0) lo = std::max(lo, T[{r, c - 1}]);
        if (r > 0) lo = std::max(lo, T[{r - 1, c}] + 1);
        for (int v = lo; v < n; ++v) {
            T[{r, c}] = v;
            self(self, k + 1, w * x[v]);
        }
    };
    rec(rec, 0, 1.0);
    return total;
}

}  // namespace

TEST(Characters, WeylFormulaMatchesTableaux) {
    std::vector<double> theta{0.71, 0.43, 0.12, 0.05};
    std::vector<cplx> x, one(4, 1.0);
    for (double t : theta) x.push_back(std::polar(1.0, 2 * std::numbers::pi * t));
    for (const auto& lam : std::vector<std::vector<int>>{{0, 0, 0}, {1, 0, 0}, {2, 1, 0}, {3, 3, 1}, {4, 2, 2}}) {
        auto ch = weyl_character(lam, theta);
        EXPECT_LT(std::abs(ch.value - schur_by_tableaux(lam, x)), 1e-9);
        EXPECT_EQ(ch.dim.convert_to<double>(), schur_by_tableaux(lam, one).real());
    }
}

TEST(Characters, Superfactorial) {
    EXPECT_EQ(superfactorial(0), 1);
    EXPECT_EQ(superfactorial(3), 12);
    EXPECT_EQ(superfactorial(5), 34560);
}

TEST(Density, VolumeSumMatchesJ) {
    RatVec a = parse_rational_list("13/23,6/23,2/23"), b = parse_rational_list("18/23,10/23,5/23");
    for (const char* g : {"19/23,11/23,1/23", "20/23,9/23,2/23"}) {
        RatVec c = parse_rational_list(g);
        auto vs = volume_sum(a, b, c);
        EXPECT_FALSE(vs.on_wall);
        auto j = j_volume(to_doubles(a), to_doubles(b), to_doubles(c), 300);
        EXPECT_NEAR(j.value, to_double(vs.volume_sum), 2e-3 * to_double(vs.volume_sum)) << g;
    }
}

// AB and BA are conjugate, so off the walls the volume sum is symmetric.
TEST(Density, SymmetricInAlphaAndBeta) {
    std::mt19937_64 rng(3);
    const int q = 29;
    std::uniform_int_distribution<int> U(0, q - 1);
    auto regular = [&] {
        std::set<int> s;
        while (s.size() < 3) s.insert(U(rng));
        RatVec r;
        for (auto it = s.rbegin(); it != s.rend(); ++it) r.push_back(Rational(*it, q));
        return r;
    };
    int checked = 0, nonzero = 0;
    for (int it = 0; it < 4000; ++it) {
        auto a = regular(), b = regular(), c = regular();
        c[2] = sum_of(a) + sum_of(b) - c[0] - c[1];
        while (c[2] >= 1) c[2] -= 1;
        if (c[2] < 0 || !strictly_decreasing(c)) continue;
        auto ab = volume_sum(a, b, c), ba = volume_sum(b, a, c);
        if (ab.on_wall || ba.on_wall) continue;
        EXPECT_EQ(ab.volume_sum, ba.volume_sum);
        ++checked;
        nonzero += ab.volume_sum > 0;
    }
    EXPECT_GT(checked, 200);
    EXPECT_GT(nonzero, 10);
}

TEST(Density, WallTriplesAreFlagged) {
    // the figure triple with α and β exchanged lies on a wall
    auto v = volume_sum(parse_rational_list("18/23,10/23,5/23"), parse_rational_list("13/23,6/23,2/23"),
                        parse_rational_list("20/23,9/23,2/23"));
    EXPECT_TRUE(v.on_wall);
}

TEST(Density, MainFormulaMatchesCharacterSeries) {
    const auto t = density_triples().front();
    auto c = density_check(t.alpha, t.beta, t.gamma, 60, 150, 1);
    EXPECT_LT(c.rel_series, kDensityRelTol);
    EXPECT_LT(std::abs(c.series_imag), kImagTol * std::max(1.0, std::abs(c.series)));
}

TEST(Density, ZeroOutsideTheChamber) {
    RatVec a = parse_rational_list("13/23,6/23,2/23"), b = parse_rational_list("18/23,10/23,5/23");
    EXPECT_EQ(density_at_slice_point(Rational(1, 4), Rational(1, 2), a, b), 0.0);
    EXPECT_EQ(density_at_slice_point(Rational(1, 2), Rational(1, 2), a, b), 0.0);
    auto g = complete_gamma({Rational(19, 23), Rational(11, 23)}, a, b);
    EXPECT_EQ(g.back(), Rational(1, 23));
}

TEST(Density, RejectsBadInput) {
    RatVec a = parse_rational_list("1/2,1/4,1/8"), b = parse_rational_list("1/2,1/4,1/8");
    EXPECT_THROW(density_main(parse_rational_list("1/2,1/2,1/8"), a, b), std::invalid_argument);
    EXPECT_THROW(volume_sum(a, b, parse_rational_list("1/2,1/4,1/5")), std::invalid_argument);
}

TEST(Moduli, ZeroWhenSumsAreNotIntegral) {
    auto m = moduli_volume(parse_rational_list("1/2,1/3,1/7"), parse_rational_list("1/2,1/3,1/7"),
                           parse_rational_list("1/2,1/3,1/7"));
    EXPECT_EQ(m.value, 0.0);
    EXPECT_EQ(m.d, -1);
}

TEST(Moduli, CenterFactorRatio) {
    RatVec a = parse_rational_list("2/3,1/3,0"), b = parse_rational_list("2/3,1/3,0"),
           c = parse_rational_list("2/3,1/4,1/12");
    auto m = moduli_volume(a, b, c);
    EXPECT_GE(m.d, 0);
    if (m.value > 0) EXPECT_NEAR(m.value_center_n / m.value, 3.0, 1e-12);
}
