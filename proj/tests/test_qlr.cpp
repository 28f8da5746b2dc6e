#include "oracles.hpp"
#include "qhive/hive_count.hpp"
#include "qhive/qlr_det.hpp"

#include <gtest/gtest.h>

using namespace qhive;

namespace {

long long oracle_value(const std::map<std::pair<std::vector<int>, int>, long long>& prod, const Partition& nu, int d) {
    auto it = prod.find({nu.parts, d});
    return it == prod.end() ? 0 : it->second;
}

}  // namespace

TEST(QuantumOracle, KnownProductsInGr24) {
    // σ_1 σ_{2,1} = σ_{2,2} + q in QH*(Gr(2,4))
    auto p = oracle::quantum_product(Partition{{1, 0}}, Partition{{2, 1}}, 4);
    EXPECT_EQ(oracle_value(p, Partition{{2, 2}}, 0), 1);
    EXPECT_EQ(oracle_value(p, Partition{{0, 0}}, 1), 1);
    EXPECT_EQ(p.size(), 2u);
    // σ_{2,2}^2 = q^2
    auto s = oracle::quantum_product(Partition{{2, 2}}, Partition{{2, 2}}, 4);
    EXPECT_EQ(oracle_value(s, Partition{{0, 0}}, 2), 1);
}

class QlrAgainstOracle : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(QlrAgainstOracle, DeterminantAndHivesMatchRimHookProduct) {
    auto [n, N] = GetParam();
    auto parts = partitions_in_frame(n, N);
    int checked = 0;
    for (const auto& l : parts)
        for (const auto& m : parts) {
            auto prod = oracle::quantum_product(l, m, N);
            for (auto& [key, c] : prod) EXPECT_GE(c, 0);
            for (const auto& v : parts) {
                int diff = l.weight() + m.weight() - v.weight();
                if (diff < 0 || diff % N) continue;
                int d = diff / N;
                long long want = oracle_value(prod, v, d);
                auto q = qlr_coefficient(l, m, v, d, N);
                EXPECT_EQ(q.value, want);
                EXPECT_LT(q.residual, 1e-6);
                if (d <= n && N <= 6) EXPECT_EQ(static_cast<long long>(count_dual_hives(l, m, v, d, N)), want);
                ++checked;
            }
        }
    EXPECT_GT(checked, 0);
}

INSTANTIATE_TEST_SUITE_P(Small, QlrAgainstOracle,
                         ::testing::Values(std::pair{2, 4}, std::pair{2, 5}, std::pair{2, 6}, std::pair{3, 5},
                                           std::pair{3, 6}, std::pair{3, 7}));

TEST(QlrDet, ThreadCountDoesNotChangeTheBits) {
    Partition l{{3, 1, 0}}, m{{2, 2, 1}}, v{{4, 3, 2}};
    auto a = qlr_raw_sum(l, m, v, 8, 1), b = qlr_raw_sum(l, m, v, 8, 3);
    EXPECT_EQ(a, b);
}

TEST(QlrDet, OrbitSizesPartitionTheTuples) {
    // orbit sizes of the minimal representatives add up to C(N, n)
    for (int N = 4; N <= 8; ++N) {
        const int n = 3;
        long long total = 0;
        std::set<IndexTuple> all;
        auto rec = [&](auto&& self, IndexTuple& cur, int pos, int upper) -> void {
            if (pos == n) {
                all.insert(cur);
                return;
            }
            for (int x = upper - 1; x >= n - 1 - pos; --x) {
                cur[pos] = x;
                self(self, cur, pos + 1, x);
            }
        };
        IndexTuple cur(n);
        rec(rec, cur, 0, N);
        for (const auto& I : all) {
            auto info = orbit_info(I, N);
            if (info.is_min) total += info.orbit_size;
            EXPECT_EQ(N % info.orbit_size, 0);
        }
        EXPECT_EQ(total, static_cast<long long>(all.size()));
    }
}

TEST(QlrDet, RejectsBadInput) {
    EXPECT_THROW(qlr_coefficient(Partition{{1, 0}}, Partition{{1, 0}}, Partition{{1, 0}}, 0, 4), std::invalid_argument);
    EXPECT_THROW(qlr_coefficient(Partition{{5, 0}}, Partition{{1, 0}}, Partition{{6, 0}}, 0, 4), std::invalid_argument);
}

TEST(JVolume, TailBoundShrinksAndValueIsReal) {
    std::vector<double> a{13 / 23.0, 6 / 23.0, 2 / 23.0}, b{18 / 23.0, 10 / 23.0, 5 / 23.0},
        c{20 / 23.0, 9 / 23.0, 2 / 23.0};
    auto j1 = j_volume(a, b, c, 100), j2 = j_volume(a, b, c, 400);
    EXPECT_LT(j2.tail_bound, j1.tail_bound);
    EXPECT_LT(std::abs(j2.imag), 1e-8);
    // J is the limit of c/N; the sum of volumes for this triple is 2/23
    EXPECT_NEAR(j2.value, 2.0 / 23, 1e-4);
    EXPECT_THROW(j_volume(a, b, {0.5, 0.5, 0.1}, 50), std::invalid_argument);
}
