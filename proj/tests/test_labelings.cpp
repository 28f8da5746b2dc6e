#include "qhive/labelings.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <set>

using namespace qhive;

namespace {

/// Exhaustive filter over every Z3 assignment of the interior, written from the definition alone.
std::set<std::string> naive_regular(int n, int d) {
    Hexagon hex(n, d);
    const int V = static_cast<int>(hex.vertices().size());
    std::vector<int> g(V, -1), free;
    for (int v = 0; v < V; ++v) {
        Vertex x = hex.vertices()[v];
        int label = -1;
        for (int i = 0; i <= n; ++i) {
            if (hex.a_vertex(i) == x) label = ((n + i) % 3 + 3) % 3;
            if (hex.b_vertex(i) == x) label = i % 3;
            if (hex.c_vertex(i) == x) label = ((-i) % 3 + 3) % 3;
        }
        if (label >= 0) g[v] = label;
        else free.push_back(v);
    }
    std::set<std::string> out;
    long long total = 1;
    for (std::size_t k = 0; k < free.size(); ++k) total *= 3;
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (int v : free) {
            g[v] = static_cast<int>(c % 3);
            c /= 3;
        }
        bool ok = true;
        for (const auto& lz : hex.lozenges()) {
            int g1 = g[hex.vertex_id(lz.v[0])], g2 = g[hex.vertex_id(lz.v[1])], g3 = g[hex.vertex_id(lz.v[2])],
                g4 = g[hex.vertex_id(lz.v[3])];
            if (g2 == g4) {
                std::set<int> s{g1, g3}, want{(g2 + 1) % 3, (g2 + 2) % 3};
                if (s != want) ok = false;
            }
        }
        if (!ok) continue;
        std::string key;
        for (int x : g) key.push_back(static_cast<char>('0' + x));
        out.insert(key);
    }
    return out;
}

}  // namespace

class LabelingEnumeration : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(LabelingEnumeration, AgreesWithExhaustiveFilter) {
    auto [n, d] = GetParam();
    auto got = enumerate_regular_labelings(n, d);
    std::set<std::string> keys;
    for (const auto& g : got) keys.insert(g.key());
    EXPECT_EQ(keys.size(), got.size()) << "duplicates";
    EXPECT_EQ(keys, naive_regular(n, d));
}

INSTANTIATE_TEST_SUITE_P(Small, LabelingEnumeration,
                         ::testing::Values(std::pair{3, 0}, std::pair{3, 1},
                                           std::pair{3, 2}, std::pair{3, 3}, std::pair{4, 1}, std::pair{4, 2}));

TEST(Labelings, EnumerationIsThreadIndependent) {
    auto a = enumerate_regular_labelings(4, 2, 1), b = enumerate_regular_labelings(4, 2, 3);
    EXPECT_EQ(a, b);
}

TEST(Labelings, DegreeZeroHasOneLabelingAndNoRigidLozenge) {
    for (int n = 3; n <= 5; ++n) {
        auto gs = enumerate_regular_labelings(n, 0);
        ASSERT_EQ(gs.size(), 1u);
        Hexagon hex(n, 0);
        EXPECT_TRUE(rigid_lozenges(hex, gs[0]).empty());
        EXPECT_EQ(support(hex, gs[0]).size(), hex.vertices().size());
    }
}

TEST(Labelings, WitnessLabelingAndItsRigidLozenges) {
    Hexagon hex(3, 1);
    auto g = labeling_from_key(3, 1, "120000121210");
    auto gs = enumerate_regular_labelings(3, 1);
    EXPECT_NE(std::find(gs.begin(), gs.end(), g), gs.end());
    auto rl = rigid_lozenges(hex, g);
    ASSERT_EQ(rl.size(), 2u);
    std::set<std::pair<int, int>> v4;
    for (int li : rl) {
        Vertex v = hex.lozenges()[li].v[3];
        v4.insert({v.r, v.s});
        EXPECT_TRUE(hex.is_interior(v));
    }
    // the free vertex (1,2) is the only interior vertex left in the support
    EXPECT_EQ(v4, (std::set<std::pair<int, int>>{{1, 1}, {2, 1}}));
    EXPECT_EQ(support(hex, g).size(), 10u);
}

TEST(Labelings, SupportSizeAndRoundTrip) {
    for (auto [n, d] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {4, 1}, {4, 2}, {5, 1}}) {
        Hexagon hex(n, d);
        for (const auto& g : enumerate_regular_labelings(n, d)) {
            EXPECT_EQ(static_cast<int>(support(hex, g).size()), (n - 1) * (n - 2) / 2 + 3 * n);
            for (int li : rigid_lozenges(hex, g)) EXPECT_FALSE(hex.on_boundary(hex.lozenges()[li].v[3]));
            auto C = color_map_of(hex, g);
            EXPECT_TRUE(face_rule_holds(hex, C));
            EXPECT_EQ(labeling_of(hex, C), g);
            int m = 0, three = 0;
            for (Color c : C) {
                m += c == Color::M;
                three += c == Color::Three;
            }
            EXPECT_EQ(m, d * (n - d));
            EXPECT_EQ(three, d * (n - d));
            // rigid lozenges are exactly the lozenges with an m middle edge
            for (const auto& lz : hex.lozenges()) EXPECT_EQ(is_rigid(lz, hex, g.values), C[lz.middle] == Color::M);
        }
    }
}

TEST(Labelings, LabelingOfRejectsBrokenTables) {
    Hexagon hex(3, 1);
    auto C = color_map_of(hex, labeling_from_key(3, 1, "120000121210"));
    auto bad = C;
    bad[0] = bad[0] == Color::One ? Color::Zero : Color::One;
    EXPECT_THROW(labeling_of(hex, bad), std::invalid_argument);
    EXPECT_THROW(labeling_of(hex, std::vector<Color>(3, Color::One)), std::invalid_argument);
    EXPECT_THROW(labeling_from_key(3, 1, "000000000000"), std::invalid_argument);
}

TEST(Labelings, CacheFileRoundTripAndHeaderCheck) {
    auto dir = std::filesystem::temp_directory_path() / "qhive_test_cache";
    std::filesystem::create_directories(dir);
    auto path = dir / "labelings_4_1.txt";
    auto gs = enumerate_regular_labelings(4, 1);
    save_labelings(path, 4, 1, gs);
    auto back = load_labelings(path, 4, 1);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, gs);
    EXPECT_FALSE(load_labelings(path, 4, 2).has_value());
    std::filesystem::remove_all(dir);
}
