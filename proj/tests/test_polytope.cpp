#include "qhive/crosscheck.hpp"
#include "qhive/polytope.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qhive;

namespace {

HPolytope box_polytope(int D, const Rational& side) {
    HPolytope P;
    P.D = D;
    for (int j = 0; j < D; ++j) {
        RatVec up(D, 0), down(D, 0);
        up[j] = 1;
        down[j] = -1;
        P.A.push_back(up);
        P.b.push_back(side);
        P.A.push_back(down);
        P.b.push_back(0);
    }
    return P;
}

RatVec random_values(std::size_t count, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-40, 40), den(1, 12);
    RatVec f;
    for (std::size_t i = 0; i < count; ++i) f.push_back(Rational(num(rng), den(rng)));
    return f;
}

}  // namespace

TEST(Witness, MembershipAndChart) {
    auto rep = witness_check();
    EXPECT_TRUE(rep.member);
    EXPECT_EQ(rep.free_dimension, 1);
    EXPECT_EQ(rep.free_vertex.r, 1);
    EXPECT_EQ(rep.free_vertex.s, 2);
    EXPECT_EQ(rep.free_value, Rational(44, 23));
    EXPECT_EQ(rep.reproduced, 12);
}

TEST(Witness, PerturbedFunctionIsRejected) {
    WitnessData w;
    Hexagon hex(w.n, w.d);
    auto g = labeling_from_key(w.n, w.d, w.labeling);
    for (std::size_t v = 0; v < w.values.size(); ++v) {
        auto f = w.values;
        f[v] += Rational(1, 5);
        EXPECT_FALSE(is_member(hex, g, f, w.alpha, w.beta, w.gamma)) << "vertex " << v;
    }
}

TEST(EdgeLabels, EveryFaceSumsToOne) {
    std::mt19937_64 rng(7);
    for (auto [n, d] : {std::pair{3, 0}, std::pair{3, 1}, std::pair{3, 2}, std::pair{4, 1}}) {
        Hexagon hex(n, d);
        for (int trial = 0; trial < 20; ++trial) {
            auto f = random_values(hex.vertices().size(), rng);
            for (const auto& face : hex.faces()) {
                Rational s = 0;
                for (int t = 0; t < 3; ++t) s += edge_label(hex, hex.edges()[face.edge[t]], f);
                EXPECT_EQ(s, 1);
            }
        }
    }
}

TEST(EdgeLabels, ChartRowsMatchDirectEvaluation) {
    std::mt19937_64 rng(11);
    for (auto [n, d] : {std::pair{3, 1}, std::pair{4, 1}}) {
        Hexagon hex(n, d);
        const auto& gs = cached_regular_labelings(n, d);
        for (std::size_t gi = 0; gi < gs.size(); gi += 3) {
            auto geo = labeling_geometry(hex, gs[gi]);
            auto fb = random_values(geo.boundary_vertices.size(), rng);
            auto z = random_values(geo.D, rng);
            auto f = chart_evaluate(geo, fb, z);
            ASSERT_EQ(geo.rz.size() - geo.lozenge_rows, hex.edges().size());
            for (std::size_t e = 0; e < hex.edges().size(); ++e) {
                auto r = geo.lozenge_rows + e;
                EXPECT_EQ(dot(geo.rz[r], z) + dot(geo.rb[r], fb) + geo.rc[r], edge_label(hex, hex.edges()[e], f));
            }
        }
    }
}

TEST(Volume, Boxes) {
    for (int D = 1; D <= 4; ++D) {
        auto v = volume_exact(box_polytope(D, Rational(2, 3)));
        EXPECT_EQ(v.status, BodyStatus::FullDimensional);
        Rational want = 1;
        for (int j = 0; j < D; ++j) want *= Rational(2, 3);
        EXPECT_EQ(v.exact, want);
    }
}

TEST(Volume, SimplexAndCutCube) {
    for (int D = 1; D <= 4; ++D) {
        auto P = box_polytope(D, 1);
        P.A.push_back(RatVec(D, 1));
        P.b.push_back(1);
        EXPECT_EQ(volume_exact(P).exact, 1 / factorial_q(D));
    }
    auto P = box_polytope(3, 1);
    P.A.push_back(RatVec(3, 1));
    P.b.push_back(Rational(3, 2));
    EXPECT_EQ(volume_exact(P).exact, Rational(1, 2));
}

TEST(Volume, DegenerateBodies) {
    auto flat = box_polytope(2, 1);
    flat.A.push_back({1, 0});
    flat.b.push_back(0);
    auto v = volume_exact(flat);
    EXPECT_EQ(v.status, BodyStatus::LowerDimensional);
    EXPECT_EQ(v.exact, 0);
    auto empty = box_polytope(2, 1);
    empty.A.push_back({1, 1});
    empty.b.push_back(-1);
    EXPECT_EQ(volume_exact(empty).status, BodyStatus::Empty);
}

TEST(Volume, MonteCarloAgreesWithExact) {
    auto P = box_polytope(3, 1);
    P.A.push_back({1, 2, 1});
    P.b.push_back(Rational(3, 2));
    auto ex = volume_exact(P);
    auto mc = volume_mc(P, 200000, 3);
    EXPECT_NEAR(mc.value, to_double(ex.exact), 5 * mc.sigma);
    auto again = volume_mc(P, 200000, 3);
    EXPECT_EQ(mc.value, again.value);
}

TEST(Volume, ChartOrderDoesNotMatter) {
    RatVec a = parse_rational_list("7/10,2/5,1/10"), b = parse_rational_list("3/4,1/2,1/8"),
           c = parse_rational_list("37/40,11/20,1/10");
    for (auto [n, d] : {std::pair{3, 1}, std::pair{3, 2}}) {
        if (!quantum_degree(a, b, c) || *quantum_degree(a, b, c) != d) continue;
        Hexagon hex(n, d);
        auto bv = boundary_values(hex, a, b, c);
        for (const auto& g : cached_regular_labelings(n, d)) {
            auto geo = labeling_geometry(hex, g);
            auto order = geo.free_vertices;
            std::reverse(order.begin(), order.end());
            auto rev = labeling_geometry(hex, g, order);
            auto v1 = volume_exact(build_polytope(geo, boundary_vector_for(geo, bv)));
            auto v2 = volume_exact(build_polytope(rev, boundary_vector_for(rev, bv)));
            EXPECT_EQ(v1.exact, v2.exact) << g.key();
        }
    }
}

TEST(Volume, WitnessTripleLabelingVolumes) {
    WitnessData w;
    Hexagon hex(w.n, w.d);
    Rational total = 0;
    for (const auto& g : cached_regular_labelings(w.n, w.d)) {
        auto P = build_polytope(hex, g, w.alpha, w.beta, w.gamma);
        total += volume_exact(P).exact;
        if (g.key() == w.labeling) EXPECT_TRUE(volume_exact(P).exact > 0);
    }
    EXPECT_EQ(total, Rational(2, 23));
}
