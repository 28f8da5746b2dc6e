#include "qhive/grid.hpp"
#include "qhive/polytope.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace qhive;

TEST(TriGrid, CountsMatchBruteForce) {
    for (int N = 1; N <= 9; ++N) {
        TriGrid T(N);
        EXPECT_EQ(T.vertices().size(), static_cast<std::size_t>((N + 1) * (N + 2) / 2));
        EXPECT_EQ(T.edges().size(), static_cast<std::size_t>(3 * N * (N + 1) / 2));
        EXPECT_EQ(T.faces().size(), static_cast<std::size_t>(N * N));
    }
}

TEST(TriGrid, TriangleSumOnEveryFace) {
    for (int N = 1; N <= 12; ++N) {
        TriGrid T(N);
        for (const auto& f : T.faces()) EXPECT_TRUE(T.triangle_sum_holds(f)) << "N=" << N;
    }
}

TEST(TriGrid, FaceEdgesAreTheSidesOfTheFace) {
    TriGrid T(5);
    for (const auto& f : T.faces()) {
        auto vs = f.vertices();
        std::set<std::pair<int, int>> corners;
        for (auto v : vs) corners.insert({v.r, v.s});
        for (int t = 0; t < 3; ++t) {
            const auto& e = T.edges()[f.edge[t]];
            EXPECT_EQ(e.type, t);
            EXPECT_TRUE(corners.count({e.origin.r, e.origin.s}));
            EXPECT_TRUE(corners.count({e.end().r, e.end().s}));
        }
    }
}

TEST(TriGrid, BoundarySidesAreOrderedByHeight) {
    TriGrid T(6);
    for (int side = 0; side < 3; ++side) {
        auto es = T.boundary_side(side);
        for (int h = 0; h < 6; ++h) {
            EXPECT_EQ(T.edges()[es[h]].type, side);
            EXPECT_EQ(T.height(es[h]), h);
        }
    }
}

TEST(Hexagon, VertexSetIsTheDefiningInequality) {
    for (int n = 1; n <= 5; ++n)
        for (int d = 0; d <= n; ++d) {
            Hexagon hex(n, d);
            std::size_t brute = 0;
            for (int a = 0; a <= n; ++a)
                for (int b = 0; b <= n; ++b) brute += (a + b >= d && a + b <= n + d);
            EXPECT_EQ(hex.vertices().size(), brute) << n << "," << d;
        }
    EXPECT_EQ(Hexagon(3, 1).vertices().size(), 12u);
    EXPECT_EQ(Hexagon(4, 1).vertices().size(), 18u);
}

TEST(Hexagon, LozengesListedOnceWithConsistentShape) {
    Hexagon hex(4, 2);
    std::set<int> middles;
    for (const auto& lz : hex.lozenges()) {
        EXPECT_TRUE(middles.insert(lz.middle).second);
        EXPECT_EQ(static_cast<int>(lz.shape), hex.edges()[lz.middle].type);
        for (auto v : lz.v) EXPECT_TRUE(hex.has(v));
        // closed path of unit steps
        for (int k = 0; k < 4; ++k) {
            Vertex a = lz.v[k], b = lz.v[(k + 1) % 4];
            Vertex diff = b - a;
            bool unit = false;
            for (auto dir : kDir) unit = unit || (diff.r == dir.r && diff.s == dir.s) || (diff.r == -dir.r && diff.s == -dir.s);
            EXPECT_TRUE(unit);
        }
    }
}

TEST(Hexagon, CornerIdentifications) {
    for (int n = 2; n <= 5; ++n)
        for (int d = 0; d <= n; ++d) {
            Hexagon hex(n, d);
            EXPECT_EQ(hex.c_vertex(0), hex.b_vertex(0));
            EXPECT_EQ(hex.b_vertex(n), hex.a_vertex(0));
            EXPECT_EQ(hex.a_vertex(n), hex.c_vertex(n));
            for (int i = 0; i <= n; ++i) {
                EXPECT_TRUE(hex.on_boundary(hex.a_vertex(i)));
                EXPECT_TRUE(hex.on_boundary(hex.b_vertex(i)));
                EXPECT_TRUE(hex.on_boundary(hex.c_vertex(i)));
            }
        }
}

TEST(Hexagon, WitnessBoundaryVectors) {
    Hexagon hex(3, 1);
    auto a = parse_rational_list("13/23,6/23,2/23"), b = parse_rational_list("18/23,10/23,5/23"),
         c = parse_rational_list("20/23,9/23,2/23");
    auto bv = boundary_values(hex, a, b, c);
    auto vecs = boundary_vectors<Rational>(hex, [&](Vertex v) { return *bv[hex.vertex_id(v)]; });
    EXPECT_EQ(vecs.B, parse_rational_list("1,18/23,28/23,33/23"));
    EXPECT_EQ(vecs.C[0], Rational(1));
    EXPECT_EQ(vecs.C, parse_rational_list("1,43/23,52/23,54/23"));
}
