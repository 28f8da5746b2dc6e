/**
 * @file grid.hpp
 * Triangular lattice regions: the grid T_N and the hexagon R_{d,n}.
 *
 * A vertex is stored as (r, s), standing for r + s·e^{iπ/3}. Edges are
 * oriented: an edge of type t runs from its origin o to o + kDir[t], where
 * kDir = {e^{iπ}, e^{-iπ/3}, e^{iπ/3}} in lattice coordinates. For T_N the
 * three barycentric coordinates of (r, s) are (N-r-s, r, s); an edge carries
 * the coordinates of its origin and its height is the coordinate of its type.
 *
 * Direct faces are (i,j),(i+1,j),(i,j+1); reversed faces are
 * (i,j),(i,j+1),(i-1,j+1). Following the edge orientation goes clockwise
 * around direct faces and counterclockwise around reversed ones, and in both
 * cases the clockwise cyclic order of edge types is (0, 2, 1).
 */
#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhive {

struct Vertex {
    int r = 0, s = 0;
    friend bool operator==(const Vertex&, const Vertex&) = default;
    friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

inline constexpr std::array<Vertex, 3> kDir{{{-1, 0}, {1, -1}, {0, 1}}};

inline constexpr Vertex operator+(Vertex a, Vertex b) { return {a.r + b.r, a.s + b.s}; }
inline constexpr Vertex operator-(Vertex a, Vertex b) { return {a.r - b.r, a.s - b.s}; }

inline constexpr int mod3(int x) { return ((x % 3) + 3) % 3; }

/// Clockwise cyclic order of edge types around any face.
inline constexpr std::array<int, 3> kClockwiseTypes{0, 2, 1};

struct TriCoord {
    int x0 = 0, x1 = 0, x2 = 0;
    int operator[](int i) const { return i == 0 ? x0 : (i == 1 ? x1 : x2); }
    friend bool operator==(const TriCoord&, const TriCoord&) = default;
};

struct Edge {
    int type = 0;
    Vertex origin;
    Vertex end() const { return origin + kDir[type]; }
};

struct Face {
    bool direct = true;
    int i = 0, j = 0;
    std::array<int, 3> edge{};  ///< edge id indexed by edge type
    std::array<Vertex, 3> vertices() const {
        if (direct) return {Vertex{i, j}, Vertex{i + 1, j}, Vertex{i, j + 1}};
        return {Vertex{i, j}, Vertex{i, j + 1}, Vertex{i - 1, j + 1}};
    }
};

enum class LozengeShape { Horizontal = 0, Falling = 1, Rising = 2 };

/**
 * Two faces glued along a middle edge. v4 is the origin of the middle edge,
 * v2 its end, v1 the far vertex of the direct face, v3 that of the reversed
 * face; (v1, v2, v3, v4) is then a closed path of unit steps. The shape is the
 * type of the middle edge.
 */
struct Lozenge {
    int middle = -1;
    int direct_face = -1, reversed_face = -1;
    std::array<Vertex, 4> v{};  ///< v[0..3] = v1..v4
    LozengeShape shape = LozengeShape::Horizontal;
    /// For each of the two side types u != middle type: {edge in direct face, edge in reversed face}.
    std::array<int, 2> side_type{};
    std::array<std::array<int, 2>, 2> side_pair{};
    std::array<int, 4> boundary_edges() const {
        return {side_pair[0][0], side_pair[0][1], side_pair[1][0], side_pair[1][1]};
    }
};

/// A finite region of the triangular lattice, given by a vertex predicate on a bounding box.
class LatticeRegion {
public:
    LatticeRegion(int box, std::function<bool(Vertex)> contains) : box_(box), contains_(std::move(contains)) {
        vid_.assign((box_ + 1) * (box_ + 1), -1);
        for (int s = 0; s <= box_; ++s)
            for (int r = 0; r <= box_; ++r)
                if (contains_({r, s})) {
                    vid_[r + s * (box_ + 1)] = static_cast<int>(vertices_.size());
                    vertices_.push_back({r, s});
                }
        eid_.assign(3 * vid_.size(), -1);
        for (const auto& v : vertices_)
            for (int t = 0; t < 3; ++t)
                if (has(v + kDir[t])) {
                    eid_[3 * index_raw(v) + t] = static_cast<int>(edges_.size());
                    edges_.push_back({t, v});
                }
        edge_face_.assign(edges_.size(), {-1, -1});
        for (int j = 0; j <= box_; ++j)
            for (int i = 0; i <= box_; ++i) {
                add_face(false, i, j);
                add_face(true, i, j);
            }
        for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
            auto [df, rf] = edge_face_[e];
            if (df < 0 || rf < 0) continue;
            Lozenge lz;
            lz.middle = e;
            lz.direct_face = df;
            lz.reversed_face = rf;
            const auto& ed = edges_[e];
            lz.shape = static_cast<LozengeShape>(ed.type);
            lz.v[3] = ed.origin;
            lz.v[1] = ed.end();
            lz.v[0] = ed.origin - kDir[mod3(ed.type + 1)];
            lz.v[2] = ed.origin - kDir[mod3(ed.type + 2)];
            for (int k = 0; k < 2; ++k) {
                int u = mod3(ed.type + 1 + k);
                lz.side_type[k] = u;
                lz.side_pair[k] = {faces_[df].edge[u], faces_[rf].edge[u]};
            }
            lozenges_.push_back(lz);
        }
    }

    bool has(Vertex v) const { return v.r >= 0 && v.s >= 0 && v.r <= box_ && v.s <= box_ && contains_(v); }
    int vertex_id(Vertex v) const { return has(v) ? vid_[v.r + v.s * (box_ + 1)] : -1; }
    int edge_id(Vertex origin, int type) const { return has(origin) ? eid_[3 * index_raw(origin) + type] : -1; }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Face>& faces() const { return faces_; }
    const std::vector<Lozenge>& lozenges() const { return lozenges_; }
    /// {direct face, reversed face} adjacent to an edge, -1 when absent.
    std::array<int, 2> faces_of_edge(int e) const { return edge_face_[e]; }

    bool is_interior(Vertex v) const {
        if (!has(v)) return false;
        for (int t = 0; t < 3; ++t)
            if (!has(v + kDir[t]) || !has(v - kDir[t])) return false;
        return true;
    }

private:
    int index_raw(Vertex v) const { return v.r + v.s * (box_ + 1); }

    void add_face(bool direct, int i, int j) {
        Face f{direct, i, j, {}};
        for (auto v : f.vertices())
            if (!has(v)) return;
        if (direct) {
            f.edge = {edge_id({i + 1, j}, 0), edge_id({i, j + 1}, 1), edge_id({i, j}, 2)};
        } else {
            f.edge = {edge_id({i, j + 1}, 0), edge_id({i - 1, j + 1}, 1), edge_id({i, j}, 2)};
        }
        int id = static_cast<int>(faces_.size());
        faces_.push_back(f);
        for (int e : f.edge) edge_face_[e][direct ? 0 : 1] = id;
    }

    int box_;
    std::function<bool(Vertex)> contains_;
    std::vector<int> vid_, eid_;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<Face> faces_;
    std::vector<Lozenge> lozenges_;
    std::vector<std::array<int, 2>> edge_face_;
};

/// The triangular grid T_N.
class TriGrid : public LatticeRegion {
public:
    explicit TriGrid(int N)
        : LatticeRegion(N, [N](Vertex v) { return v.r + v.s <= N; }), N_(N) {
        if (N < 1) throw std::invalid_argument("grid size must be at least 1");
    }
    int size() const { return N_; }

    TriCoord coords(Vertex v) const { return {N_ - v.r - v.s, v.r, v.s}; }
    TriCoord coords(const Edge& e) const { return coords(e.origin); }
    int height(const Edge& e) const { return coords(e)[e.type]; }
    int height(int e) const { return height(edges()[e]); }

    /// Boundary side ℓ, ordered by height 0..N-1.
    std::vector<int> boundary_side(int side) const {
        std::vector<int> out(N_);
        for (int h = 0; h < N_; ++h) {
            Vertex o = side == 0 ? Vertex{N_ - h, 0} : side == 1 ? Vertex{h, N_ - h} : Vertex{0, h};
            out[h] = edge_id(o, side);
        }
        return out;
    }

    bool triangle_sum_holds(const Face& f) const {
        int sum = 0;
        for (int t = 0; t < 3; ++t) sum += height(f.edge[t]);
        return sum == (f.direct ? N_ - 1 : N_ - 2);
    }

private:
    int N_;
};

/// The hexagon R_{d,n} = {(v1,v2) in [0,n]^2 : d <= v1+v2 <= n+d}, with v1 = r, v2 = s.
class Hexagon : public LatticeRegion {
public:
    Hexagon(int n, int d)
        : LatticeRegion(n, [n, d](Vertex v) { return v.r + v.s >= d && v.r + v.s <= n + d; }), n_(n), d_(d) {
        if (n < 1 || d < 0 || d > n) throw std::invalid_argument("hexagon needs 0 <= d <= n");
    }
    int n() const { return n_; }
    int d() const { return d_; }

    Vertex a_vertex(int i) const { return {std::max(d_ - i, 0), std::min(n_ + d_ - i, n_)}; }
    Vertex b_vertex(int i) const { return {std::min(n_ + d_ - i, n_), i}; }
    Vertex c_vertex(int i) const { return {n_ - i, std::max(i + d_ - n_, 0)}; }

    bool on_boundary(Vertex v) const { return has(v) && !is_interior(v); }

    /// Interior vertices in row-major order.
    std::vector<Vertex> interior_vertices() const {
        std::vector<Vertex> out;
        for (auto v : vertices())
            if (is_interior(v)) out.push_back(v);
        return out;
    }

    /// Boundary vertices in the order A_0..A_n, B_1..B_{n-1}, C_0..C_{n-1}, no repeats.
    std::vector<Vertex> boundary_cycle() const {
        std::vector<Vertex> out;
        for (int i = 0; i <= n_; ++i) out.push_back(a_vertex(i));
        for (int i = n_ - 1; i >= 1; --i) out.push_back(b_vertex(i));
        for (int i = 0; i < n_; ++i) out.push_back(c_vertex(i));
        return out;
    }

private:
    int n_, d_;
};

template <class T>
struct BoundaryVectors {
    std::vector<T> A, B, C;
};

/// Reads f along the three boundary paths; f must be defined on each boundary vertex.
template <class T, class F>
BoundaryVectors<T> boundary_vectors(const Hexagon& hex, F&& f) {
    BoundaryVectors<T> out;
    for (int i = 0; i <= hex.n(); ++i) {
        out.A.push_back(f(hex.a_vertex(i)));
        out.B.push_back(f(hex.b_vertex(i)));
        out.C.push_back(f(hex.c_vertex(i)));
    }
    return out;
}

}  // namespace qhive
