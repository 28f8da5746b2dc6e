/**
 * @file polytope.hpp
 * The polytopes P^g_{α,β,γ}: functions on Supp(g) with prescribed boundary
 * values that are rhombus concave on every lozenge, with equality on rigid
 * ones. Coordinates are the values at interior support vertices.
 *
 * Each edge u -> u + kDir[t] also carries the limit-hive label
 * L = f(u) - f(v) for t = 1, 2 and L = 1 + f(u) - f(v) for t = 0, which must
 * be nonnegative. The three edges of a face form a cycle, so every face sum
 * is 1. Near the walls of the chamber these bounds cut the body further than
 * the lozenge rows do; Constraints::LozengesOnly drops them.
 */
#pragma once

#include "qhive/labelings.hpp"
#include "qhive/linalg_q.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhive {

inline void require_regular_q(const RatVec& th, const char* name) {
    for (std::size_t i = 0; i + 1 < th.size(); ++i)
        if (!(th[i] > th[i + 1])) throw std::invalid_argument(std::string(name) + " must be strictly decreasing");
    for (const auto& x : th)
        if (x < 0 || x >= 1) throw std::invalid_argument(std::string(name) + " must lie in [0,1)");
}

inline Rational sum_of(const RatVec& v) {
    Rational s = 0;
    for (const auto& x : v) s += x;
    return s;
}

/// Σα + Σβ - Σγ when it is a nonnegative integer.
inline std::optional<int> quantum_degree(const RatVec& alpha, const RatVec& beta, const RatVec& gamma) {
    Rational d = sum_of(alpha) + sum_of(beta) - sum_of(gamma);
    if (denominator_of(d) != 1 || d < 0) return std::nullopt;
    return static_cast<int>(numerator_of(d).convert_to<long>());
}

/**
 * Values on ∂R_{d,n}: f(A_i) = Σβ + Σ_{s<=i} α_s, f(B_i) = (d-i)^+ + Σ_{s<=i} β_s,
 * f(C_i) = d + Σ_{s<=i} γ_s. Indexed by hexagon vertex id; interior entries are empty.
 */
inline std::vector<std::optional<Rational>> boundary_values(const Hexagon& hex, const RatVec& alpha, const RatVec& beta,
                                                            const RatVec& gamma) {
    const int n = hex.n(), d = hex.d();
    if (static_cast<int>(alpha.size()) != n || static_cast<int>(beta.size()) != n ||
        static_cast<int>(gamma.size()) != n)
        throw std::invalid_argument("alpha, beta, gamma must have n entries");
    if (sum_of(alpha) + sum_of(beta) != sum_of(gamma) + d)
        throw std::invalid_argument("degree mismatch: sum(alpha)+sum(beta) != sum(gamma)+d");
    std::vector<std::optional<Rational>> f(hex.vertices().size());
    auto put = [&](Vertex v, const Rational& x) {
        auto& slot = f[hex.vertex_id(v)];
        if (slot && *slot != x) throw std::logic_error("boundary values disagree at a corner");
        slot = x;
    };
    Rational sa = 0, sb = 0, sc = 0, tb = sum_of(beta);
    for (int i = 0; i <= n; ++i) {
        if (i > 0) {
            sa += alpha[i - 1];
            sb += beta[i - 1];
            sc += gamma[i - 1];
        }
        put(hex.a_vertex(i), tb + sa);
        put(hex.b_vertex(i), Rational(std::max(d - i, 0)) + sb);
        put(hex.c_vertex(i), Rational(d) + sc);
    }
    return f;
}

/**
 * Linear structure of P^g for one labeling, independent of (α, β, γ).
 * Every vertex value is Σ_j zc[v][j] z_j + Σ_b bc[v][b] f(boundary_b).
 */
struct LabelingGeometry {
    RegularLabeling g;
    int D = 0;
    std::vector<int> free_vertices;      ///< chart coordinates, hexagon vertex ids
    std::vector<int> boundary_vertices;  ///< hexagon vertex ids
    std::vector<int> rigid, nonrigid;    ///< lozenge ids
    RatMat zc, bc;
    /// rz·z + rb·f_∂ + rc >= 0: one row per non-rigid lozenge, then one per edge.
    RatMat rz, rb;
    RatVec rc;
    int lozenge_rows = 0;
};

enum class Constraints { Full, LozengesOnly };

/// Builds the chart; free_order (interior support vertex ids) defaults to row-major.
inline LabelingGeometry labeling_geometry(const Hexagon& hex, const RegularLabeling& g,
                                          std::optional<std::vector<int>> free_order = std::nullopt) {
    LabelingGeometry geo;
    geo.g = g;
    const int V = static_cast<int>(hex.vertices().size());
    std::vector<char> removed(V, 0);
    for (int li = 0; li < static_cast<int>(hex.lozenges().size()); ++li) {
        if (is_rigid(hex.lozenges()[li], hex, g.values)) {
            geo.rigid.push_back(li);
            removed[hex.vertex_id(hex.lozenges()[li].v[3])] = 1;
        } else {
            geo.nonrigid.push_back(li);
        }
    }
    std::vector<int> interior_supp;
    for (int v = 0; v < V; ++v) {
        Vertex x = hex.vertices()[v];
        if (!hex.is_interior(x)) geo.boundary_vertices.push_back(v);
        else if (!removed[v]) interior_supp.push_back(v);
    }
    if (free_order) {
        auto a = *free_order, b = interior_supp;
        std::sort(a.begin(), a.end());
        if (a != b) throw std::invalid_argument("free order must permute the interior support vertices");
        geo.free_vertices = *free_order;
    } else {
        geo.free_vertices = interior_supp;
    }
    geo.D = static_cast<int>(geo.free_vertices.size());
    const int B = static_cast<int>(geo.boundary_vertices.size());
    const int W = geo.D + B;
    std::vector<int> basis(V, -1), unknown(V, -1);
    for (int j = 0; j < geo.D; ++j) basis[geo.free_vertices[j]] = j;
    for (int b = 0; b < B; ++b) basis[geo.boundary_vertices[b]] = geo.D + b;
    int U = 0;
    for (int v = 0; v < V; ++v)
        if (removed[v]) unknown[v] = U++;
    // f(v4) - f(v1) - f(v3) + f(v2) = 0 on every rigid lozenge, unknowns on the left.
    RatMat sys;
    for (int li : geo.rigid) {
        const auto& lz = hex.lozenges()[li];
        RatVec row(U + W, Rational(0));
        const int sgn[4] = {-1, 1, -1, 1};
        for (int k = 0; k < 4; ++k) {
            int v = hex.vertex_id(lz.v[k]);
            if (unknown[v] >= 0) row[unknown[v]] += sgn[k];
            else row[U + basis[v]] -= sgn[k];
        }
        sys.push_back(std::move(row));
    }
    auto piv = row_reduce(sys, U);
    if (static_cast<int>(piv.size()) != U) throw std::logic_error("rigid-lozenge elimination is singular");
    for (std::size_t r = U; r < sys.size(); ++r)
        for (int k = U; k < U + W; ++k)
            if (sys[r][k] != 0) throw std::logic_error("rigid-lozenge equalities are inconsistent");
    geo.zc.assign(V, RatVec(geo.D, Rational(0)));
    geo.bc.assign(V, RatVec(B, Rational(0)));
    for (int v = 0; v < V; ++v) {
        if (basis[v] >= 0) {
            if (basis[v] < geo.D) geo.zc[v][basis[v]] = 1;
            else geo.bc[v][basis[v] - geo.D] = 1;
        }
    }
    for (int r = 0; r < U; ++r) {
        int col = piv[r];
        int v = -1;
        for (int x = 0; x < V; ++x)
            if (unknown[x] == col) v = x;
        for (int j = 0; j < geo.D; ++j) geo.zc[v][j] = sys[r][U + j];
        for (int b = 0; b < B; ++b) geo.bc[v][b] = sys[r][U + geo.D + b];
    }
    for (int li : geo.nonrigid) {
        const auto& lz = hex.lozenges()[li];
        RatVec rz(geo.D, Rational(0)), rb(B, Rational(0));
        const int sgn[4] = {-1, 1, -1, 1};  // f(v2) + f(v4) - f(v1) - f(v3)
        for (int k = 0; k < 4; ++k) {
            int v = hex.vertex_id(lz.v[k]);
            for (int j = 0; j < geo.D; ++j) rz[j] += sgn[k] * geo.zc[v][j];
            for (int b = 0; b < B; ++b) rb[b] += sgn[k] * geo.bc[v][b];
        }
        geo.rz.push_back(std::move(rz));
        geo.rb.push_back(std::move(rb));
        geo.rc.push_back(0);
    }
    geo.lozenge_rows = static_cast<int>(geo.rz.size());
    for (const auto& e : hex.edges()) {
        const int u = hex.vertex_id(e.origin), v = hex.vertex_id(e.end());
        RatVec rz(geo.D), rb(B);
        for (int j = 0; j < geo.D; ++j) rz[j] = geo.zc[u][j] - geo.zc[v][j];
        for (int b = 0; b < B; ++b) rb[b] = geo.bc[u][b] - geo.bc[v][b];
        geo.rz.push_back(std::move(rz));
        geo.rb.push_back(std::move(rb));
        geo.rc.push_back(e.type == 0 ? 1 : 0);
    }
    return geo;
}

inline RatVec boundary_vector_for(const LabelingGeometry& geo, const std::vector<std::optional<Rational>>& bv) {
    RatVec out;
    for (int v : geo.boundary_vertices) {
        if (!bv[v]) throw std::invalid_argument("boundary value missing");
        out.push_back(*bv[v]);
    }
    return out;
}

/// Values at every hexagon vertex for chart point z.
inline RatVec chart_evaluate(const LabelingGeometry& geo, const RatVec& fb, const RatVec& z) {
    RatVec f(geo.zc.size());
    for (std::size_t v = 0; v < f.size(); ++v) f[v] = dot(geo.zc[v], z) + dot(geo.bc[v], fb);
    return f;
}

struct HPolytope {
    int D = 0;
    RatMat A;  ///< A z <= b
    RatVec b;
    std::string labeling;
};

inline HPolytope build_polytope(const LabelingGeometry& geo, const RatVec& fb, Constraints c = Constraints::Full) {
    HPolytope P;
    P.D = geo.D;
    P.labeling = geo.g.key();
    const std::size_t rows = c == Constraints::Full ? geo.rz.size() : static_cast<std::size_t>(geo.lozenge_rows);
    for (std::size_t r = 0; r < rows; ++r) {
        RatVec a(geo.D);
        for (int j = 0; j < geo.D; ++j) a[j] = -geo.rz[r][j];
        P.A.push_back(std::move(a));
        P.b.push_back(dot(geo.rb[r], fb) + geo.rc[r]);
    }
    return P;
}

inline HPolytope build_polytope(const Hexagon& hex, const RegularLabeling& g, const RatVec& alpha, const RatVec& beta,
                                const RatVec& gamma, Constraints c = Constraints::Full) {
    auto geo = labeling_geometry(hex, g);
    return build_polytope(geo, boundary_vector_for(geo, boundary_values(hex, alpha, beta, gamma)), c);
}

/// Limit-hive label of edge e under f; see the file comment.
inline Rational edge_label(const Hexagon& hex, const Edge& e, const RatVec& f) {
    Rational diff = f[hex.vertex_id(e.origin)] - f[hex.vertex_id(e.end())];
    return e.type == 0 ? 1 + diff : diff;
}

/**
 * True when a row without chart coefficients is exactly tight. Such rows make
 * the body appear or vanish as (α, β, γ) crosses a hyperplane, so on it the
 * closed polytopes of two labelings can both have full volume.
 */
inline bool has_tight_constant_row(const HPolytope& P) {
    for (std::size_t r = 0; r < P.A.size(); ++r)
        if (P.b[r] == 0 && std::all_of(P.A[r].begin(), P.A[r].end(), [](const Rational& x) { return x == 0; }))
            return true;
    return false;
}

inline bool contains(const HPolytope& P, const RatVec& z) {
    for (std::size_t r = 0; r < P.A.size(); ++r)
        if (dot(P.A[r], z) > P.b[r]) return false;
    return true;
}

/// Membership of a full vertex function f (indexed by hexagon vertex id) in the toric hive set of g.
inline bool is_member(const Hexagon& hex, const RegularLabeling& g, const RatVec& f, const RatVec& alpha,
                      const RatVec& beta, const RatVec& gamma, Constraints c = Constraints::Full) {
    if (f.size() != hex.vertices().size()) return false;
    auto bv = boundary_values(hex, alpha, beta, gamma);
    for (std::size_t v = 0; v < f.size(); ++v)
        if (bv[v] && *bv[v] != f[v]) return false;
    for (const auto& lz : hex.lozenges()) {
        Rational s = f[hex.vertex_id(lz.v[1])] + f[hex.vertex_id(lz.v[3])] - f[hex.vertex_id(lz.v[0])] -
                     f[hex.vertex_id(lz.v[2])];
        if (is_rigid(lz, hex, g.values) ? s != 0 : s < 0) return false;
    }
    if (c == Constraints::Full)
        for (const auto& e : hex.edges())
            if (edge_label(hex, e, f) < 0) return false;
    return true;
}

// ---- volumes -----------------------------------------------------------------

enum class BodyStatus { Empty, LowerDimensional, FullDimensional };

inline const char* status_name(BodyStatus s) {
    switch (s) {
        case BodyStatus::Empty: return "empty";
        case BodyStatus::LowerDimensional: return "lower-dimensional";
        case BodyStatus::FullDimensional: return "full-dimensional";
    }
    return "?";
}

struct VolumeResult {
    Rational exact = 0;
    double value = 0.0;
    double sigma = 0.0;       ///< Monte Carlo standard error
    double half_width = 0.0;  ///< 99% binomial half-width
    bool is_exact = true;
    BodyStatus status = BodyStatus::Empty;
    std::vector<RatVec> vertices;
};

namespace detail {

/// Drops trivial rows and duplicate directions; returns false when a trivial row is violated.
inline bool normalize_rows(const HPolytope& P, RatMat& A, RatVec& b) {
    std::map<RatVec, Rational> best;
    for (std::size_t r = 0; r < P.A.size(); ++r) {
        const auto& a = P.A[r];
        int lead = -1;
        for (int j = 0; j < P.D; ++j)
            if (a[j] != 0) { lead = j; break; }
        if (lead < 0) {
            if (P.b[r] < 0) return false;
            continue;
        }
        Rational s = abs(a[lead]);
        RatVec key(P.D);
        for (int j = 0; j < P.D; ++j) key[j] = a[j] / s;
        Rational rhs = P.b[r] / s;
        auto it = best.find(key);
        if (it == best.end() || rhs < it->second) best[key] = rhs;
    }
    for (auto& [a, rhs] : best) {
        A.push_back(a);
        b.push_back(rhs);
    }
    return true;
}

inline void combinations(int m, int k, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i;
    if (k > m) return;
    for (;;) {
        f(c);
        int i = k - 1;
        while (i >= 0 && c[i] == m - k + i) --i;
        if (i < 0) return;
        ++c[i];
        for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

}  // namespace detail

/**
 * Vertices of {A z <= b} by solving every D x D subsystem. A large box is
 * added first; a vertex on the box means the body is unbounded.
 */
inline std::vector<RatVec> enumerate_vertices(const RatMat& A, const RatVec& b, int D) {
    const Rational big(BigInt(1) << 40);
    RatMat AA = A;
    RatVec bb = b;
    for (int j = 0; j < D; ++j)
        for (int sgn : {1, -1}) {
            RatVec row(D, Rational(0));
            row[j] = sgn;
            AA.push_back(row);
            bb.push_back(big);
        }
    std::set<RatVec> found;
    const int m = static_cast<int>(AA.size());
    detail::combinations(m, D, [&](const std::vector<int>& idx) {
        RatMat S;
        RatVec rhs;
        for (int i : idx) {
            S.push_back(AA[i]);
            rhs.push_back(bb[i]);
        }
        auto x = solve_square(S, rhs);
        if (!x) return;
        for (int r = 0; r < m; ++r)
            if (dot(AA[r], *x) > bb[r]) return;
        found.insert(*x);
    });
    std::vector<RatVec> out(found.begin(), found.end());
    for (const auto& v : out)
        for (const auto& x : v)
            if (abs(x) == big) throw std::runtime_error("polytope is unbounded");
    return out;
}

namespace detail {

/// Triangulates the face spanned by `face` (vertex ids) of affine dimension k, coning from its first vertex.
inline void triangulate(const std::vector<RatVec>& V, const std::vector<std::vector<char>>& tight,
                        const std::vector<int>& face, int k, std::vector<int>& prefix,
                        std::vector<std::vector<int>>& out) {
    if (k == 0) {
        prefix.push_back(face[0]);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    int base = face[0];
    std::set<std::vector<int>> facets;
    const std::size_t rows = tight.empty() ? 0 : tight[0].size();
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<int> sub;
        for (int v : face)
            if (tight[v][r]) sub.push_back(v);
        if (sub.size() == face.size() || sub.empty() || tight[base][r]) continue;
        if (facets.count(sub)) continue;
        std::vector<RatVec> pts;
        for (int v : sub) pts.push_back(V[v]);
        if (affine_dimension(pts) != k - 1) continue;
        facets.insert(sub);
    }
    prefix.push_back(base);
    for (const auto& f : facets) triangulate(V, tight, f, k - 1, prefix, out);
    prefix.pop_back();
}

}  // namespace detail

inline Rational factorial_q(int n) {
    Rational f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline VolumeResult volume_exact(const HPolytope& P) {
    VolumeResult res;
    RatMat A;
    RatVec b;
    if (!detail::normalize_rows(P, A, b)) return res;
    if (P.D == 0) {
        res.status = BodyStatus::FullDimensional;
        res.exact = 1;
        res.value = 1.0;
        res.vertices.push_back({});
        return res;
    }
    if (P.D == 1) {
        std::optional<Rational> lo, hi;
        for (std::size_t r = 0; r < A.size(); ++r) {
            Rational t = b[r] / A[r][0];
            if (A[r][0] > 0) { if (!hi || t < *hi) hi = t; }
            else if (!lo || t > *lo) lo = t;
        }
        if (!lo || !hi) throw std::runtime_error("polytope is unbounded");
        if (*lo > *hi) return res;
        res.vertices.push_back({*lo});
        if (*hi != *lo) res.vertices.push_back({*hi});
        res.status = *hi > *lo ? BodyStatus::FullDimensional : BodyStatus::LowerDimensional;
        res.exact = *hi - *lo;
        res.value = to_double(res.exact);
        return res;
    }
    auto V = enumerate_vertices(A, b, P.D);
    res.vertices = V;
    if (V.empty()) return res;
    if (affine_dimension(V) < P.D) {
        res.status = BodyStatus::LowerDimensional;
        return res;
    }
    res.status = BodyStatus::FullDimensional;
    std::vector<std::vector<char>> tight(V.size(), std::vector<char>(A.size(), 0));
    for (std::size_t v = 0; v < V.size(); ++v)
        for (std::size_t r = 0; r < A.size(); ++r) tight[v][r] = dot(A[r], V[v]) == b[r];
    std::vector<int> all(V.size());
    for (std::size_t v = 0; v < V.size(); ++v) all[v] = static_cast<int>(v);
    std::vector<std::vector<int>> simplices;
    std::vector<int> prefix;
    detail::triangulate(V, tight, all, P.D, prefix, simplices);
    Rational total = 0;
    for (const auto& s : simplices) {
        RatMat M;
        for (int i = 1; i <= P.D; ++i) {
            RatVec row(P.D);
            for (int j = 0; j < P.D; ++j) row[j] = V[s[i]][j] - V[s[0]][j];
            M.push_back(std::move(row));
        }
        total += abs(determinant(std::move(M)));
    }
    res.exact = total / factorial_q(P.D);
    res.value = to_double(res.exact);
    return res;
}

/// Hit-or-miss estimate inside the exact bounding box of P.
inline VolumeResult volume_mc(const HPolytope& P, long long samples, std::uint64_t seed) {
    if (samples <= 0) throw std::invalid_argument("samples must be positive");
    VolumeResult res;
    res.is_exact = false;
    RatMat A;
    RatVec b;
    if (!detail::normalize_rows(P, A, b)) return res;
    std::vector<RatVec> V;
    if (P.D == 1) {
        auto ex = volume_exact(P);
        V = ex.vertices;
    } else {
        V = enumerate_vertices(A, b, P.D);
    }
    if (V.empty()) return res;
    res.status = affine_dimension(V) < P.D ? BodyStatus::LowerDimensional : BodyStatus::FullDimensional;
    std::vector<double> lo(P.D, 1e300), hi(P.D, -1e300);
    for (const auto& v : V)
        for (int j = 0; j < P.D; ++j) {
            lo[j] = std::min(lo[j], to_double(v[j]));
            hi[j] = std::max(hi[j], to_double(v[j]));
        }
    std::vector<std::vector<double>> Ad(A.size(), std::vector<double>(P.D));
    std::vector<double> bd(b.size());
    for (std::size_t r = 0; r < A.size(); ++r) {
        for (int j = 0; j < P.D; ++j) Ad[r][j] = to_double(A[r][j]);
        bd[r] = to_double(b[r]);
    }
    double box = 1.0;
    for (int j = 0; j < P.D; ++j) box *= hi[j] - lo[j];
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<double> z(P.D);
    long long hits = 0;
    for (long long s = 0; s < samples; ++s) {
        for (int j = 0; j < P.D; ++j) z[j] = lo[j] + (hi[j] - lo[j]) * U(rng);
        bool in = true;
        for (std::size_t r = 0; r < Ad.size() && in; ++r) {
            double t = 0.0;
            for (int j = 0; j < P.D; ++j) t += Ad[r][j] * z[j];
            in = t <= bd[r];
        }
        hits += in;
    }
    double p = static_cast<double>(hits) / samples;
    res.value = box * p;
    res.sigma = box * std::sqrt(p * (1.0 - p) / samples);
    res.half_width = 2.5758293035489 * res.sigma;
    return res;
}

}  // namespace qhive
