/**
 * @file hive_count.hpp
 * Two-colored discrete dual hives on T_k: validation and exact enumeration.
 *
 * A hive is a color map C : E_k -> {0,1,3,m} and a label map L : E_k -> N.
 * Face sums are N-1, except N-2 on reversed faces whose colors are not
 * {0,1,m}. On a lozenge, for two parallel sides e, e' of type ℓ:
 *   middle edge m                                  -> L(e) = L(e')
 *   e_ℓ > e'_ℓ                                     -> L(e) > L(e')
 *   equal heights, e'_{ℓ+1} = e_{ℓ+1}+1            -> L(e) >= L(e'),
 *       strict when another side of the lozenge is m.
 * The middle-m equality takes precedence over the height rule.
 */
#pragma once

#include "qhive/colors.hpp"
#include "qhive/grid.hpp"
#include "qhive/partition.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace qhive {

struct DualHive {
    std::vector<Color> C;
    std::vector<int> L;
};

inline int face_target(const TriGrid& T, const Face& f, const std::vector<Color>& C, int N) {
    (void)T;
    if (f.direct) return N - 1;
    return is_zero_one_m(C[f.edge[0]], C[f.edge[1]], C[f.edge[2]]) ? N - 1 : N - 2;
}

/// Checks the lozenge conditions; on failure writes a short reason.
inline bool lozenge_ok(const TriGrid& T, const Lozenge& lz, const std::vector<Color>& C, const std::vector<int>& L,
                       std::string* why = nullptr) {
    bool mid_m = C[lz.middle] == Color::M;
    auto bedges = lz.boundary_edges();
    for (int k = 0; k < 2; ++k) {
        int l = lz.side_type[k];
        int a = lz.side_pair[k][0], b = lz.side_pair[k][1];
        if (mid_m) {
            if (L[a] != L[b]) { if (why) *why = "middle m but unequal labels"; return false; }
            continue;
        }
        auto ca = T.coords(T.edges()[a]), cb = T.coords(T.edges()[b]);
        if (ca[l] != cb[l]) {
            int hi = ca[l] > cb[l] ? a : b, lo = hi == a ? b : a;
            if (!(L[hi] > L[lo])) { if (why) *why = "higher side not strictly larger"; return false; }
            continue;
        }
        int l1 = mod3(l + 1);
        int ep = cb[l1] == ca[l1] + 1 ? b : a;
        int e = ep == a ? b : a;
        bool other_m = false;
        for (int x : bedges)
            if (x != ep && C[x] == Color::M) other_m = true;
        if (other_m ? !(L[e] > L[ep]) : !(L[e] >= L[ep])) {
            if (why) *why = other_m ? "same height with m side: not strict" : "same height: order violated";
            return false;
        }
    }
    return true;
}

struct HiveReport {
    bool ok = true;
    std::vector<std::string> violations;
    void fail(std::string s) {
        ok = false;
        violations.push_back(std::move(s));
    }
};

inline std::string edge_name(const TriGrid& T, int e) {
    const auto& ed = T.edges()[e];
    auto c = T.coords(ed);
    std::ostringstream os;
    os << ed.type << ':' << c.x0 << ',' << c.x1 << ',' << c.x2;
    return os.str();
}

inline HiveReport validate_dual_hive(const DualHive& h, const HiveBoundary& b) {
    HiveReport rep;
    TriGrid T(b.k);
    const int E = static_cast<int>(T.edges().size());
    if (static_cast<int>(h.C.size()) != E || static_cast<int>(h.L.size()) != E) {
        rep.fail("hive tables do not cover all edges");
        return rep;
    }
    for (int e = 0; e < E; ++e)
        if (h.L[e] < 0) rep.fail("negative label on " + edge_name(T, e));
    for (int side = 0; side < 3; ++side) {
        auto es = T.boundary_side(side);
        for (int j = 0; j < b.k; ++j)
            if (h.C[es[j]] != b.c[side][j] || h.L[es[j]] != b.l[side][j])
                rep.fail("boundary mismatch on " + edge_name(T, es[j]));
    }
    for (const auto& f : T.faces()) {
        if (!face_colors_ok(h.C[f.edge[kClockwiseTypes[0]]], h.C[f.edge[kClockwiseTypes[1]]],
                            h.C[f.edge[kClockwiseTypes[2]]]))
            rep.fail("face color rule at " + std::string(f.direct ? "direct" : "reversed") + " face (" +
                     std::to_string(f.i) + "," + std::to_string(f.j) + ")");
        int sum = h.L[f.edge[0]] + h.L[f.edge[1]] + h.L[f.edge[2]];
        if (sum != face_target(T, f, h.C, b.N))
            rep.fail("face sum " + std::to_string(sum) + " at " + std::string(f.direct ? "direct" : "reversed") +
                     " face (" + std::to_string(f.i) + "," + std::to_string(f.j) + ")");
    }
    for (const auto& lz : T.lozenges()) {
        std::string why;
        if (!lozenge_ok(T, lz, h.C, h.L, &why)) rep.fail("lozenge around " + edge_name(T, lz.middle) + ": " + why);
    }
    return rep;
}

namespace detail {

class HiveSearch {
public:
    HiveSearch(const HiveBoundary& b) : b_(b), T_(b.k) {
        const int E = static_cast<int>(T_.edges().size());
        C_.assign(E, Color::Zero);
        L_.assign(E, -1);
        for (int side = 0; side < 3; ++side) {
            auto es = T_.boundary_side(side);
            for (int j = 0; j < b.k; ++j) {
                C_[es[j]] = b.c[side][j];
                L_[es[j]] = b.l[side][j];
            }
        }
        std::vector<int> first(E, -1);
        for (int e = 0; e < E; ++e)
            if (L_[e] >= 0) first[e] = -1;
            else first[e] = 1 << 30;
        for (int fi = 0; fi < static_cast<int>(T_.faces().size()); ++fi)
            for (int e : T_.faces()[fi].edge)
                if (first[e] > fi) first[e] = fi;
        checks_.assign(T_.faces().size(), {});
        for (int li = 0; li < static_cast<int>(T_.lozenges().size()); ++li) {
            const auto& lz = T_.lozenges()[li];
            int last = first[lz.middle];
            for (int e : lz.boundary_edges()) last = std::max(last, first[e]);
            checks_[std::max(last, 0)].push_back(li);
        }
    }

    /// Calls visit on each hive; stops early when visit returns false.
    void run(const std::function<bool(const DualHive&)>& visit) {
        visit_ = &visit;
        stop_ = false;
        face(0);
    }

    const TriGrid& grid() const { return T_; }

private:
    bool lozenges_ok(int fi) const {
        for (int li : checks_[fi])
            if (!lozenge_ok(T_, T_.lozenges()[li], C_, L_)) return false;
        return true;
    }

    void face(int fi) {
        if (stop_) return;
        if (fi == static_cast<int>(T_.faces().size())) {
            DualHive h{C_, L_};
            if (!(*visit_)(h)) stop_ = true;
            return;
        }
        const Face& f = T_.faces()[fi];
        std::array<int, 3> open{};
        int nopen = 0;
        for (int e : f.edge)
            if (L_[e] < 0) open[nopen++] = e;
        branch(fi, f, open, nopen, 0);
    }

    void branch(int fi, const Face& f, const std::array<int, 3>& open, int nopen, int idx) {
        if (stop_) return;
        if (idx + 1 < nopen) {
            int e = open[idx];
            for (Color c : kAllColors)
                for (int lab = 0; lab < b_.N; ++lab) {
                    C_[e] = c;
                    L_[e] = lab;
                    branch(fi, f, open, nopen, idx + 1);
                    if (stop_) break;
                }
            L_[open[idx]] = -1;
            return;
        }
        if (nopen == 0) {
            if (closes(f)) descend(fi);
            return;
        }
        int e = open[idx];
        for (Color c : kAllColors) {
            C_[e] = c;
            L_[e] = 0;
            if (!face_colors_ok(C_[f.edge[kClockwiseTypes[0]]], C_[f.edge[kClockwiseTypes[1]]],
                                C_[f.edge[kClockwiseTypes[2]]]))
                continue;
            int target = face_target(T_, f, C_, b_.N);
            int rest = 0;
            for (int x : f.edge)
                if (x != e) rest += L_[x];
            int lab = target - rest;
            if (lab < 0 || lab >= b_.N) continue;
            L_[e] = lab;
            descend(fi);
            if (stop_) break;
        }
        L_[e] = -1;
    }

    bool closes(const Face& f) const {
        if (!face_colors_ok(C_[f.edge[kClockwiseTypes[0]]], C_[f.edge[kClockwiseTypes[1]]],
                            C_[f.edge[kClockwiseTypes[2]]]))
            return false;
        return L_[f.edge[0]] + L_[f.edge[1]] + L_[f.edge[2]] == face_target(T_, f, C_, b_.N);
    }

    void descend(int fi) {
        if (lozenges_ok(fi)) face(fi + 1);
    }

    const HiveBoundary& b_;
    TriGrid T_;
    std::vector<Color> C_;
    std::vector<int> L_;
    std::vector<std::vector<int>> checks_;
    const std::function<bool(const DualHive&)>* visit_ = nullptr;
    bool stop_ = false;
};

}  // namespace detail

inline bool boundary_well_formed(const HiveBoundary& b) {
    if (b.k < 1 || b.N < 1) return false;
    for (int i = 0; i < 3; ++i) {
        if (static_cast<int>(b.c[i].size()) != b.k || static_cast<int>(b.l[i].size()) != b.k) return false;
        for (int j = 0; j < b.k; ++j) {
            if (b.c[i][j] != Color::Zero && b.c[i][j] != Color::One) return false;
            if (b.l[i][j] < 0 || b.l[i][j] >= b.N || (j > 0 && b.l[i][j] <= b.l[i][j - 1])) return false;
        }
    }
    return true;
}

/// Visits every hive with the given boundary, in a fixed order.
inline void for_each_dual_hive(const HiveBoundary& b, const std::function<bool(const DualHive&)>& visit) {
    if (!boundary_well_formed(b)) return;
    detail::HiveSearch s(b);
    s.run(visit);
}

inline std::uint64_t count_dual_hives(const HiveBoundary& b) {
    std::uint64_t count = 0;
    for_each_dual_hive(b, [&](const DualHive&) {
        if (__builtin_add_overflow(count, std::uint64_t{1}, &count)) throw std::overflow_error("hive count overflow");
        return true;
    });
    return count;
}

/// Count for a qLR instance; a degree mismatch gives 0.
inline std::uint64_t count_dual_hives(const Partition& lambda, const Partition& mu, const Partition& nu, int d, int N) {
    if (lambda.weight() + mu.weight() != nu.weight() + N * d) return 0;
    return count_dual_hives(qlr_boundary(lambda, mu, nu, d, N));
}

}  // namespace qhive
