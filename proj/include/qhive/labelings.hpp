/**
 * @file labelings.hpp
 * Regular Z/3-labelings of the hexagon R_{d,n}, their rigid lozenges and
 * supports, and the bijection with edge color maps.
 *
 * Boundary pattern: g(A_i) = n+i, g(B_i) = i, g(C_i) = -i (mod 3). Walking
 * the boundary, g steps by +1 eastward along the south side and the
 * remaining sides alternate, which is the only choice consistent at the
 * corner A_n = C_n for every n.
 */
#pragma once

#include "qhive/colors.hpp"
#include "qhive/grid.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace qhive {

struct RegularLabeling {
    int n = 0, d = 0;
    std::vector<int> values;  ///< indexed by Hexagon vertex id (row-major)

    /// Row-major digit string, the canonical identity of the labeling.
    std::string key() const {
        std::string k;
        for (int x : values) k.push_back(static_cast<char>('0' + x));
        return k;
    }
    friend bool operator==(const RegularLabeling&, const RegularLabeling&) = default;
};

inline int boundary_label(const Hexagon& hex, Vertex v, bool* found = nullptr) {
    for (int i = 0; i <= hex.n(); ++i) {
        if (hex.a_vertex(i) == v) { if (found) *found = true; return mod3(hex.n() + i); }
        if (hex.b_vertex(i) == v) { if (found) *found = true; return mod3(i); }
        if (hex.c_vertex(i) == v) { if (found) *found = true; return mod3(-i); }
    }
    if (found) *found = false;
    return -1;
}

/// The alternation rule on one lozenge: g(v2)=g(v4) forces {g(v1),g(v3)} = {g(v2)+1, g(v2)+2}.
inline bool lozenge_rule_ok(int g1, int g2, int g3, int g4) {
    if (g2 != g4) return true;
    int a = mod3(g1 - g2), b = mod3(g3 - g2);
    return (a == 1 && b == 2) || (a == 2 && b == 1);
}

inline bool is_rigid(const Lozenge& lz, const Hexagon& hex, const std::vector<int>& g) {
    int a = g[hex.vertex_id(lz.v[0])];
    return g[hex.vertex_id(lz.v[1])] == mod3(a + 1) && g[hex.vertex_id(lz.v[2])] == mod3(a + 2) &&
           g[hex.vertex_id(lz.v[3])] == mod3(a + 1);
}

/// Boundary pattern plus the lozenge rule on every lozenge.
inline bool is_regular(const Hexagon& hex, const std::vector<int>& g) {
    if (g.size() != hex.vertices().size()) return false;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (g[k] < 0 || g[k] > 2) return false;
        bool found = false;
        int b = boundary_label(hex, hex.vertices()[k], &found);
        if (found && b != g[k]) return false;
    }
    for (const auto& lz : hex.lozenges())
        if (!lozenge_rule_ok(g[hex.vertex_id(lz.v[0])], g[hex.vertex_id(lz.v[1])], g[hex.vertex_id(lz.v[2])],
                             g[hex.vertex_id(lz.v[3])]))
            return false;
    return true;
}

namespace detail {

struct LabelingSearch {
    const Hexagon& hex;
    std::vector<int> order;                  // interior vertex ids in row-major order
    std::vector<std::vector<int>> checks;    // lozenges completed at each depth
    std::vector<int> g;
    std::vector<RegularLabeling>* out;

    explicit LabelingSearch(const Hexagon& h) : hex(h) {
        g.assign(hex.vertices().size(), -1);
        std::vector<int> pos(hex.vertices().size(), -1);
        for (std::size_t k = 0; k < hex.vertices().size(); ++k) {
            Vertex v = hex.vertices()[k];
            if (hex.is_interior(v)) {
                pos[k] = static_cast<int>(order.size());
                order.push_back(static_cast<int>(k));
            } else {
                bool found = false;
                g[k] = boundary_label(hex, v, &found);
                if (!found) throw std::logic_error("boundary vertex missing from the A/B/C paths");
            }
        }
        for (int i = 0; i <= hex.n(); ++i) {
            if (g[hex.vertex_id(hex.a_vertex(i))] != mod3(hex.n() + i) ||
                g[hex.vertex_id(hex.b_vertex(i))] != mod3(i) || g[hex.vertex_id(hex.c_vertex(i))] != mod3(-i))
                throw std::logic_error("inconsistent boundary pattern at a corner");
        }
        checks.assign(order.size() + 1, {});
        for (int li = 0; li < static_cast<int>(hex.lozenges().size()); ++li) {
            int last = -1;
            for (auto v : hex.lozenges()[li].v) last = std::max(last, pos[hex.vertex_id(v)]);
            checks[last + 1].push_back(li);
        }
    }

    bool ok_at(int depth) const {
        for (int li : checks[depth]) {
            const auto& lz = hex.lozenges()[li];
            if (!lozenge_rule_ok(g[hex.vertex_id(lz.v[0])], g[hex.vertex_id(lz.v[1])], g[hex.vertex_id(lz.v[2])],
                                 g[hex.vertex_id(lz.v[3])]))
                return false;
        }
        return true;
    }

    void run(int depth) {
        if (depth == static_cast<int>(order.size())) {
            out->push_back({hex.n(), hex.d(), g});
            return;
        }
        for (int x = 0; x < 3; ++x) {
            g[order[depth]] = x;
            if (ok_at(depth + 1)) run(depth + 1);
        }
        g[order[depth]] = -1;
    }
};

}  // namespace detail

/**
 * All regular labelings, in lexicographic order of the interior values read row-major.
 * With threads > 1 the three values of the first interior vertex are searched concurrently.
 */
inline std::vector<RegularLabeling> enumerate_regular_labelings(int n, int d, int threads = 1) {
    if (n < 3 || d < 0 || d > n) throw std::invalid_argument("labelings need n >= 3 and 0 <= d <= n");
    Hexagon hex(n, d);
    detail::LabelingSearch proto(hex);
    std::vector<RegularLabeling> out;
    if (!proto.ok_at(0)) return out;
    if (proto.order.empty()) {
        out.push_back({n, d, proto.g});
        return out;
    }
    std::array<std::vector<RegularLabeling>, 3> parts;
    auto branch = [&](int x) {
        detail::LabelingSearch s = proto;
        s.out = &parts[x];
        s.g[s.order[0]] = x;
        if (s.ok_at(1)) s.run(1);
    };
    if (threads > 1) {
        std::vector<std::thread> pool;
        for (int x = 0; x < 3; ++x) pool.emplace_back(branch, x);
        for (auto& t : pool) t.join();
    } else {
        for (int x = 0; x < 3; ++x) branch(x);
    }
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

inline std::vector<int> rigid_lozenges(const Hexagon& hex, const RegularLabeling& g) {
    std::vector<int> out;
    for (int li = 0; li < static_cast<int>(hex.lozenges().size()); ++li)
        if (is_rigid(hex.lozenges()[li], hex, g.values)) out.push_back(li);
    return out;
}

/// Hexagon vertex ids of Supp(g): everything except the v4 of rigid lozenges.
inline std::vector<int> support(const Hexagon& hex, const RegularLabeling& g) {
    std::vector<char> removed(hex.vertices().size(), 0);
    for (int li : rigid_lozenges(hex, g)) removed[hex.vertex_id(hex.lozenges()[li].v[3])] = 1;
    std::vector<int> out;
    for (int k = 0; k < static_cast<int>(removed.size()); ++k)
        if (!removed[k]) out.push_back(k);
    return out;
}

/**
 * Edge colors of a labeling: along the edge orientation a step of +1 gives 1,
 * +2 gives 0; on a flat edge the far vertex w of the direct face decides,
 * g(w) = g+1 gives 3 and g(w) = g-1 gives m (rigid lozenges have m in the middle).
 */
inline std::vector<Color> color_map_of(const Hexagon& hex, const RegularLabeling& g) {
    std::vector<Color> colors(hex.edges().size());
    for (int e = 0; e < static_cast<int>(hex.edges().size()); ++e) {
        const auto& ed = hex.edges()[e];
        int gu = g.values[hex.vertex_id(ed.origin)], gv = g.values[hex.vertex_id(ed.end())];
        int diff = mod3(gv - gu);
        if (diff == 1) { colors[e] = Color::One; continue; }
        if (diff == 2) { colors[e] = Color::Zero; continue; }
        auto [df, rf] = hex.faces_of_edge(e);
        int sign = 1;
        Vertex w;
        if (df >= 0) {
            w = ed.origin - kDir[mod3(ed.type + 1)];
        } else {
            w = ed.origin - kDir[mod3(ed.type + 2)];
            sign = -1;
        }
        int dw = mod3(g.values[hex.vertex_id(w)] - gu);
        if (dw == 0) throw std::invalid_argument("labeling has a constant face");
        colors[e] = ((dw == 1) == (sign == 1)) ? Color::Three : Color::M;
    }
    return colors;
}

inline bool face_rule_holds(const LatticeRegion& reg, const std::vector<Color>& colors) {
    for (const auto& f : reg.faces())
        if (!face_colors_ok(colors[f.edge[kClockwiseTypes[0]]], colors[f.edge[kClockwiseTypes[1]]],
                            colors[f.edge[kClockwiseTypes[2]]]))
            return false;
    return true;
}

/// Inverse of color_map_of: integrates the steps from g(B_0) = 0. Throws on invalid tables.
inline RegularLabeling labeling_of(const Hexagon& hex, const std::vector<Color>& colors) {
    if (colors.size() != hex.edges().size()) throw std::invalid_argument("color table has the wrong size");
    if (!face_rule_holds(hex, colors)) throw std::invalid_argument("color table violates the face color rule");
    std::vector<int> g(hex.vertices().size(), -1);
    std::vector<int> stack{hex.vertex_id(hex.b_vertex(0))};
    g[stack[0]] = 0;
    auto step = [](Color c) { return c == Color::One ? 1 : c == Color::Zero ? 2 : 0; };
    while (!stack.empty()) {
        Vertex v = hex.vertices()[stack.back()];
        stack.pop_back();
        int gv = g[hex.vertex_id(v)];
        for (int t = 0; t < 3; ++t) {
            for (int dir : {1, -1}) {
                Vertex w = dir == 1 ? v + kDir[t] : v - kDir[t];
                if (!hex.has(w)) continue;
                int e = dir == 1 ? hex.edge_id(v, t) : hex.edge_id(w, t);
                int want = mod3(gv + dir * step(colors[e]));
                int wid = hex.vertex_id(w);
                if (g[wid] < 0) {
                    g[wid] = want;
                    stack.push_back(wid);
                } else if (g[wid] != want) {
                    throw std::invalid_argument("color table is not integrable");
                }
            }
        }
    }
    RegularLabeling out{hex.n(), hex.d(), g};
    if (!is_regular(hex, g)) throw std::invalid_argument("color table does not come from a regular labeling");
    if (color_map_of(hex, out) != colors) throw std::invalid_argument("flat-edge colors disagree with the labeling");
    return out;
}

inline RegularLabeling labeling_from_key(int n, int d, const std::string& key) {
    Hexagon hex(n, d);
    if (key.size() != hex.vertices().size()) throw std::invalid_argument("labeling key has the wrong length");
    RegularLabeling g{n, d, {}};
    for (char ch : key) {
        if (ch < '0' || ch > '2') throw std::invalid_argument("labeling key must use digits 0-2");
        g.values.push_back(ch - '0');
    }
    if (!is_regular(hex, g.values)) throw std::invalid_argument("labeling key is not regular");
    return g;
}

// ---- cache file ------------------------------------------------------------

inline std::string labeling_cache_header(int n, int d) {
    return "# qhive regular labelings n=" + std::to_string(n) + " d=" + std::to_string(d);
}

inline void save_labelings(const std::filesystem::path& path, int n, int d, const std::vector<RegularLabeling>& gs) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << labeling_cache_header(n, d) << '\n';
    for (const auto& g : gs) os << g.key() << '\n';
}

/// Empty optional when the file is missing or its header names another (n, d).
inline std::optional<std::vector<RegularLabeling>> load_labelings(const std::filesystem::path& path, int n, int d) {
    std::ifstream is(path);
    if (!is) return std::nullopt;
    std::string line;
    if (!std::getline(is, line) || line != labeling_cache_header(n, d)) return std::nullopt;
    std::vector<RegularLabeling> out;
    while (std::getline(is, line))
        if (!line.empty()) out.push_back(labeling_from_key(n, d, line));
    return out;
}

/**
 * Memoized enumeration. When QHIVE_CACHE_DIR is set, results are also read
 * from and written to labelings_n<n>_d<d>.txt in that directory.
 */
inline const std::vector<RegularLabeling>& cached_regular_labelings(int n, int d) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<RegularLabeling>> memo;
    std::lock_guard lock(mu);
    auto it = memo.find({n, d});
    if (it != memo.end()) return it->second;
    std::vector<RegularLabeling> gs;
    std::optional<std::filesystem::path> file;
    if (const char* dir = std::getenv("QHIVE_CACHE_DIR"); dir && *dir)
        file = std::filesystem::path(dir) / ("labelings_n" + std::to_string(n) + "_d" + std::to_string(d) + ".txt");
    std::optional<std::vector<RegularLabeling>> loaded;
    if (file) loaded = load_labelings(*file, n, d);
    if (loaded) {
        gs = std::move(*loaded);
    } else {
        gs = enumerate_regular_labelings(n, d);
        if (file) {
            std::error_code ec;
            std::filesystem::create_directories(file->parent_path(), ec);
            save_labelings(*file, n, d, gs);
        }
    }
    return memo.emplace(std::make_pair(n, d), std::move(gs)).first->second;
}

}  // namespace qhive
