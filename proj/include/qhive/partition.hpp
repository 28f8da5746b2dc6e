/**
 * @file partition.hpp
 * Partitions in the n x (N-n) frame, boundary words, and hive boundary data.
 */
#pragma once

#include "qhive/colors.hpp"

#include <array>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhive {

struct Partition {
    std::vector<int> parts;

    int length() const { return static_cast<int>(parts.size()); }
    int weight() const { return std::accumulate(parts.begin(), parts.end(), 0); }
    int operator[](int i) const { return parts[i]; }

    bool fits(int N) const {
        int n = length();
        for (int i = 0; i < n; ++i) {
            if (parts[i] < 0 || parts[i] > N - n) return false;
            if (i + 1 < n && parts[i] < parts[i + 1]) return false;
        }
        return true;
    }
    friend bool operator==(const Partition&, const Partition&) = default;
};

inline Partition parse_partition(const std::string& s) {
    Partition p;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto comma = s.find(',', start);
        auto piece = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!piece.empty()) p.parts.push_back(std::stoi(piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return p;
}

/// All partitions with n parts bounded by N-n, in reverse lexicographic order.
inline std::vector<Partition> partitions_in_frame(int n, int N) {
    std::vector<Partition> out;
    std::vector<int> cur(n);
    auto rec = [&](auto&& self, int i, int bound) -> void {
        if (i == n) {
            out.push_back({cur});
            return;
        }
        for (int x = bound; x >= 0; --x) {
            cur[i] = x;
            self(self, i + 1, x);
        }
    };
    rec(rec, 0, N - n);
    return out;
}

using Word = std::vector<int>;  ///< letters in {0,1,2}

/**
 * (ω0, ω1, ω2) for the triple (ν, λ, μ): zeros at λ_i + n-1-i (0-based i) in
 * ω1 and ω2, at N-1-(ν_i + n-1-i) in ω0, then the last d zeros and the first
 * d twos of every word become 1.
 */
inline std::array<Word, 3> words_from_partitions(const Partition& lambda, const Partition& mu, const Partition& nu,
                                                 int d, int N) {
    int n = lambda.length();
    if (mu.length() != n || nu.length() != n) throw std::invalid_argument("partitions must have the same length");
    if (!lambda.fits(N) || !mu.fits(N) || !nu.fits(N)) throw std::invalid_argument("partition does not fit the frame");
    if (d < 0 || lambda.weight() + mu.weight() != nu.weight() + N * d)
        throw std::invalid_argument("degree mismatch: |lambda|+|mu| != |nu| + N d");
    auto make = [&](const Partition& p, bool dual) {
        Word w(N, 2);
        for (int i = 0; i < n; ++i) {
            int pos = p[i] + n - 1 - i;
            w[dual ? N - 1 - pos : pos] = 0;
        }
        int z = 0, t = 0;
        for (int k = N - 1; k >= 0 && z < d; --k)
            if (w[k] == 0) { w[k] = 1; ++z; }
        for (int k = 0; k < N && t < d; ++k)
            if (w[k] == 2) { w[k] = 1; ++t; }
        if (z < d || t < d) throw std::invalid_argument("quantum degree too large for the frame");
        return w;
    };
    return {make(nu, true), make(lambda, false), make(mu, false)};
}

struct HiveBoundary {
    int k = 0, N = 0;
    std::array<std::vector<Color>, 3> c;
    std::array<std::vector<int>, 3> l;
};

/// Colors are the non-2 letters; labels their positions.
inline HiveBoundary hive_boundary(const std::array<Word, 3>& w) {
    HiveBoundary b;
    b.N = static_cast<int>(w[0].size());
    int k0 = -1, k1 = -1;
    for (int i = 0; i < 3; ++i) {
        if (static_cast<int>(w[i].size()) != b.N) throw std::invalid_argument("words of different lengths");
        int z = 0, o = 0;
        for (int pos = 0; pos < b.N; ++pos) {
            int x = w[i][pos];
            if (x == 2) continue;
            if (x != 0 && x != 1) throw std::invalid_argument("word letters must be 0, 1 or 2");
            (x == 0 ? z : o)++;
            b.c[i].push_back(x == 0 ? Color::Zero : Color::One);
            b.l[i].push_back(pos);
        }
        if (i == 0) { k0 = z; k1 = o; }
        else if (z != k0 || o != k1) throw std::invalid_argument("words disagree on letter counts");
    }
    b.k = k0 + k1;
    return b;
}

inline HiveBoundary qlr_boundary(const Partition& lambda, const Partition& mu, const Partition& nu, int d, int N) {
    return hive_boundary(words_from_partitions(lambda, mu, nu, d, N));
}

}  // namespace qhive
