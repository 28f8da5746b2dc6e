/**
 * @file lr_rule.hpp
 * Classical Littlewood–Richardson coefficients by counting LR tableaux:
 * semistandard fillings of ν/λ with content μ whose right-to-left,
 * top-to-bottom reading word is a lattice word. Used as an independent check
 * of the degree-0 coefficients.
 */
#pragma once

#include "qhive/partition.hpp"

#include <cstdint>
#include <vector>

namespace qhive {

inline std::uint64_t lr_coefficient(const Partition& lambda, const Partition& mu, const Partition& nu) {
    const int rows = nu.length();
    auto part = [](const Partition& p, int i) { return i < p.length() ? p[i] : 0; };
    if (lambda.weight() + mu.weight() != nu.weight()) return 0;
    for (int i = 0; i < std::max(rows, lambda.length()); ++i)
        if (part(lambda, i) > part(nu, i)) return 0;
    const int letters = mu.length();
    std::vector<std::vector<int>> T(rows);
    for (int i = 0; i < rows; ++i) T[i].assign(part(nu, i), 0);
    std::vector<int> count(letters + 1, 0);
    std::uint64_t total = 0;
    auto rec = [&](auto&& self, int i, int j) -> void {
        if (i == rows) {
            for (int v = 1; v <= letters; ++v)
                if (count[v] != mu[v - 1]) return;
            ++total;
            return;
        }
        if (j < part(lambda, i)) {
            self(self, i + 1, i + 1 < rows ? part(nu, i + 1) - 1 : 0);
            return;
        }
        int hi = j + 1 < part(nu, i) ? T[i][j + 1] : letters;
        int lo = 1;
        if (i > 0 && j >= part(lambda, i - 1) && j < part(nu, i - 1)) lo = T[i - 1][j] + 1;
        for (int v = lo; v <= hi; ++v) {
            if (count[v] + 1 > mu[v - 1]) continue;
            if (v > 1 && count[v] + 1 > count[v - 1]) continue;
            T[i][j] = v;
            ++count[v];
            self(self, i, j - 1);
            --count[v];
        }
        T[i][j] = 0;
    };
    rec(rec, 0, part(nu, 0) - 1);
    return total;
}

}  // namespace qhive
