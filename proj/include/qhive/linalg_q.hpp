/**
 * @file linalg_q.hpp
 * Small dense linear algebra over exact rationals.
 */
#pragma once

#include "qhive/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace qhive {

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

/// Row-reduces m in place; returns the pivot columns.
inline std::vector<int> row_reduce(RatMat& m, int cols) {
    std::vector<int> pivots;
    int row = 0;
    for (int c = 0; c < cols && row < static_cast<int>(m.size()); ++c) {
        int p = -1;
        for (int r = row; r < static_cast<int>(m.size()); ++r)
            if (m[r][c] != 0) { p = r; break; }
        if (p < 0) continue;
        std::swap(m[row], m[p]);
        Rational inv = 1 / m[row][c];
        for (auto& x : m[row]) x *= inv;
        for (int r = 0; r < static_cast<int>(m.size()); ++r) {
            if (r == row || m[r][c] == 0) continue;
            Rational f = m[r][c];
            for (std::size_t k = c; k < m[r].size(); ++k) m[r][k] -= f * m[row][k];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

inline int rank_of(RatMat m) {
    if (m.empty()) return 0;
    return static_cast<int>(row_reduce(m, static_cast<int>(m[0].size())).size());
}

/// Unique solution of a square system, or nothing when singular.
inline std::optional<RatVec> solve_square(const RatMat& A, const RatVec& b) {
    const int n = static_cast<int>(A.size());
    RatMat m(n);
    for (int i = 0; i < n; ++i) {
        m[i] = A[i];
        m[i].push_back(b[i]);
    }
    auto piv = row_reduce(m, n);
    if (static_cast<int>(piv.size()) < n) return std::nullopt;
    RatVec x(n);
    for (int i = 0; i < n; ++i) x[i] = m[i][n];
    return x;
}

inline Rational dot(const RatVec& a, const RatVec& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Determinant by elimination.
inline Rational determinant(RatMat m) {
    const int n = static_cast<int>(m.size());
    Rational det = 1;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (m[r][c] != 0) { p = r; break; }
        if (p < 0) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rational f = m[r][c] / m[c][c];
            for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

/// Dimension of the affine hull of a point set.
inline int affine_dimension(const std::vector<RatVec>& pts) {
    if (pts.size() <= 1) return 0;
    RatMat diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        RatVec d(pts[i].size());
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = pts[i][k] - pts[0][k];
        diffs.push_back(std::move(d));
    }
    return rank_of(std::move(diffs));
}

}  // namespace qhive
