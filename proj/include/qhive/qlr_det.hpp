/**
 * @file qlr_det.hpp
 * Quantum Littlewood–Richardson coefficients as a root-of-unity sum, and the
 * limiting series J.
 *
 * With ξ = e^{2iπ/N} and λ'_s = λ_s + n-1-s (0-based s),
 *
 *   c^{ν,d}_{λμ} = N^{-n} Σ_{N > I_1 > ... > I_n >= 0} F(I),
 *   F(I) = det[ξ^{I_r λ'_s}] det[ξ^{I_r μ'_s}] det[ξ^{-I_r ν'_s}] / Δ(ξ^I),
 *
 * where Δ(x) = Π_{r<s} (x_r - x_s), times (-1)^{(n-1)d}. The sign appears
 * because the natural index set is shifted by (n-1)/2, and F(I + a) =
 * e^{2iπad} F(I). F is invariant under integer shifts, so the sum runs over
 * orbit-minimal tuples with I_n = 0, weighted by orbit size.
 */
#pragma once

#include "qhive/parallel.hpp"
#include "qhive/partition.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <stdexcept>
#include <vector>

namespace qhive {

using cplx = std::complex<double>;
using IndexTuple = std::vector<int>;

inline cplx complex_det(const Eigen::MatrixXcd& m) {
    if (m.rows() == 0) return 1.0;
    return m.partialPivLu().determinant();
}

/// e^{2iπ a/N} with the exponent reduced mod N first.
inline cplx root_of_unity(long long a, int N) {
    long long r = ((a % N) + N) % N;
    double t = 2.0 * std::numbers::pi * static_cast<double>(r) / N;
    return {std::cos(t), std::sin(t)};
}

inline std::vector<int> shifted_parts(const Partition& p) {
    int n = p.length();
    std::vector<int> out(n);
    for (int s = 0; s < n; ++s) out[s] = p[s] + n - 1 - s;
    return out;
}

inline cplx F_value(const IndexTuple& I, const Partition& lambda, const Partition& mu, const Partition& nu, int N) {
    const int n = static_cast<int>(I.size());
    if (lambda.length() != n || mu.length() != n || nu.length() != n)
        throw std::invalid_argument("index tuple and partitions differ in length");
    if (((lambda.weight() + mu.weight() - nu.weight()) % N + N) % N != 0)
        throw std::invalid_argument("|lambda|+|mu| must be congruent to |nu| mod N");
    for (int r = 0; r < n; ++r)
        for (int s = r + 1; s < n; ++s)
            if (((I[r] - I[s]) % N + N) % N == 0) throw std::invalid_argument("repeated entries in the index tuple");
    auto mat = [&](const Partition& p, int sign) {
        auto sh = shifted_parts(p);
        Eigen::MatrixXcd m(n, n);
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) m(r, s) = root_of_unity(sign * static_cast<long long>(I[r]) * sh[s], N);
        return m;
    };
    cplx vand = 1.0;
    for (int r = 0; r < n; ++r)
        for (int s = r + 1; s < n; ++s) vand *= root_of_unity(I[r], N) - root_of_unity(I[s], N);
    return complex_det(mat(lambda, 1)) * complex_det(mat(mu, 1)) * complex_det(mat(nu, -1)) / vand;
}

struct OrbitInfo {
    bool is_min = false;
    int orbit_size = 0;
};

/// Orbit of I under I -> sort(I + l mod N); minimality is lexicographic on decreasing tuples.
inline OrbitInfo orbit_info(const IndexTuple& I, int N) {
    std::set<IndexTuple> orbit;
    IndexTuple J(I.size());
    for (int l = 0; l < N; ++l) {
        for (std::size_t i = 0; i < I.size(); ++i) J[i] = (I[i] + l) % N;
        std::sort(J.begin(), J.end(), std::greater<>());
        orbit.insert(J);
    }
    OrbitInfo info;
    info.orbit_size = static_cast<int>(orbit.size());
    info.is_min = *orbit.begin() == I;
    return info;
}

/// All N > I_1 > ... > I_n = 0, in lexicographic order.
inline std::vector<IndexTuple> index_tuples_last_zero(int n, int N) {
    std::vector<IndexTuple> out;
    if (n == 0 || n > N) return out;
    IndexTuple cur(n, 0);
    auto rec = [&](auto&& self, int pos, int upper) -> void {
        if (pos == n - 1) {
            out.push_back(cur);
            return;
        }
        int slots = n - 1 - pos;  // entries still to place after this one, counting the final 0
        for (int x = slots; x < upper; ++x) {
            cur[pos] = x;
            self(self, pos + 1, x);
        }
    };
    rec(rec, 0, N);
    return out;
}

struct QlrResult {
    long long value = 0;
    double residual = 0.0;
    cplx raw{};
};

class NumericalFailure : public std::runtime_error {
public:
    NumericalFailure(const std::string& what, cplx raw) : std::runtime_error(what), raw(raw) {}
    cplx raw;
};

/// Raw complex sum over orbit-minimal tuples, chunked with a fixed combination order.
inline cplx qlr_raw_sum(const Partition& lambda, const Partition& mu, const Partition& nu, int N, int threads = 1) {
    const int n = lambda.length();
    auto tuples = index_tuples_last_zero(n, N);
    auto partial = parallel_chunked_sum<cplx>(tuples.size(), threads, [&](std::size_t k) {
        auto info = orbit_info(tuples[k], N);
        if (!info.is_min) return cplx{0.0};
        return static_cast<double>(info.orbit_size) * F_value(tuples[k], lambda, mu, nu, N);
    });
    int d = (lambda.weight() + mu.weight() - nu.weight()) / N;
    double sign = ((n - 1) * d) % 2 == 0 ? 1.0 : -1.0;
    return sign * partial / std::pow(static_cast<double>(N), n);
}

inline constexpr double kQlrResidualLimit = 1e-6;

inline QlrResult qlr_coefficient(const Partition& lambda, const Partition& mu, const Partition& nu, int d, int N,
                                 int threads = 1) {
    const int n = lambda.length();
    if (mu.length() != n || nu.length() != n) throw std::invalid_argument("partitions must have the same length");
    if (!lambda.fits(N) || !mu.fits(N) || !nu.fits(N)) throw std::invalid_argument("partition does not fit the frame");
    if (d < 0 || lambda.weight() + mu.weight() != nu.weight() + N * d)
        throw std::invalid_argument("degree mismatch: |lambda|+|mu| != |nu| + N d");
    QlrResult res;
    res.raw = qlr_raw_sum(lambda, mu, nu, N, threads);
    res.value = std::llround(res.raw.real());
    res.residual = std::abs(res.raw - cplx(static_cast<double>(res.value), 0.0));
    if (res.residual >= kQlrResidualLimit || res.value < 0)
        throw NumericalFailure("determinantal sum is not close to a nonnegative integer", res.raw);
    return res;
}

// ---- the limiting series J ---------------------------------------------------

struct JResult {
    double value = 0.0;      ///< real part of the partial sum
    double imag = 0.0;       ///< imaginary residue, expected ~0
    double tail_bound = 0.0;
    bool tail_rigorous = false;
    int terms = 0;
};

inline void require_regular(const std::vector<double>& th, const char* name) {
    for (std::size_t i = 0; i + 1 < th.size(); ++i)
        if (!(th[i] > th[i + 1])) throw std::invalid_argument(std::string(name) + " must be strictly decreasing");
    for (double x : th)
        if (x < 0.0 || x >= 1.0) throw std::invalid_argument(std::string(name) + " must lie in [0,1)");
}

/// det[e^{2iπ sign θ_r x_s}]
inline cplx exp_det(const std::vector<double>& theta, const std::vector<int>& x, int sign) {
    const int n = static_cast<int>(theta.size());
    Eigen::MatrixXcd m(n, n);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
            double t = 2.0 * std::numbers::pi * sign * theta[r] * x[s];
            m(r, s) = {std::cos(t), std::sin(t)};
        }
    return complex_det(m);
}

inline double int_vandermonde(const std::vector<int>& x) {
    double v = 1.0;
    for (std::size_t r = 0; r < x.size(); ++r)
        for (std::size_t s = r + 1; s < x.size(); ++s) v *= static_cast<double>(x[r] - x[s]);
    return v;
}

/**
 * Majorant of the omitted terms, Σ_{I_1 > I_max} n^{3n/2} (2π)^{-M} / Δ(I).
 * For n = 3 the inner sum is 2H_{m-1}/m^2 and the bound 2(ln M + 2)/M is
 * rigorous; otherwise the block (I_max, 2 I_max] is summed and doubled.
 */
inline std::pair<double, bool> j_tail_majorant(int n, int I_max) {
    const int M = n * (n - 1) / 2;
    const double c = std::pow(static_cast<double>(n), 1.5 * n) / std::pow(2.0 * std::numbers::pi, M);
    if (n < 2) return {0.0, true};
    if (n == 2) return {c / I_max, true};
    if (n == 3) return {c * 2.0 * (std::log(static_cast<double>(I_max)) + 2.0) / I_max, true};
    double block = 0.0;
    IndexTuple cur(n, 0);
    auto rec = [&](auto&& self, int pos, int upper) -> void {
        if (pos == n - 1) {
            block += 1.0 / int_vandermonde(cur);
            return;
        }
        for (int x = n - 1 - pos; x < upper; ++x) {
            cur[pos] = x;
            self(self, pos + 1, x);
        }
    };
    for (int m = I_max + 1; m <= 2 * I_max; ++m) {
        cur[0] = m;
        rec(rec, 1, m);
    }
    return {2.0 * c * block, false};
}

/**
 * J = (2iπ)^{-M} Σ_{I_n = 0, I_1 <= I_max} det[e^{2iπα_r I_s}] det[e^{2iπβ_r I_s}] det[e^{-2iπγ_r I_s}] / Δ(I),
 * M = n(n-1)/2, times (-1)^{(n-1)d}. The factor i^{-M} comes from
 * Δ(ξ^I) ~ (2iπ/N)^M Δ(I); with the sign this is the real limit of N^{-D} c^{ν,d}_{λμ}.
 */
inline JResult j_volume(const std::vector<double>& alpha, const std::vector<double>& beta,
                        const std::vector<double>& gamma, int I_max, int threads = 1) {
    const int n = static_cast<int>(alpha.size());
    if (static_cast<int>(beta.size()) != n || static_cast<int>(gamma.size()) != n)
        throw std::invalid_argument("alpha, beta, gamma must have the same length");
    require_regular(alpha, "alpha");
    require_regular(beta, "beta");
    require_regular(gamma, "gamma");
    double deg = 0.0;
    for (int i = 0; i < n; ++i) deg += alpha[i] + beta[i] - gamma[i];
    if (std::abs(deg - std::round(deg)) > 1e-9) throw std::invalid_argument("sum(alpha)+sum(beta)-sum(gamma) must be an integer");
    const long long d = std::llround(deg);
    if (I_max < n - 1) throw std::invalid_argument("I_max too small");
    auto tuples = index_tuples_last_zero(n, I_max + 1);
    cplx sum = parallel_chunked_sum<cplx>(tuples.size(), threads, [&](std::size_t k) {
        const auto& I = tuples[k];
        return exp_det(alpha, I, 1) * exp_det(beta, I, 1) * exp_det(gamma, I, -1) / int_vandermonde(I);
    });
    const int M = n * (n - 1) / 2;
    cplx phase = std::pow(cplx(0.0, -1.0), M) / std::pow(2.0 * std::numbers::pi, M);
    if (((n - 1) * d) % 2 != 0) phase = -phase;
    sum *= phase;
    JResult r;
    r.value = sum.real();
    r.imag = sum.imag();
    std::tie(r.tail_bound, r.tail_rigorous) = j_tail_majorant(n, I_max);
    r.terms = static_cast<int>(tuples.size());
    return r;
}

}  // namespace qhive
