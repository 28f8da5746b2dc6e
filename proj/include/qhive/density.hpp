/**
 * @file density.hpp
 * Density of the eigenvalue angles γ of a product of random elements of two
 * regular conjugacy classes of U(n), as a positive combination of volumes of
 * the polytopes P^g, and the reference character series.
 *
 * Densities are with respect to dγ_1 ... dγ_{n-1} on the sorted chamber
 * 1 > γ_1 > ... > γ_n >= 0, with γ_n fixed by Σγ ≡ Σα + Σβ (mod 1). The
 * classical closed form is written per unit of angle 2πγ on the unordered
 * torus; it differs from the chamber density by n! (2π)^{n-1}, which
 * angle_to_chamber carries.
 */
#pragma once

#include "qhive/polytope.hpp"
#include "qhive/qlr_det.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

namespace qhive {

/// sf(n) = Π_{j<=n} j!
inline BigInt superfactorial(int n) {
    BigInt s = 1, f = 1;
    for (int j = 1; j <= n; ++j) {
        f *= j;
        s *= f;
    }
    return s;
}

inline std::vector<double> to_doubles(const RatVec& v) {
    std::vector<double> out;
    for (const auto& x : v) out.push_back(to_double(x));
    return out;
}

/// Π_{i<j} (e^{2iπθ_i} - e^{2iπθ_j})
inline cplx complex_vandermonde(const std::vector<double>& th) {
    cplx v = 1.0;
    for (std::size_t i = 0; i < th.size(); ++i)
        for (std::size_t j = i + 1; j < th.size(); ++j)
            v *= std::polar(1.0, 2 * std::numbers::pi * th[i]) - std::polar(1.0, 2 * std::numbers::pi * th[j]);
    return v;
}

/// 2^{n(n-1)/2} Π_{i<j} sin(π(θ_i - θ_j)); equals |complex_vandermonde| on the sorted chamber.
inline double sine_vandermonde(const std::vector<double>& th) {
    double v = 1.0;
    for (std::size_t i = 0; i < th.size(); ++i)
        for (std::size_t j = i + 1; j < th.size(); ++j) v *= 2.0 * std::sin(std::numbers::pi * (th[i] - th[j]));
    return v;
}

struct CharacterValue {
    cplx value;
    BigInt dim;
};

/// Weyl character of the SU(n) weight λ (n-1 parts) at diag(e^{2iπθ}); λ' = (λ, 0) + ρ.
inline CharacterValue weyl_character(const std::vector<int>& lambda, const std::vector<double>& theta) {
    const int n = static_cast<int>(theta.size());
    if (static_cast<int>(lambda.size()) != n - 1) throw std::invalid_argument("weight needs n-1 parts");
    for (int i = 0; i + 1 < n - 1; ++i)
        if (lambda[i] < lambda[i + 1] || lambda[n - 2] < 0) throw std::invalid_argument("weight must be dominant");
    std::vector<int> lp(n);
    for (int s = 0; s < n; ++s) lp[s] = (s < n - 1 ? lambda[s] : 0) + n - 1 - s;
    cplx vand = complex_vandermonde(theta);
    if (std::abs(vand) < 1e-14) throw std::invalid_argument("character evaluated at a non-regular point");
    BigInt num = 1;
    for (int r = 0; r < n; ++r)
        for (int s = r + 1; s < n; ++s) num *= lp[r] - lp[s];
    BigInt sf = superfactorial(n - 1);
    if (num % sf != 0) throw std::logic_error("dimension formula is not integral");
    return {exp_det(theta, lp, 1) / vand, num / sf};
}

struct SeriesResult {
    double value = 0.0;
    double imag = 0.0;
    double last_shell = 0.0;  ///< magnitude of the λ_1 = truncation shell
};

/// n! (2π)^{n-1}: angle-unit density on the unordered torus -> chamber density in γ.
inline double angle_to_chamber(int n) { return std::tgamma(n + 1.0) * std::pow(2 * std::numbers::pi, n - 1); }

/**
 * |Δ(e^{2iπγ})|^2 Σ_{λ_1 <= T} χ_λ(α) χ_λ(β) χ_λ(-γ) / dim V_λ, the chamber
 * density. Dividing by angle_to_chamber(n) gives the angle-unit form.
 */
inline SeriesResult density_series(const std::vector<double>& gamma, const std::vector<double>& alpha,
                                   const std::vector<double>& beta, int truncation) {
    const int n = static_cast<int>(alpha.size());
    require_regular(alpha, "alpha");
    require_regular(beta, "beta");
    require_regular(gamma, "gamma");
    double deg = 0.0;
    for (int i = 0; i < n; ++i) deg += alpha[i] + beta[i] - gamma[i];
    if (std::abs(deg - std::round(deg)) > 1e-9) throw std::invalid_argument("sum(alpha)+sum(beta)-sum(gamma) must be an integer");
    std::vector<double> neg(n);
    for (int i = 0; i < n; ++i) neg[i] = -gamma[i];
    std::vector<int> lam(n - 1, 0);
    std::vector<cplx> shell(truncation + 1, 0.0);
    auto rec = [&](auto&& self, int pos, int upper) -> void {
        if (pos == n - 1) {
            auto a = weyl_character(lam, alpha), b = weyl_character(lam, beta), c = weyl_character(lam, neg);
            shell[lam.empty() ? 0 : lam[0]] += a.value * b.value * c.value / a.dim.convert_to<double>();
            return;
        }
        for (int x = 0; x <= upper; ++x) {
            lam[pos] = x;
            self(self, pos + 1, x);
        }
    };
    if (n == 1) {
        shell[0] = 1.0;
    } else {
        for (int x = 0; x <= truncation; ++x) {
            lam[0] = x;
            rec(rec, 1, x);
        }
    }
    cplx sum = pairwise_sum(shell);
    double vg = std::abs(complex_vandermonde(gamma));
    double pref = vg * vg;
    SeriesResult r;
    r.value = pref * sum.real();
    r.imag = pref * sum.imag();
    r.last_shell = pref * std::abs(shell[truncation]);
    return r;
}

struct LabelingContribution {
    std::string labeling;
    Rational volume;
    BodyStatus status = BodyStatus::Empty;
};

struct DensityValue {
    double value = 0.0;      ///< chamber density, value = prefactor * volume_sum
    double prefactor = 0.0;  ///< angle_prefactor * angle_to_chamber(n)
    double angle_prefactor = 0.0;
    Rational volume_sum = 0;
    int d = 0;
    bool on_wall = false;  ///< see has_tight_constant_row; the sum may double count there
    std::vector<LabelingContribution> breakdown;
};

/// Labeling geometries for (n, d), computed once per process.
inline const std::vector<LabelingGeometry>& cached_geometries(int n, int d) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<LabelingGeometry>> memo;
    {
        std::lock_guard lock(mu);
        auto it = memo.find({n, d});
        if (it != memo.end()) return it->second;
    }
    const auto& gs = cached_regular_labelings(n, d);
    Hexagon hex(n, d);
    std::vector<LabelingGeometry> geos;
    for (const auto& g : gs) geos.push_back(labeling_geometry(hex, g));
    std::lock_guard lock(mu);
    return memo.emplace(std::make_pair(n, d), std::move(geos)).first->second;
}

/// Σ_g Vol(P^g_{α,β,γ}) with per-labeling detail; d must be the quantum degree.
inline DensityValue volume_sum(const RatVec& alpha, const RatVec& beta, const RatVec& gamma, int threads = 1) {
    const int n = static_cast<int>(alpha.size());
    DensityValue out;
    auto d = quantum_degree(alpha, beta, gamma);
    if (!d) throw std::invalid_argument("sum(alpha)+sum(beta)-sum(gamma) must be a nonnegative integer");
    out.d = *d;
    if (*d > n) return out;
    Hexagon hex(n, *d);
    const auto& geos = cached_geometries(n, *d);
    auto bv = boundary_values(hex, alpha, beta, gamma);
    std::vector<LabelingContribution> parts(geos.size());
    std::vector<char> wall(geos.size(), 0);
    parallel_chunks(geos.size(), threads, [&](std::size_t k) {
        auto P = build_polytope(geos[k], boundary_vector_for(geos[k], bv));
        auto v = volume_exact(P);
        wall[k] = has_tight_constant_row(P);
        parts[k] = {geos[k].g.key(), v.exact, v.status};
    });
    out.on_wall = std::find(wall.begin(), wall.end(), 1) != wall.end();
    for (auto& p : parts) {
        out.volume_sum += p.volume;
        out.breakdown.push_back(std::move(p));
    }
    return out;
}

/// (2π)^D sf(n-1) Δ(γ) / (n! Δ(α) Δ(β)) in the sine-product convention.
inline double density_prefactor(const std::vector<double>& alpha, const std::vector<double>& beta,
                                const std::vector<double>& gamma) {
    const int n = static_cast<int>(alpha.size());
    const int D = (n - 1) * (n - 2) / 2;
    return std::pow(2 * std::numbers::pi, D) * superfactorial(n - 1).convert_to<double>() * sine_vandermonde(gamma) /
           (std::tgamma(n + 1.0) * sine_vandermonde(alpha) * sine_vandermonde(beta));
}

inline DensityValue density_main(const RatVec& gamma, const RatVec& alpha, const RatVec& beta, int threads = 1) {
    const int n = static_cast<int>(alpha.size());
    if (static_cast<int>(beta.size()) != n || static_cast<int>(gamma.size()) != n)
        throw std::invalid_argument("alpha, beta, gamma must have the same length");
    if (n < 3) throw std::invalid_argument("density_main needs n >= 3");
    require_regular_q(alpha, "alpha");
    require_regular_q(beta, "beta");
    require_regular_q(gamma, "gamma");
    DensityValue out = volume_sum(alpha, beta, gamma, threads);
    out.angle_prefactor = density_prefactor(to_doubles(alpha), to_doubles(beta), to_doubles(gamma));
    out.prefactor = out.angle_prefactor * angle_to_chamber(n);
    out.value = out.prefactor * to_double(out.volume_sum);
    if (out.value < 0) throw std::logic_error("negative density");
    return out;
}

/// Completes (γ_1..γ_{n-1}) with γ_n ≡ Σα + Σβ - Σ_{i<n} γ_i (mod 1), in [0,1).
inline RatVec complete_gamma(const RatVec& head, const RatVec& alpha, const RatVec& beta) {
    Rational last = sum_of(alpha) + sum_of(beta) - sum_of(head);
    BigInt fl = numerator_of(last) / denominator_of(last);
    if (Rational(fl) > last) fl -= 1;
    last -= Rational(fl);
    RatVec g = head;
    g.push_back(last);
    return g;
}

inline bool strictly_decreasing(const RatVec& v) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (!(v[i] > v[i + 1])) return false;
    return true;
}

/// Density at cell point (γ_1, γ_2) for n = 3; zero outside the sorted chamber.
inline double density_at_slice_point(const Rational& g1, const Rational& g2, const RatVec& alpha, const RatVec& beta) {
    RatVec g = complete_gamma({g1, g2}, alpha, beta);
    if (!strictly_decreasing(g) || g[0] >= 1 || g[2] < 0) return 0.0;
    return density_main(g, alpha, beta).value;
}

struct GridIntegral {
    double integral = 0.0;
    int cells = 0;
    int positive_cells = 0;
};

/// Midpoint rule over an m x m grid of (γ_1, γ_2) ∈ [0,1)^2, n = 3.
inline GridIntegral density_grid_integral(const RatVec& alpha, const RatVec& beta, int m,
                                          const std::function<void(int, int, double)>& each = {}) {
    if (alpha.size() != 3) throw std::invalid_argument("grid integration is implemented for n = 3");
    GridIntegral out;
    out.cells = m * m;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Rational g1(2 * i + 1, 2 * m), g2(2 * j + 1, 2 * m);
            double v = g1 > g2 ? density_at_slice_point(g1, g2, alpha, beta) : 0.0;
            if (each) each(i, j, v);
            out.integral += v / (static_cast<double>(m) * m);
            out.positive_cells += v > 0;
        }
    return out;
}

// ---- volume of the moduli space -------------------------------------------------

struct ModuliVolume {
    double value = 0.0;              ///< with the center factor 2^{(n+1) mod 2}
    double value_center_n = 0.0;     ///< with #Z(SU_n) = n instead
    Rational volume_sum = 0;
    int d = -1;
    RatVec gamma_reflected;
};

/**
 * 2^{(n+1) mod 2} (2π)^{(n-1)(n-2)} / (n! Δ(γ) Δ(α) Δ(β)) Σ_g Vol(P^g_{α,β,γ~}),
 * γ~ = (1-γ_n, ..., 1-γ_1). Zero unless Σα + Σβ + Σγ = n + d with d >= 0.
 */
inline ModuliVolume moduli_volume(const RatVec& alpha, const RatVec& beta, const RatVec& gamma) {
    const int n = static_cast<int>(alpha.size());
    if (static_cast<int>(beta.size()) != n || static_cast<int>(gamma.size()) != n)
        throw std::invalid_argument("alpha, beta, gamma must have the same length");
    require_regular_q(alpha, "alpha");
    require_regular_q(beta, "beta");
    require_regular_q(gamma, "gamma");
    ModuliVolume out;
    for (const auto* v : {&alpha, &beta, &gamma})
        if (denominator_of(sum_of(*v)) != 1) return out;
    Rational total = sum_of(alpha) + sum_of(beta) + sum_of(gamma) - n;
    if (total < 0 || denominator_of(total) != 1) return out;
    if (gamma.back() == 0) throw std::invalid_argument("gamma_n must be positive so that 1 - gamma_n < 1");
    RatVec gt(n);
    for (int i = 0; i < n; ++i) gt[i] = 1 - gamma[n - 1 - i];
    out.gamma_reflected = gt;
    auto vs = volume_sum(alpha, beta, gt);
    out.d = vs.d;
    out.volume_sum = vs.volume_sum;
    auto a = to_doubles(alpha), b = to_doubles(beta), c = to_doubles(gamma);
    double base = std::pow(2 * std::numbers::pi, (n - 1) * (n - 2)) /
                  (std::tgamma(n + 1.0) * sine_vandermonde(c) * sine_vandermonde(a) * sine_vandermonde(b)) *
                  to_double(vs.volume_sum);
    out.value = ((n + 1) % 2 == 1 ? 2.0 : 1.0) * base;
    out.value_center_n = n * base;
    return out;
}

}  // namespace qhive
