/**
 * @file crosscheck.hpp
 * End-to-end checks tying the modules together: hive counts against the
 * determinantal formula and LR tableaux, scaled coefficients against polytope
 * volumes, the two density pipelines against each other and against random
 * matrices, and the structural invariants of labelings and hives.
 */
#pragma once

#include "qhive/density.hpp"
#include "qhive/hive_count.hpp"
#include "qhive/lr_rule.hpp"
#include "qhive/rmt.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qhive {

using Progress = std::function<void(const std::string&)>;

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

inline std::string fmt_real(double x, int digits = 6) {
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

// ---- 1: hive counts, determinantal sums, LR tableaux ---------------------------------

struct OracleInstance {
    Partition lambda, mu, nu;
    int d = 0, N = 0;
    std::uint64_t hives = 0;
    long long det = 0;
    double residual = 0.0;
    std::optional<std::uint64_t> lr;
    bool ok = false;
    std::string error;
};

struct OracleReport {
    std::vector<OracleInstance> instances;
    int failures = 0;
    double max_residual = 0.0;
    std::uint64_t nonzero = 0;
};

/// Every (λ, μ, ν) in the n x (N-n) frame with |λ| + |μ| = |ν| + N d.
inline OracleReport oracle_suite(int n, const std::vector<int>& Ns, const std::vector<int>& ds, int threads = 1,
                                 const Progress& progress = {}) {
    OracleReport rep;
    for (int N : Ns) {
        auto parts = partitions_in_frame(n, N);
        for (int d : ds) {
            if (progress) progress("oracle: N=" + std::to_string(N) + " d=" + std::to_string(d));
            for (const auto& l : parts)
                for (const auto& m : parts)
                    for (const auto& v : parts) {
                        if (l.weight() + m.weight() != v.weight() + N * d) continue;
                        OracleInstance in{l, m, v, d, N};
                        try {
                            in.hives = count_dual_hives(l, m, v, d, N);
                            auto q = qlr_coefficient(l, m, v, d, N, threads);
                            in.det = q.value;
                            in.residual = q.residual;
                            in.ok = static_cast<long long>(in.hives) == in.det;
                            if (d == 0) {
                                in.lr = lr_coefficient(l, m, v);
                                in.ok = in.ok && *in.lr == in.hives;
                            }
                        } catch (const std::exception& e) {
                            in.error = e.what();
                            in.ok = false;
                        }
                        rep.max_residual = std::max(rep.max_residual, in.residual);
                        rep.failures += !in.ok;
                        rep.nonzero += in.hives > 0;
                        rep.instances.push_back(std::move(in));
                    }
        }
    }
    return rep;
}

inline CriterionResult criterion_oracle(const OracleReport& rep) {
    CriterionResult r{1, "oracle equivalence (n=3, N in {6,7,8}, d in {0,1,2})"};
    r.pass = rep.failures == 0 && rep.max_residual < kQlrResidualLimit && !rep.instances.empty();
    r.detail = std::to_string(rep.instances.size()) + " instances (" + std::to_string(rep.nonzero) +
               " nonzero), failures " + std::to_string(rep.failures) + ", max residual " +
               fmt_real(rep.max_residual, 3);
    return r;
}

// ---- 2: scaled coefficients versus Σ Vol -----------------------------------------

inline constexpr double kScalingGapLimit = 0.1;

struct ScalingPoint {
    int N = 0;
    long long c = 0;
    double scaled = 0.0;
    double gap = 0.0;  ///< (c/N - ΣVol) / ΣVol
};

struct ScalingReport {
    RatVec alpha, beta, gamma;
    int q = 0, d = 0;
    Rational volume_sum = 0;
    bool on_wall = false;
    std::vector<ScalingPoint> points;
};

inline Partition scaled_partition(const RatVec& theta, int N) {
    Partition p;
    for (const auto& x : theta) {
        Rational y = x * N;
        if (denominator_of(y) != 1) throw std::invalid_argument("N * theta is not integral");
        p.parts.push_back(static_cast<int>(numerator_of(y).convert_to<long>()));
    }
    return p;
}

/// c^{Nγ, d}_{Nα, Nβ} / N^D at N = q m for each multiplier m (n = 3, so D = 1).
inline ScalingReport scaling_run(const RatVec& alpha, const RatVec& beta, const RatVec& gamma, int q,
                                 const std::vector<int>& multipliers, int threads = 1, const Progress& progress = {}) {
    if (alpha.size() != 3) throw std::invalid_argument("scaling check is implemented for n = 3");
    ScalingReport rep{alpha, beta, gamma, q};
    auto vs = volume_sum(alpha, beta, gamma, threads);
    rep.d = vs.d;
    rep.volume_sum = vs.volume_sum;
    rep.on_wall = vs.on_wall;
    const double v = to_double(vs.volume_sum);
    for (int m : multipliers) {
        const int N = q * m;
        if (progress) progress("scaling: N=" + std::to_string(N));
        auto res = qlr_coefficient(scaled_partition(alpha, N), scaled_partition(beta, N), scaled_partition(gamma, N),
                                   vs.d, N, threads);
        ScalingPoint p{N, res.value, static_cast<double>(res.value) / N};
        p.gap = v > 0 ? (p.scaled - v) / v : std::numeric_limits<double>::infinity();
        rep.points.push_back(p);
    }
    return rep;
}

/// |gap| below the limit at the last point and strictly decreasing unless already zero.
inline bool scaling_converges(const ScalingReport& rep) {
    if (rep.points.empty() || rep.volume_sum <= 0 || rep.on_wall) return false;
    for (std::size_t k = 1; k < rep.points.size(); ++k) {
        double a = std::abs(rep.points[k - 1].gap), b = std::abs(rep.points[k].gap);
        if (!(b < a || (a == 0 && b == 0))) return false;
    }
    return std::abs(rep.points.back().gap) < kScalingGapLimit;
}

inline std::string scaling_summary(const ScalingReport& rep) {
    std::ostringstream os;
    os << "sum vol " << rep.volume_sum << ", gaps";
    for (const auto& p : rep.points) os << ' ' << fmt_real(p.gap, 4) << "@N=" << p.N;
    if (rep.on_wall) os << " (on a wall)";
    return os.str();
}

inline CriterionResult criterion_scaling(const ScalingReport& main, const std::optional<ScalingReport>& reference) {
    CriterionResult r{2, "scaling limit c/N -> sum of volumes (n=3)"};
    r.pass = scaling_converges(main);
    r.detail = scaling_summary(main);
    if (reference) r.detail += "; witness triple: " + scaling_summary(*reference);
    return r;
}

// ---- 3: polytope density against the character series and J ------------------------------

inline constexpr double kDensityRelTol = 1e-2;
inline constexpr double kImagTol = 1e-8;

struct DensityCheck {
    RatVec alpha, beta, gamma;
    double main = 0.0, series = 0.0, series_imag = 0.0, series_last = 0.0;
    double from_j = 0.0, j_imag = 0.0;
    double rel_series = 0.0, rel_j = 0.0;
    bool on_wall = false;
    bool ok = false;
};

inline DensityCheck density_check(const RatVec& alpha, const RatVec& beta, const RatVec& gamma, int truncation,
                                  int I_max, int threads = 1) {
    DensityCheck c{alpha, beta, gamma};
    auto dm = density_main(gamma, alpha, beta, threads);
    c.main = dm.value;
    c.on_wall = dm.on_wall;
    auto a = to_doubles(alpha), b = to_doubles(beta), g = to_doubles(gamma);
    auto s = density_series(g, a, b, truncation);
    c.series = s.value;
    c.series_imag = s.imag;
    c.series_last = s.last_shell;
    auto j = j_volume(a, b, g, I_max, threads);
    c.from_j = dm.prefactor * j.value;
    c.j_imag = dm.prefactor * j.imag;
    c.rel_series = std::abs(c.main - c.series) / std::max(std::abs(c.main), 1e-300);
    c.rel_j = std::abs(c.main - c.from_j) / std::max(std::abs(c.main), 1e-300);
    c.ok = c.main > 0 && c.rel_series < kDensityRelTol && c.rel_j < kDensityRelTol &&
           std::abs(c.series_imag) < kImagTol && std::abs(c.j_imag) < kImagTol;
    return c;
}

inline CriterionResult criterion_density(const std::vector<DensityCheck>& checks) {
    CriterionResult r{3, "density: polytope vs character series (T=60) and J (I_max=200)"};
    double worst_s = 0, worst_j = 0, worst_im = 0;
    int bad = 0;
    for (const auto& c : checks) {
        worst_s = std::max(worst_s, c.rel_series);
        worst_j = std::max(worst_j, c.rel_j);
        worst_im = std::max({worst_im, std::abs(c.series_imag), std::abs(c.j_imag)});
        bad += !c.ok;
    }
    r.pass = bad == 0 && checks.size() >= 5;
    r.detail = std::to_string(checks.size()) + " triples, max rel diff series " + fmt_real(worst_s, 3) + ", J " +
               fmt_real(worst_j, 3) + ", max |imag| " + fmt_real(worst_im, 3);
    return r;
}

// ---- 4: random matrices ----------------------------------------------------------

inline constexpr double kSupSigmaLimit = 4.0;

/// Density on the (γ_1, γ_2) cell grid for n = 3; points are snapped to a fine rational lattice.
inline std::function<double(double, double)> slice_density(const RatVec& alpha, const RatVec& beta) {
    return [alpha, beta](double x, double y) {
        constexpr long long kScale = 1 << 20;
        Rational g1(std::llround(x * kScale), kScale), g2(std::llround(y * kScale), kScale);
        if (!(g1 > g2) || g1 >= 1) return 0.0;
        return density_at_slice_point(g1, g2, alpha, beta);
    };
}

inline ComparisonReport rmt_run(const RatVec& alpha, const RatVec& beta, std::size_t samples, std::uint64_t seed,
                                int grid, int sub, int threads = 1, const Progress& progress = {}) {
    if (progress) progress("rmt: sampling " + std::to_string(samples));
    auto run = sample_spectrum(to_doubles(alpha), to_doubles(beta), samples, seed, threads);
    if (progress) progress("rmt: integrating density on " + std::to_string(grid) + "x" + std::to_string(grid));
    return compare(run.samples, slice_density(alpha, beta), grid, sub);
}

inline CriterionResult criterion_rmt(const ComparisonReport& rep) {
    CriterionResult r{4, "random matrices vs density (n=3, 40x40 cells)"};
    r.pass = rep.sup_discrepancy < kSupSigmaLimit && rep.outside_support == 0;
    r.detail = std::to_string(rep.samples) + " samples, sup " + fmt_real(rep.sup_discrepancy, 4) + " sigma, chi2 " +
               fmt_real(rep.chi2, 5) + " on " + std::to_string(rep.chi2_cells) + " cells, predicted mass " +
               fmt_real(rep.predicted_total, 5) + ", boundary leakage " + std::to_string(rep.leakage_samples) +
               ", outside support " + std::to_string(rep.outside_support);
    return r;
}

// ---- 5: structural invariants ---------------------------------------------------------

struct LabelingInvariants {
    int n = 0, d = 0;
    std::size_t count = 0;
    int support_bad = 0, roundtrip_bad = 0, m_count_bad = 0, three_count_bad = 0;
    bool ok() const { return count > 0 && support_bad + roundtrip_bad + m_count_bad + three_count_bad == 0; }
};

inline LabelingInvariants labeling_invariants(int n, int d) {
    LabelingInvariants r{n, d};
    Hexagon hex(n, d);
    const auto& gs = cached_regular_labelings(n, d);
    r.count = gs.size();
    const int want_supp = (n - 1) * (n - 2) / 2 + 3 * n;
    for (const auto& g : gs) {
        if (static_cast<int>(support(hex, g).size()) != want_supp) ++r.support_bad;
        auto C = color_map_of(hex, g);
        try {
            if (labeling_of(hex, C).values != g.values) ++r.roundtrip_bad;
        } catch (const std::exception&) {
            ++r.roundtrip_bad;
        }
        int m = 0, three = 0;
        for (Color c : C) {
            m += c == Color::M;
            three += c == Color::Three;
        }
        if (m != d * (n - d)) ++r.m_count_bad;
        if (three != d * (n - d)) ++r.three_count_bad;
    }
    return r;
}

/**
 * L(e) > L(e') for same-type edges with e_ℓ > e'_ℓ and e_{ℓ+1} <= e'_{ℓ+1}
 * (L(e) >= L(e') when strict is false). The strict form fails on valid hives
 * where a lozenge with middle edge m joins e and e': the equality rule wins there.
 */
inline bool strictly_monotone(const TriGrid& T, const DualHive& h, bool strict = true) {
    const auto& E = T.edges();
    for (std::size_t a = 0; a < E.size(); ++a)
        for (std::size_t b = 0; b < E.size(); ++b) {
            if (a == b || E[a].type != E[b].type) continue;
            const int l = E[a].type, l1 = mod3(l + 1);
            auto ca = T.coords(E[a]), cb = T.coords(E[b]);
            if (ca[l] > cb[l] && ca[l1] <= cb[l1] && (strict ? h.L[a] <= h.L[b] : h.L[a] < h.L[b])) return false;
        }
    return true;
}

struct HiveMonotonicity {
    std::uint64_t hives = 0;
    std::uint64_t violations = 0;       ///< strict form
    std::uint64_t weak_violations = 0;  ///< L(e) < L(e')
};

inline HiveMonotonicity hive_monotonicity(int n, int maxN, const Progress& progress = {}) {
    HiveMonotonicity r;
    for (int N = n + 1; N <= maxN; ++N) {
        if (progress) progress("monotonicity: N=" + std::to_string(N));
        auto parts = partitions_in_frame(n, N);
        for (int d = 0; d <= std::min(n, N - n); ++d)
            for (const auto& l : parts)
                for (const auto& m : parts)
                    for (const auto& v : parts) {
                        if (l.weight() + m.weight() != v.weight() + N * d) continue;
                        auto b = qlr_boundary(l, m, v, d, N);
                        TriGrid T(b.k);
                        for_each_dual_hive(b, [&](const DualHive& h) {
                            ++r.hives;
                            r.violations += !strictly_monotone(T, h);
                            r.weak_violations += !strictly_monotone(T, h, false);
                            return true;
                        });
                    }
    }
    return r;
}

struct InvariantReport {
    std::vector<LabelingInvariants> labelings;
    int triangle_bad = 0;
    int triangle_max_N = 0;
    HiveMonotonicity monotone;
};

inline InvariantReport invariant_suite(const Progress& progress = {}) {
    InvariantReport rep;
    for (auto [n, d] : std::vector<std::pair<int, int>>{{3, 0}, {3, 1}, {3, 2}, {4, 1}, {4, 2}, {5, 1}}) {
        if (progress) progress("labelings: n=" + std::to_string(n) + " d=" + std::to_string(d));
        rep.labelings.push_back(labeling_invariants(n, d));
    }
    rep.triangle_max_N = 12;
    for (int N = 1; N <= rep.triangle_max_N; ++N) {
        TriGrid T(N);
        for (const auto& f : T.faces()) rep.triangle_bad += !T.triangle_sum_holds(f);
    }
    rep.monotone = hive_monotonicity(3, 7, progress);
    return rep;
}

inline CriterionResult criterion_invariants(const InvariantReport& rep) {
    CriterionResult r{5, "labeling and hive invariants"};
    bool ok = rep.triangle_bad == 0 && rep.monotone.violations == 0 && rep.monotone.hives > 0;
    std::ostringstream os;
    os << "labelings";
    for (const auto& l : rep.labelings) {
        ok = ok && l.ok();
        os << " (" << l.n << ',' << l.d << "):" << l.count << (l.ok() ? "" : "!");
    }
    os << "; triangle sums N<=" << rep.triangle_max_N << " bad " << rep.triangle_bad << "; " << rep.monotone.hives
       << " hives, strict monotonicity violations " << rep.monotone.violations << " (weak form: "
       << rep.monotone.weak_violations << ")";
    r.pass = ok;
    r.detail = os.str();
    return r;
}

// ---- 6: witness ------------------------------------------------------------------

struct WitnessData {
    int n = 3, d = 1;
    std::string labeling = "120000121210";
    RatVec alpha = parse_rational_list("13/23,6/23,2/23");
    RatVec beta = parse_rational_list("18/23,10/23,5/23");
    RatVec gamma = parse_rational_list("20/23,9/23,2/23");
    /// Row-major over the hexagon vertices.
    RatVec values = parse_rational_list("52/23,43/23,1,54/23,50/23,38/23,18/23,52/23,44/23,28/23,46/23,33/23");
};

struct WitnessReport {
    bool member = false;
    int free_dimension = 0;
    Vertex free_vertex{};
    Rational free_value = 0;
    int reproduced = 0, total = 0;
};

inline WitnessReport witness_check(const WitnessData& w = {}) {
    WitnessReport r;
    Hexagon hex(w.n, w.d);
    auto g = labeling_from_key(w.n, w.d, w.labeling);
    r.total = static_cast<int>(w.values.size());
    if (w.values.size() != hex.vertices().size()) return r;
    r.member = is_member(hex, g, w.values, w.alpha, w.beta, w.gamma);
    auto geo = labeling_geometry(hex, g);
    r.free_dimension = geo.D;
    if (geo.D != 1) return r;
    r.free_vertex = hex.vertices()[geo.free_vertices[0]];
    r.free_value = w.values[geo.free_vertices[0]];
    auto f = chart_evaluate(geo, boundary_vector_for(geo, boundary_values(hex, w.alpha, w.beta, w.gamma)),
                            {r.free_value});
    for (std::size_t v = 0; v < f.size(); ++v) r.reproduced += f[v] == w.values[v];
    return r;
}

inline CriterionResult criterion_witness(const WitnessReport& rep) {
    CriterionResult r{6, "witness function: membership and chart reproduction"};
    r.pass = rep.member && rep.free_dimension == 1 && rep.reproduced == rep.total && rep.total == 12;
    std::ostringstream os;
    os << "member " << (rep.member ? "yes" : "no") << ", free vertex (" << rep.free_vertex.r << ','
       << rep.free_vertex.s << ") = " << rep.free_value << ", reproduced " << rep.reproduced << '/' << rep.total;
    r.detail = os.str();
    return r;
}

// ---- 7: normalization --------------------------------------------------------------------

inline constexpr double kNormalizationTol = 0.05;

inline CriterionResult criterion_normalization(const GridIntegral& gi) {
    CriterionResult r{7, "normalization: grid integral of the density (100x100)"};
    r.pass = std::abs(gi.integral - 1.0) < kNormalizationTol;
    r.detail = "integral " + fmt_real(gi.integral, 6) + " over " + std::to_string(gi.positive_cells) + " positive of " +
               std::to_string(gi.cells) + " cells";
    return r;
}

// ---- default instances -------------------------------------------------------------

struct TripleQ {
    RatVec alpha, beta, gamma;
};

/// Off-wall triple with denominator 23 sharing the witness classes α, β.
inline TripleQ scaling_triple() {
    return {parse_rational_list("13/23,6/23,2/23"), parse_rational_list("18/23,10/23,5/23"),
            parse_rational_list("19/23,11/23,1/23")};
}

inline std::vector<TripleQ> density_triples() {
    return {
        {parse_rational_list("13/23,6/23,2/23"), parse_rational_list("18/23,10/23,5/23"),
         parse_rational_list("20/23,9/23,2/23")},
        {parse_rational_list("13/23,6/23,2/23"), parse_rational_list("18/23,10/23,5/23"),
         parse_rational_list("37/46,19/46,3/23")},
        {parse_rational_list("7/10,2/5,1/10"), parse_rational_list("3/4,1/2,1/8"),
         parse_rational_list("37/40,11/20,1/10")},
        {parse_rational_list("7/10,2/5,1/10"), parse_rational_list("3/4,1/2,1/8"),
         parse_rational_list("153/185,87/205,3927/12136")},
        {parse_rational_list("5/7,3/7,1/7"), parse_rational_list("6/11,4/11,1/11"),
         parse_rational_list("269/370,87/205,14261/106190")},
    };
}

}  // namespace qhive
