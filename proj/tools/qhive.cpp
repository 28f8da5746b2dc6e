// qhive: command-line front end for the qhive library.

#include "qhive/crosscheck.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace qhive;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";

enum Exit { kOk = 0, kUsage = 1, kValidation = 2 };

struct Globals {
    std::string output;
    std::string format = "json";
    int threads = 1;
    std::uint64_t seed = 1;
    bool quiet = false;
};

std::string real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

Json rat(const Rational& r) {
    auto num = numerator_of(r), den = denominator_of(r);
    Json j;
    if (num >= std::numeric_limits<long long>::min() && num <= std::numeric_limits<long long>::max() &&
        den <= std::numeric_limits<long long>::max()) {
        j["num"] = num.convert_to<long long>();
        j["den"] = den.convert_to<long long>();
    } else {
        j["num"] = num.str();
        j["den"] = den.str();
    }
    return j;
}

Json rats(const RatVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(rat(x));
    return a;
}

Json parts(const Partition& p) { return Json(p.parts); }

Json criterion_json(const CriterionResult& c) {
    return {{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"detail", c.detail}};
}

std::string csv_cell(const Json& v) {
    if (v.is_string()) {
        auto s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + '"';
    }
    if (v.is_object() && v.contains("num") && v.contains("den") && v.size() == 2)
        return csv_cell(v["num"]) + "/" + csv_cell(v["den"]);
    if (v.is_structured()) return csv_cell(Json(v.dump()));
    return v.dump();
}

/// CSV view: the "rows" array when present, otherwise one key,value line per top-level field.
std::string to_csv(const Json& j) {
    std::ostringstream os;
    if (j.contains("rows") && j["rows"].is_array() && !j["rows"].empty()) {
        const auto& rows = j["rows"];
        std::vector<std::string> cols;
        for (auto it = rows[0].begin(); it != rows[0].end(); ++it) cols.push_back(it.key());
        for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
        os << '\n';
        for (const auto& r : rows) {
            for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << (r.contains(cols[c]) ? csv_cell(r[cols[c]]) : "");
            os << '\n';
        }
        return os.str();
    }
    os << "key,value\n";
    for (auto it = j.begin(); it != j.end(); ++it) os << it.key() << ',' << csv_cell(it.value()) << '\n';
    return os.str();
}

void emit(const Globals& g, const Json& j) {
    const std::string text = g.format == "csv" ? to_csv(j) : j.dump(2) + "\n";
    if (g.output.empty() || g.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(g.output, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + g.output);
    f << text;
}

Progress progress_for(const Globals& g) {
    if (g.quiet) return {};
    return [](const std::string& msg) { std::cerr << "[qhive] " << msg << std::endl; };
}

RatVec classes(const std::string& s, const char* name) {
    if (s.empty()) throw std::invalid_argument(std::string("--") + name + " is required");
    auto v = parse_rational_list(s);
    if (v.empty()) throw std::invalid_argument(std::string("--") + name + " is empty");
    return v;
}

void check_n(int n, const RatVec& v, const char* name) {
    if (n > 0 && static_cast<int>(v.size()) != n)
        throw std::invalid_argument(std::string("--") + name + " must have n = " + std::to_string(n) + " entries");
}

// ---- qlr / hives -------------------------------------------------------------------

struct QlrArgs {
    int n = 0, N = 0, d = 0;
    std::string lambda, mu, nu, method = "both", check;
    bool emit_witness = false;
    int limit = 10;
};

void partitions_of(const QlrArgs& a, Partition& l, Partition& m, Partition& v) {
    l = parse_partition(a.lambda);
    m = parse_partition(a.mu);
    v = parse_partition(a.nu);
    const int n = a.n > 0 ? a.n : l.length();
    for (const auto* p : {&l, &m, &v})
        if (p->length() != n) throw std::invalid_argument("--lambda, --mu, --nu must have n parts");
    if (a.N <= n) throw std::invalid_argument("--N must exceed n");
    for (const auto* p : {&l, &m, &v})
        if (!p->fits(a.N)) throw std::invalid_argument("partitions must be decreasing and fit the n x (N-n) frame");
    if (l.weight() + m.weight() != v.weight() + a.N * a.d)
        throw std::invalid_argument("|lambda| + |mu| must equal |nu| + N d");
}

Json hive_json(const TriGrid& T, const DualHive& h) {
    Json colors = Json::object(), labels = Json::object();
    for (int e = 0; e < static_cast<int>(T.edges().size()); ++e) {
        colors[edge_name(T, e)] = std::string(1, color_symbol(h.C[e]));
        labels[edge_name(T, e)] = h.L[e];
    }
    return {{"colors", colors}, {"labels", labels}};
}

DualHive hive_from_json(const TriGrid& T, const Json& j) {
    DualHive h;
    const int E = static_cast<int>(T.edges().size());
    h.C.assign(E, Color::Zero);
    h.L.assign(E, -1);
    for (int e = 0; e < E; ++e) {
        const auto name = edge_name(T, e);
        if (!j.at("colors").contains(name) || !j.at("labels").contains(name))
            throw std::invalid_argument("hive file misses edge " + name);
        auto sym = j["colors"][name].get<std::string>();
        if (sym.size() != 1) throw std::invalid_argument("bad color symbol on edge " + name);
        h.C[e] = color_from_symbol(sym[0]);
        h.L[e] = j["labels"][name].get<int>();
    }
    return h;
}

int cmd_qlr(const Globals& g, const QlrArgs& a) {
    Partition l, m, v;
    partitions_of(a, l, m, v);
    if (a.method != "hive" && a.method != "det" && a.method != "both")
        throw std::invalid_argument("--method must be hive, det or both");
    Json out{{"lambda", parts(l)}, {"mu", parts(m)}, {"nu", parts(v)}, {"d", a.d}, {"N", a.N}};
    std::optional<std::uint64_t> hives;
    std::optional<long long> det;
    if (a.method != "det") {
        auto b = qlr_boundary(l, m, v, a.d, a.N);
        hives = count_dual_hives(b);
        out["hive_count"] = *hives;
        if (a.emit_witness) {
            TriGrid T(b.k);
            Json w = nullptr;
            for_each_dual_hive(b, [&](const DualHive& h) {
                w = hive_json(T, h);
                return false;
            });
            out["witness"] = w;
        }
    }
    if (a.method != "hive") {
        auto q = qlr_coefficient(l, m, v, a.d, a.N, g.threads);
        det = q.value;
        out["det"] = {{"value", q.value}, {"residual", real(q.residual)}};
    }
    if (a.d == 0) out["lr"] = lr_coefficient(l, m, v);
    bool agree = true;
    if (hives && det) {
        agree = static_cast<long long>(*hives) == *det;
        out["agree"] = agree;
    }
    emit(g, out);
    return agree ? kOk : kValidation;
}

int cmd_hives(const Globals& g, const QlrArgs& a) {
    Partition l, m, v;
    partitions_of(a, l, m, v);
    auto b = qlr_boundary(l, m, v, a.d, a.N);
    TriGrid T(b.k);
    Json out{{"lambda", parts(l)}, {"mu", parts(m)}, {"nu", parts(v)}, {"d", a.d}, {"N", a.N}, {"k", b.k}};
    if (!a.check.empty()) {
        std::ifstream f(a.check);
        if (!f) throw std::invalid_argument("cannot read hive file " + a.check);
        auto rep = validate_dual_hive(hive_from_json(T, Json::parse(f)), b);
        out["valid"] = rep.ok;
        out["violations"] = rep.violations;
        emit(g, out);
        return rep.ok ? kOk : kValidation;
    }
    if (a.limit < 0) throw std::invalid_argument("--limit must be nonnegative");
    Json list = Json::array();
    std::uint64_t count = 0;
    for_each_dual_hive(b, [&](const DualHive& h) {
        if (static_cast<int>(list.size()) < a.limit) list.push_back(hive_json(T, h));
        ++count;
        return true;
    });
    out["count"] = count;
    out["hives"] = list;
    emit(g, out);
    return kOk;
}

// ---- labelings / polytope ------------------------------------------------------------

struct LabelingArgs {
    int n = 3, d = 0;
    bool details = false;
};

int cmd_labelings(const Globals& g, const LabelingArgs& a) {
    if (a.n < 2 || a.d < 0 || a.d > a.n) throw std::invalid_argument("need n >= 2 and 0 <= d <= n");
    Hexagon hex(a.n, a.d);
    const auto& gs = cached_regular_labelings(a.n, a.d);
    Json out{{"n", a.n}, {"d", a.d}, {"count", gs.size()}};
    Json keys = Json::array(), rows = Json::array();
    for (const auto& lab : gs) {
        keys.push_back(lab.key());
        Json r{{"key", lab.key()}};
        if (a.details) {
            r["rigid_lozenges"] = rigid_lozenges(hex, lab).size();
            r["support_size"] = support(hex, lab).size();
            std::string colors;
            for (Color c : color_map_of(hex, lab)) colors.push_back(color_symbol(c));
            r["colors"] = colors;
        }
        rows.push_back(r);
    }
    out["labelings"] = keys;
    if (a.details || g.format == "csv") out["rows"] = rows;
    emit(g, out);
    return kOk;
}

struct PolytopeArgs {
    int n = 0, d = -1;
    std::string alpha, beta, gamma, labeling, method = "exact";
    long long samples = 200000;
    bool vertices = false;
};

int cmd_polytope(const Globals& g, const PolytopeArgs& a) {
    auto alpha = classes(a.alpha, "alpha"), beta = classes(a.beta, "beta"), gamma = classes(a.gamma, "gamma");
    check_n(a.n, alpha, "alpha");
    const int n = static_cast<int>(alpha.size());
    check_n(n, beta, "beta");
    check_n(n, gamma, "gamma");
    auto d = quantum_degree(alpha, beta, gamma);
    if (!d) throw std::invalid_argument("sum(alpha)+sum(beta)-sum(gamma) must be a nonnegative integer");
    if (a.d >= 0 && a.d != *d) throw std::invalid_argument("--d does not match the degree of (alpha, beta, gamma)");
    if (*d > n) throw std::invalid_argument("degree exceeds n");
    if (a.method != "exact" && a.method != "mc") throw std::invalid_argument("--method must be exact or mc");
    Hexagon hex(n, *d);
    auto bv = boundary_values(hex, alpha, beta, gamma);
    std::vector<RegularLabeling> chosen;
    if (!a.labeling.empty()) chosen.push_back(labeling_from_key(n, *d, a.labeling));
    else chosen = cached_regular_labelings(n, *d);
    Json out{{"alpha", rats(alpha)}, {"beta", rats(beta)}, {"gamma", rats(gamma)}, {"n", n}, {"d", *d}};
    Json rows = Json::array();
    Rational total = 0;
    double total_mc = 0, var_mc = 0;
    for (const auto& lab : chosen) {
        auto geo = labeling_geometry(hex, lab);
        auto P = build_polytope(geo, boundary_vector_for(geo, bv));
        Json r{{"labeling", lab.key()}, {"dim", P.D}};
        if (a.method == "exact") {
            auto res = volume_exact(P);
            r["nonempty"] = res.status != BodyStatus::Empty;
            r["status"] = status_name(res.status);
            r["volume"] = rat(res.exact);
            total += res.exact;
            if (a.vertices) {
                Json vs = Json::array();
                for (const auto& x : res.vertices) vs.push_back(rats(x));
                r["vertices"] = vs;
            }
        } else {
            auto res = volume_mc(P, a.samples, g.seed);
            r["nonempty"] = res.status != BodyStatus::Empty;
            r["status"] = status_name(res.status);
            r["volume"] = {{"value", real(res.value)}, {"sigma", real(res.sigma)}};
            total_mc += res.value;
            var_mc += res.sigma * res.sigma;
        }
        r["on_wall"] = has_tight_constant_row(P);
        rows.push_back(r);
    }
    if (a.method == "exact") out["volume_sum"] = rat(total);
    else out["volume_sum"] = {{"value", real(total_mc)}, {"sigma", real(std::sqrt(var_mc))}};
    out["rows"] = rows;
    emit(g, out);
    return kOk;
}

// ---- density / moduli / jvol -----------------------------------------------------------

struct DensityArgs {
    std::string alpha, beta, gamma, method = "polytope";
    int truncation = 60;
    int grid = 0;
};

int cmd_density(const Globals& g, const DensityArgs& a) {
    auto alpha = classes(a.alpha, "alpha"), beta = classes(a.beta, "beta");
    check_n(static_cast<int>(alpha.size()), beta, "beta");
    if (a.grid > 0) {
        if (alpha.size() != 3) throw std::invalid_argument("--grid is implemented for n = 3");
        Json rows = Json::array();
        auto gi = density_grid_integral(alpha, beta, a.grid, [&](int i, int j, double v) {
            rows.push_back({{"gamma1", real((i + 0.5) / a.grid)}, {"gamma2", real((j + 0.5) / a.grid)}, {"density", real(v)}});
        });
        Json out{{"alpha", rats(alpha)}, {"beta", rats(beta)}, {"grid", a.grid}, {"integral", real(gi.integral)},
                 {"positive_cells", gi.positive_cells}, {"rows", rows}};
        Globals csv = g;
        csv.format = "csv";
        emit(csv, out);
        return kOk;
    }
    auto gamma = classes(a.gamma, "gamma");
    check_n(static_cast<int>(alpha.size()), gamma, "gamma");
    if (a.method != "polytope" && a.method != "series" && a.method != "both")
        throw std::invalid_argument("--method must be polytope, series or both");
    if (a.truncation < 1) throw std::invalid_argument("--truncation must be positive");
    Json out{{"alpha", rats(alpha)}, {"beta", rats(beta)}, {"gamma", rats(gamma)},
             {"measure", "Lebesgue in (gamma_1..gamma_{n-1}) on the sorted chamber, gamma_n fixed mod 1; "
                         "divide by n!(2pi)^(n-1) for the unordered angle form"}};
    std::optional<double> main, series;
    if (a.method != "series") {
        auto dm = density_main(gamma, alpha, beta, g.threads);
        main = dm.value;
        out["value"] = real(dm.value);
        out["prefactor"] = real(dm.prefactor);
        out["volume_sum"] = rat(dm.volume_sum);
        out["d"] = dm.d;
        out["on_wall"] = dm.on_wall;
        Json br = Json::array();
        for (const auto& c : dm.breakdown)
            if (c.status != BodyStatus::Empty)
                br.push_back({{"labeling", c.labeling}, {"volume", rat(c.volume)}, {"status", status_name(c.status)}});
        out["breakdown"] = br;
    }
    if (a.method != "polytope") {
        auto s = density_series(to_doubles(gamma), to_doubles(alpha), to_doubles(beta), a.truncation);
        series = s.value;
        out["series"] = {{"value", real(s.value)}, {"imag", real(s.imag)}, {"truncation", a.truncation},
                         {"last_shell", real(s.last_shell)}};
    }
    bool ok = true;
    if (main && series) {
        double rel = std::abs(*main - *series) / std::max(std::abs(*main), 1e-300);
        ok = rel < kDensityRelTol || (*main == 0 && std::abs(*series) < 1e-6);
        out["relative_difference"] = real(rel);
        out["agree"] = ok;
    }
    emit(g, out);
    return ok ? kOk : kValidation;
}

struct TripleArgs {
    std::string alpha, beta, gamma;
    int imax = 200;
};

int cmd_moduli(const Globals& g, const TripleArgs& a) {
    auto alpha = classes(a.alpha, "alpha"), beta = classes(a.beta, "beta"), gamma = classes(a.gamma, "gamma");
    check_n(static_cast<int>(alpha.size()), beta, "beta");
    check_n(static_cast<int>(alpha.size()), gamma, "gamma");
    auto mv = moduli_volume(alpha, beta, gamma);
    Json out{{"alpha", rats(alpha)}, {"beta", rats(beta)}, {"gamma", rats(gamma)}, {"value", real(mv.value)},
             {"value_center_n", real(mv.value_center_n)}, {"volume_sum", rat(mv.volume_sum)}, {"d", mv.d},
             {"gamma_reflected", rats(mv.gamma_reflected)}};
    emit(g, out);
    return kOk;
}

int cmd_jvol(const Globals& g, const TripleArgs& a) {
    auto alpha = classes(a.alpha, "alpha"), beta = classes(a.beta, "beta"), gamma = classes(a.gamma, "gamma");
    check_n(static_cast<int>(alpha.size()), beta, "beta");
    check_n(static_cast<int>(alpha.size()), gamma, "gamma");
    if (a.imax < 1) throw std::invalid_argument("--imax must be positive");
    auto j = j_volume(to_doubles(alpha), to_doubles(beta), to_doubles(gamma), a.imax, g.threads);
    Json out{{"alpha", rats(alpha)}, {"beta", rats(beta)}, {"gamma", rats(gamma)}, {"imax", a.imax},
             {"value", real(j.value)}, {"imag", real(j.imag)}, {"tail_bound", real(j.tail_bound)},
             {"tail_rigorous", j.tail_rigorous}, {"terms", j.terms}};
    emit(g, out);
    return kOk;
}

// ---- validate / crosscheck -------------------------------------------------------------

struct ValidateArgs {
    std::string alpha = "13/23,6/23,2/23", beta = "18/23,10/23,5/23", csv;
    long long samples = 1000000;
    int grid = 40, sub = 5;
};

Json comparison_json(const ComparisonReport& rep) {
    return {{"samples", rep.samples},
            {"grid", rep.grid},
            {"sup_sigma", real(rep.sup_discrepancy)},
            {"sup_cell", rep.sup_cell < 0 ? Json(nullptr) : Json::array({rep.sup_cell / rep.grid, rep.sup_cell % rep.grid})},
            {"chi2", real(rep.chi2)},
            {"chi2_cells", rep.chi2_cells},
            {"predicted_mass", real(rep.predicted_total)},
            {"zero_cell_samples", rep.zero_cell_samples},
            {"boundary_leakage", rep.leakage_samples},
            {"outside_support", rep.outside_support}};
}

int cmd_validate(const Globals& g, const ValidateArgs& a) {
    auto alpha = classes(a.alpha, "alpha"), beta = classes(a.beta, "beta");
    if (alpha.size() != 3 || beta.size() != 3) throw std::invalid_argument("validate is implemented for n = 3");
    if (a.samples < 1 || a.grid < 1 || a.sub < 1) throw std::invalid_argument("--samples, --grid, --sub must be positive");
    auto rep = rmt_run(alpha, beta, static_cast<std::size_t>(a.samples), g.seed, a.grid, a.sub, g.threads,
                       progress_for(g));
    auto crit = criterion_rmt(rep);
    Json out{{"alpha", rats(alpha)}, {"beta", rats(beta)}, {"seed", g.seed}};
    Json cmp = comparison_json(rep);
    for (auto& [k, v] : cmp.items()) out[k] = v;
    out["pass"] = crit.pass;
    if (!a.csv.empty()) {
        std::ofstream f(a.csv, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + a.csv);
        f << "i,j,gamma1_lo,gamma2_lo,empirical,predicted\n";
        for (int i = 0; i < rep.grid; ++i)
            for (int j = 0; j < rep.grid; ++j)
                f << i << ',' << j << ',' << real(static_cast<double>(i) / rep.grid) << ','
                  << real(static_cast<double>(j) / rep.grid) << ',' << real(rep.empirical[i * rep.grid + j]) << ','
                  << real(rep.predicted[i * rep.grid + j]) << '\n';
    }
    emit(g, out);
    return crit.pass ? kOk : kValidation;
}

struct CrosscheckArgs {
    std::string suite = "small";
    long long samples = 1000000;
};

Json triple_json(const RatVec& a, const RatVec& b, const RatVec& c) {
    return {{"alpha", rats(a)}, {"beta", rats(b)}, {"gamma", rats(c)}};
}

Json scaling_json(const ScalingReport& rep) {
    Json pts = Json::array();
    for (const auto& p : rep.points)
        pts.push_back({{"N", p.N}, {"c", p.c}, {"scaled", real(p.scaled)}, {"relative_gap", real(p.gap)}});
    Json j = triple_json(rep.alpha, rep.beta, rep.gamma);
    j["q"] = rep.q;
    j["d"] = rep.d;
    j["volume_sum"] = rat(rep.volume_sum);
    j["on_wall"] = rep.on_wall;
    j["points"] = pts;
    return j;
}

int cmd_crosscheck(const Globals& g, const CrosscheckArgs& a) {
    auto progress = progress_for(g);
    Json out{{"config", {{"suite", a.suite}, {"seed", g.seed}, {"threads", g.threads}, {"version", kVersion}}}};
    std::vector<CriterionResult> crit;
    if (a.suite == "small") {
        auto rep = oracle_suite(3, {6, 7, 8}, {0, 1, 2}, g.threads, progress);
        Json inst = Json::array();
        for (const auto& in : rep.instances) {
            Json r{{"lambda", parts(in.lambda)}, {"mu", parts(in.mu)}, {"nu", parts(in.nu)}, {"d", in.d},
                   {"N", in.N},    {"hives", in.hives},        {"det", in.det},         {"residual", real(in.residual)}};
            if (in.lr) r["lr"] = *in.lr;
            r["ok"] = in.ok;
            if (!in.error.empty()) r["error"] = in.error;
            inst.push_back(r);
        }
        out["instances"] = inst;
        crit.push_back(criterion_oracle(rep));
        crit.push_back(criterion_invariants(invariant_suite(progress)));
        crit.push_back(criterion_witness(witness_check()));
    } else if (a.suite == "scaling") {
        auto t = scaling_triple();
        auto main = scaling_run(t.alpha, t.beta, t.gamma, 23, {1, 2, 4, 8}, g.threads, progress);
        WitnessData w;
        auto ref = scaling_run(w.alpha, w.beta, w.gamma, 23, {1, 2, 4, 8}, g.threads, progress);
        out["scaling"] = scaling_json(main);
        out["figure_triple"] = scaling_json(ref);
        crit.push_back(criterion_scaling(main, ref));
    } else if (a.suite == "density") {
        std::vector<DensityCheck> checks;
        Json rows = Json::array();
        for (const auto& t : density_triples()) {
            if (progress) progress("density: " + to_string(t.gamma[0]) + "," + to_string(t.gamma[1]));
            auto c = density_check(t.alpha, t.beta, t.gamma, 60, 200, g.threads);
            Json r = triple_json(t.alpha, t.beta, t.gamma);
            r["main"] = real(c.main);
            r["series"] = real(c.series);
            r["series_imag"] = real(c.series_imag);
            r["from_j"] = real(c.from_j);
            r["rel_series"] = real(c.rel_series);
            r["rel_j"] = real(c.rel_j);
            r["ok"] = c.ok;
            rows.push_back(r);
            checks.push_back(c);
        }
        out["density"] = rows;
        crit.push_back(criterion_density(checks));
        WitnessData w;
        auto rep = rmt_run(w.alpha, w.beta, static_cast<std::size_t>(a.samples), g.seed, 40, 5, g.threads, progress);
        out["rmt"] = comparison_json(rep);
        crit.push_back(criterion_rmt(rep));
        if (progress) progress("normalization: 100x100 grid");
        auto gi = density_grid_integral(w.alpha, w.beta, 100);
        out["normalization"] = {{"integral", real(gi.integral)}, {"positive_cells", gi.positive_cells}};
        crit.push_back(criterion_normalization(gi));
    } else {
        throw std::invalid_argument("--suite must be small, scaling or density");
    }
    Json cj = Json::array();
    bool pass = true;
    for (const auto& c : crit) {
        cj.push_back(criterion_json(c));
        pass = pass && c.pass;
    }
    out["criteria"] = cj;
    out["pass"] = pass;
    emit(g, out);
    return pass ? kOk : kValidation;
}

void add_triple(CLI::App* s, std::string& alpha, std::string& beta, std::string* gamma) {
    s->add_option("--alpha", alpha, "conjugacy class angles, e.g. 13/23,6/23,2/23");
    s->add_option("--beta", beta, "conjugacy class angles");
    if (gamma) s->add_option("--gamma", *gamma, "conjugacy class angles");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qhive: quantum Littlewood-Richardson coefficients, toric hives and U(n) convolution densities"};
    app.set_version_flag("--version", kVersion);
    Globals g;
    app.add_option("--output,-o", g.output, "write the result here instead of stdout");
    app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "random seed");
    app.add_flag("--quiet,-q", g.quiet, "no progress on stderr");
    app.require_subcommand(1);

    QlrArgs qa;
    auto* qlr = app.add_subcommand("qlr", "quantum LR coefficient by hive count and/or determinantal sum");
    auto* hives = app.add_subcommand("hives", "enumerate or validate two-colored dual hives");
    for (auto* s : {qlr, hives}) {
        s->add_option("--n", qa.n, "number of parts (default: length of --lambda)");
        s->add_option("--N", qa.N, "frame size")->required();
        s->add_option("--d", qa.d, "quantum degree")->required();
        s->add_option("--lambda", qa.lambda, "partition, e.g. 3,1,0")->required();
        s->add_option("--mu", qa.mu, "partition")->required();
        s->add_option("--nu", qa.nu, "partition")->required();
    }
    qlr->add_option("--method", qa.method, "hive, det or both");
    qlr->add_flag("--emit-witness", qa.emit_witness, "include one hive");
    hives->add_option("--limit", qa.limit, "hives to list");
    hives->add_option("--check", qa.check, "validate the hive in this JSON file");

    LabelingArgs la;
    auto* labs = app.add_subcommand("labelings", "regular labelings of the hexagon");
    labs->add_option("--n", la.n)->required();
    labs->add_option("--d", la.d)->required();
    labs->add_flag("--details", la.details, "rigid lozenges, support size, colors");

    PolytopeArgs pa;
    auto* poly = app.add_subcommand("polytope", "polytopes P^g and their volumes");
    poly->add_option("--n", pa.n);
    poly->add_option("--d", pa.d);
    add_triple(poly, pa.alpha, pa.beta, &pa.gamma);
    poly->add_option("--labeling", pa.labeling, "restrict to one labeling key");
    poly->add_option("--method", pa.method, "exact or mc");
    poly->add_option("--samples", pa.samples, "Monte Carlo samples");
    poly->add_flag("--vertices", pa.vertices, "list vertices (exact method)");

    DensityArgs da;
    auto* dens = app.add_subcommand("density", "density of the product class");
    add_triple(dens, da.alpha, da.beta, &da.gamma);
    dens->add_option("--method", da.method, "polytope, series or both");
    dens->add_option("--truncation", da.truncation, "series cutoff on lambda_1");
    dens->add_option("--grid", da.grid, "tabulate on an m x m (gamma1, gamma2) grid (n = 3)");

    TripleArgs ma, ja;
    auto* mod = app.add_subcommand("moduli", "volume of flat SU(n) connections on the three-holed sphere");
    add_triple(mod, ma.alpha, ma.beta, &ma.gamma);
    auto* jv = app.add_subcommand("jvol", "truncated series for the volume function J");
    add_triple(jv, ja.alpha, ja.beta, &ja.gamma);
    jv->add_option("--imax", ja.imax, "truncation");

    ValidateArgs va;
    auto* val = app.add_subcommand("validate", "random-matrix check of the density (n = 3)");
    add_triple(val, va.alpha, va.beta, nullptr);
    val->add_option("--samples", va.samples);
    val->add_option("--grid", va.grid);
    val->add_option("--sub", va.sub, "midpoint subdivisions per cell");
    val->add_option("--csv", va.csv, "write binned data here");

    CrosscheckArgs ca;
    auto* cc = app.add_subcommand("crosscheck", "acceptance suites");
    cc->add_option("--suite", ca.suite, "small, scaling or density");
    cc->add_option("--samples", ca.samples, "random-matrix samples (density suite)");

    for (auto* s : app.get_subcommands([](CLI::App*) { return true; })) s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    try {
        const auto t0 = std::chrono::steady_clock::now();
        int rc = kOk;
        if (*qlr) rc = cmd_qlr(g, qa);
        else if (*hives) rc = cmd_hives(g, qa);
        else if (*labs) rc = cmd_labelings(g, la);
        else if (*poly) rc = cmd_polytope(g, pa);
        else if (*dens) rc = cmd_density(g, da);
        else if (*mod) rc = cmd_moduli(g, ma);
        else if (*jv) rc = cmd_jvol(g, ja);
        else if (*val) rc = cmd_validate(g, va);
        else if (*cc) rc = cmd_crosscheck(g, ca);
        if (!g.quiet) {
            double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            std::cerr << "[qhive] done in " << real(s) << " s" << std::endl;
        }
        return rc;
    } catch (const NumericalFailure& e) {
        Json out{{"error", e.what()}, {"raw", {{"re", real(e.raw.real())}, {"im", real(e.raw.imag())}}}};
        emit(g, out);
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kUsage;
    }
}
