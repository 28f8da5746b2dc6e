// Runs criteria 1-7 and prints one PASS/FAIL line each. Exit 0 only if all pass.
#include "qhive/crosscheck.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

using namespace qhive;

namespace {

CriterionResult timed(const std::function<CriterionResult()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = f();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t samples = 1000000;
    if (argc > 1) samples = std::stoull(argv[1]);
    Progress progress = [](const std::string& m) { std::cerr << "[acceptance] " << m << '\n'; };
    WitnessData w;
    std::vector<CriterionResult> results;
    results.push_back(timed([&] { return criterion_oracle(oracle_suite(3, {6, 7, 8}, {0, 1, 2}, 1, progress)); }));
    results.push_back(timed([&] {
        auto t = scaling_triple();
        auto main = scaling_run(t.alpha, t.beta, t.gamma, 23, {1, 2, 4, 8}, 1, progress);
        auto ref = scaling_run(w.alpha, w.beta, w.gamma, 23, {1, 2, 4, 8}, 1, progress);
        return criterion_scaling(main, ref);
    }));
    results.push_back(timed([&] {
        std::vector<DensityCheck> checks;
        for (const auto& t : density_triples()) checks.push_back(density_check(t.alpha, t.beta, t.gamma, 60, 200));
        return criterion_density(checks);
    }));
    results.push_back(timed([&] { return criterion_rmt(rmt_run(w.alpha, w.beta, samples, 1, 40, 5, 1, progress)); }));
    results.push_back(timed([&] { return criterion_invariants(invariant_suite(progress)); }));
    results.push_back(timed([&] { return criterion_witness(witness_check()); }));
    results.push_back(timed([&] { return criterion_normalization(density_grid_integral(w.alpha, w.beta, 100)); }));
    bool all = true;
    for (const auto& r : results) {
        std::printf("%s criterion %d: %s | %s (%.1f s)\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(),
                    r.detail.c_str(), r.seconds);
        all = all && r.pass;
    }
    std::fflush(stdout);
    return all ? 0 : 1;
}
