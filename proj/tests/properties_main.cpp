#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "property_checks.hpp"

int main(int argc, char** argv) {
    const std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 20240611;
    const std::vector<std::pair<const char*, std::function<checks::Outcome()>>> suites = {
        {"closed forms vs high-precision oracle", [&] { return checks::closed_forms(1000, seed); }},
        {"BMU brute-force oracle equivalence", [&] { return checks::bmu_oracle(1000, seed); }},
        {"convex-hull containment", [&] { return checks::convex_hull(200, seed); }},
        {"locality", [&] { return checks::locality(2000, seed); }},
        {"feedback_F bounds", [&] { return checks::feedback_bounds(100000, seed); }},
        {"run_sweep determinism", [&] { return checks::sweep_determinism(seed); }},
        {"stream reproducibility", [&] { return checks::stream_reproducibility(seed); }},
        {"paper-scale plan cardinality", [] { return checks::plan_cardinality(); }},
    };
    int failed = 0;
    for (const auto& [name, run] : suites) {
        const auto r = run();
        std::printf("[%s] %s: %s\n", r.ok ? "PASS" : "FAIL", name, r.detail.c_str());
        failed += !r.ok;
    }
    return failed ? 1 : 0;
}
