#pragma once
// Cross-validation harness: every release gate the tool promises is coded
// here as a numbered criterion producing machine-readable check results.
//  1 single-cell cross-engine agreement (four single-selection schemes)
//  2 beamforming closed form vs simulator (clamped and exact-distance)
//  3 high-power floors: convergence bands and scheme ordering
//  4 battery steady state: simulator vs closed forms, identities
//  5 rate-invariance of the single-cell floors
//  6 multi-cell cross-engine agreement and floor comparisons
//  7 special-function and quadrature spot checks
//  8 determinism: rerun and parallel/serial equivalence

#include <cstdint>
#include <string>
#include <vector>

namespace wpr::validate {

struct CheckResult {
    int criterion = 0;
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    std::string note;
};

struct Options {
    std::uint64_t seed = 424242;
    // Smaller grids and slot counts; meant for unit tests of the harness
    // itself, not for release gating.
    bool quick = false;
    // Negative-control hook: corrupts the charged-relay fraction inside the
    // floor-ordering check, which must then fail.
    bool corrupt_eta1 = false;
    int threads = 1;
};

std::vector<CheckResult> run_criterion(int criterion, const Options& options);
std::vector<CheckResult> run_all(const Options& options);

bool all_passed(const std::vector<CheckResult>& results);
// One line per check: [PASS|FAIL] C<k> <name> measured= expected= tol= note.
std::string format_report(const std::vector<CheckResult>& results);

} // namespace wpr::validate
