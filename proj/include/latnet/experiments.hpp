#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "latnet/analysis.hpp"
#include "latnet/simulator.hpp"

namespace latnet {

// Parameters shared by the experiment runners. Commands that need one m
// (simulate, mc-delay) use ms.front().
struct ExperimentConfig {
    int L = 50;
    std::vector<int> ms = {1, 5};
    std::vector<double> Rs = {1.0, 5.0};
    std::vector<double> cost_weights = {0.0, 0.1, 0.5, 1.0, 1.58, 5.0, 10.0, 100.0};
    double lambda = 0.05;
    long long trials = 100000;
    long long steps = 1000;
    std::uint64_t seed = 1;
    double tol = 1e-10;
    std::filesystem::path out_dir = "out";
    std::optional<NodeCoord> r0;  // mc-delay start; defaults to (L/2, L/2)
    NodeCoord rd{0, 0};
};

// Each runner writes its CSVs and a summary.txt under out_dir/<name>/, echoes
// the summary to `log`, and returns false when an internal check fails.
// Output is deterministic given (config, seed): re-runs produce byte-identical
// files.
bool run_fig2a(const ExperimentConfig& cfg, std::ostream& log);
bool run_fig2b(const ExperimentConfig& cfg, std::ostream& log);
bool run_fig3(const ExperimentConfig& cfg, std::ostream& log);
bool run_cost(const ExperimentConfig& cfg, std::ostream& log);
bool run_simulate(const ExperimentConfig& cfg, std::ostream& log);
bool run_mc_delay(const ExperimentConfig& cfg, std::ostream& log);

// Desk-scale self-check suite: metric/counting brute-force oracles, solver
// oracle equivalence, harmonicity against a pinned 1e-6 threshold (cfg.tol
// only controls solver effort), Monte Carlo consistency, sandwich bounds and
// the lower-bound shape report. One PASS/FAIL line per check.
bool run_validate(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace latnet
