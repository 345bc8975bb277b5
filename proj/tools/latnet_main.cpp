// latnet: experiment runner for the torus-lattice packet network model.
// Subcommands reproduce the delay-field scans (fig2a, fig2b), the average
// delay curve (fig3), the cost surface (cost), loaded and single-packet
// simulations (simulate, mc-delay), and the self-check suite (validate).
// Exit codes: 0 success, 1 check failure, 2 configuration error.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "latnet/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"latnet: delay analysis and simulation for a periodic-lattice packet network"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Plain key=value configuration file; command-line flags win");

    latnet::ExperimentConfig cfg;
    std::string out_dir = cfg.out_dir.string();
    std::vector<int> r0_vec, rd_vec;

    app.add_option("--L", cfg.L, "Lattice side length (even, >= 4)")->capture_default_str();
    app.add_option("--m", cfg.ms, "Routing cutoff value(s)")->expected(-1);
    app.add_option("--R", cfg.Rs, "Absorbing radius value(s) for fig2a")->expected(-1);
    app.add_option("--a", cfg.cost_weights, "Memory-vs-delay weight grid for cost")->expected(-1);
    app.add_option("--lambda", cfg.lambda, "Per-node packet creation probability")->capture_default_str();
    app.add_option("--trials", cfg.trials, "Monte Carlo trials")->capture_default_str();
    app.add_option("--steps", cfg.steps, "Loaded-run steps")->capture_default_str();
    app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    app.add_option("--tol", cfg.tol, "Solver tolerance")->capture_default_str();
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    auto* r0_opt = app.add_option("--r0", r0_vec, "mc-delay start node i j")->expected(2);
    auto* rd_opt = app.add_option("--rd", rd_vec, "mc-delay destination node i j")->expected(2);

    struct Command {
        const char* name;
        const char* help;
        bool (*run)(const latnet::ExperimentConfig&, std::ostream&);
    };
    const Command commands[] = {
        {"fig2a", "Hitting-time fields T_R with log-law fits", latnet::run_fig2a},
        {"fig2b", "Random-part fields tau_{m,1} with sandwich margins", latnet::run_fig2b},
        {"fig3", "Average delay curve over m = 1..L with log fit", latnet::run_fig3},
        {"cost", "Cost surface c(m,a) with numeric and analytic minimizers", latnet::run_cost},
        {"simulate", "Loaded network run at creation rate lambda", latnet::run_simulate},
        {"mc-delay", "Single-packet Monte Carlo delay", latnet::run_mc_delay},
        {"validate", "Self-check suite with PASS/FAIL lines", latnet::run_validate},
    };
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cfg.out_dir = out_dir;
    if (r0_opt->count() > 0) cfg.r0 = latnet::NodeCoord{r0_vec[0], r0_vec[1]};
    if (rd_opt->count() > 0) cfg.rd = latnet::NodeCoord{rd_vec[0], rd_vec[1]};

    try {
        for (const auto& c : commands) {
            if (app.got_subcommand(c.name)) {
                return c.run(cfg, std::cout) ? 0 : 1;
            }
        }
        std::cerr << "error: no subcommand selected\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
