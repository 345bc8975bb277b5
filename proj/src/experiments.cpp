#include "latnet/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace latnet {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    std::ofstream ofs(dir / name, std::ios::trunc);
    if (!ofs) {
        throw std::runtime_error("cannot open output file: " + (dir / name).string());
    }
    return ofs;
}

void finish(const std::filesystem::path& dir, const std::string& summary, std::ostream& log) {
    auto ofs = open_out(dir, "summary.txt");
    ofs << summary;
    log << summary;
}

int first_m(const ExperimentConfig& cfg) {
    if (cfg.ms.empty()) throw std::invalid_argument("experiment: no m value configured");
    return cfg.ms.front();
}

}  // namespace

bool run_fig2a(const ExperimentConfig& cfg, std::ostream& log) {
    const LatticeSpec lat(cfg.L);
    const auto dir = cfg.out_dir / "fig2a";
    std::ostringstream summary;
    summary << "fig2a L=" << cfg.L << " tol=" << fmt_short(cfg.tol) << "\n";

    if (cfg.Rs.empty()) throw std::invalid_argument("fig2a: no R value configured");
    for (const double R : cfg.Rs) {
        const HittingField field = solve_hitting(lat, AbsorbingSpec::euclidean(R), cfg.tol);
        auto csv = open_out(dir, "T_R" + fmt_short(R) + ".csv");
        csv << "i,j,norm_r,value\n";
        csv.precision(17);
        std::vector<FitPoint> pts;
        for (int idx = 0; idx < lat.node_count(); ++idx) {
            const NodeCoord r = lat.coord(idx);
            const double norm = pe_norm(r, lat);
            csv << r.i << ',' << r.j << ',' << norm << ',' << field.values[static_cast<size_t>(idx)] << '\n';
            if (norm > R && norm <= 10.0) pts.emplace_back(norm, field.values[static_cast<size_t>(idx)]);
        }
        const FitResult fit = fit_loglinear(pts, [](double, double) { return true; });
        summary << "fig2a R=" << fmt_short(R) << " points=" << pts.size()
                << " slope=" << fmt(fit.slope) << " intercept=" << fmt(fit.intercept)
                << " r_squared=" << fmt(fit.r_squared) << "\n";
    }
    finish(dir, summary.str(), log);
    return true;
}

bool run_fig2b(const ExperimentConfig& cfg, std::ostream& log) {
    const LatticeSpec lat(cfg.L);
    const auto dir = cfg.out_dir / "fig2b";
    std::ostringstream summary;
    summary << "fig2b L=" << cfg.L << " tol=" << fmt_short(cfg.tol) << "\n";

    bool ok = true;
    for (const int m : cfg.ms) {
        const HittingField field = tau_random(lat, m, cfg.tol);
        auto csv = open_out(dir, "tau_m" + std::to_string(m) + ".csv");
        csv << "i,j,d_pm,value\n";
        csv.precision(17);
        for (int idx = 0; idx < lat.node_count(); ++idx) {
            const NodeCoord r = lat.coord(idx);
            csv << r.i << ',' << r.j << ',' << d_pm(r, NodeCoord{0, 0}, lat) << ','
                << field.values[static_cast<size_t>(idx)] << '\n';
        }
        if (m >= 1 && 2 * m < lat.L()) {
            const SandwichReport rep = sandwich_check(lat, m, cfg.tol);
            const bool holds = rep.holds();
            ok = ok && holds;
            summary << "fig2b m=" << m << " sandwich_lower=" << fmt(rep.worst_lower)
                    << " sandwich_upper=" << fmt(rep.worst_upper)
                    << " holds=" << (holds ? "yes" : "no") << "\n";
        } else {
            summary << "fig2b m=" << m << " sandwich=skipped (requires m < L/2)\n";
        }
    }
    finish(dir, summary.str(), log);
    return ok;
}

bool run_fig3(const ExperimentConfig& cfg, std::ostream& log) {
    const LatticeSpec lat(cfg.L);
    const auto dir = cfg.out_dir / "fig3";

    std::vector<int> ms(static_cast<size_t>(lat.L()));
    std::iota(ms.begin(), ms.end(), 1);
    const DelayCurve curve = average_delay_curve(lat, ms, cfg.tol);

    auto csv = open_out(dir, "delay_curve.csv");
    csv << "m,tau_bar,tau_random,tau_semidet\n";
    std::vector<FitPoint> pts;
    for (const auto& e : curve.entries) {
        csv << e.m << ',' << fmt(e.tau_bar) << ',' << fmt(e.tau_rand) << ','
            << fmt(e.tau_semidet) << '\n';
        pts.emplace_back(static_cast<double>(e.m), e.tau_bar);
    }
    const FitResult fit = fit_loglinear(pts, static_cast<std::size_t>(10), cfg.L);

    std::ostringstream summary;
    summary << "fig3 L=" << cfg.L << " tol=" << fmt_short(cfg.tol) << "\n";
    summary << "fig3 fit_first10 slope=" << fmt(fit.slope) << " intercept=" << fmt(fit.intercept)
            << " r_squared=" << fmt(fit.r_squared) << " A=" << fmt(fit.A) << " B=" << fmt(fit.B)
            << "\n";
    summary << "fig3 tau_bar_at_m_L=" << fmt(curve.at(lat.L()).tau_bar) << "\n";
    finish(dir, summary.str(), log);
    return true;
}

bool run_cost(const ExperimentConfig& cfg, std::ostream& log) {
    const LatticeSpec lat(cfg.L);
    const auto dir = cfg.out_dir / "cost";

    std::vector<int> ms(static_cast<size_t>(lat.L()));
    std::iota(ms.begin(), ms.end(), 1);
    const DelayCurve curve = average_delay_curve(lat, ms, cfg.tol);

    std::vector<FitPoint> pts;
    for (const auto& e : curve.entries) pts.emplace_back(static_cast<double>(e.m), e.tau_bar);
    const FitResult fit = fit_loglinear(pts, static_cast<std::size_t>(10), cfg.L);

    auto surface = open_out(dir, "cost_surface.csv");
    surface << "m,a,cost\n";
    auto argmin = open_out(dir, "argmin.csv");
    argmin << "a,m_star,cost_star,m_analytic\n";

    std::ostringstream summary;
    summary << "cost L=" << cfg.L << " tol=" << fmt_short(cfg.tol) << " A=" << fmt(fit.A)
            << " B=" << fmt(fit.B) << "\n";
    for (const double a : cfg.cost_weights) {
        const CostModel model{a, lat, curve};
        for (int m = 1; m <= lat.L(); ++m) {
            surface << m << ',' << fmt_short(a) << ',' << fmt(cost(m, model)) << '\n';
        }
        const auto [m_star, c_star] = argmin_cost(model);
        const double m_analytic = (a > 0.0 && fit.A > 0.0)
                                      ? optimal_m_analytic(a, fit.A, lat)
                                      : std::numeric_limits<double>::quiet_NaN();
        argmin << fmt_short(a) << ',' << m_star << ',' << fmt(c_star) << ',' << fmt(m_analytic)
               << '\n';
        summary << "cost a=" << fmt_short(a) << " m_star=" << m_star << " cost_star=" << fmt(c_star)
                << " m_analytic=" << fmt(m_analytic) << "\n";
    }
    finish(dir, summary.str(), log);
    return true;
}

bool run_simulate(const ExperimentConfig& cfg, std::ostream& log) {
    const LatticeSpec lat(cfg.L);
    const auto dir = cfg.out_dir / "simulate";
    const int m = first_m(cfg);
    const StepParams params{cfg.lambda, RoutingConfig::for_cutoff(m, lat)};
    const LoadedSummary s = run_loaded(lat, params, cfg.steps, cfg.seed);

    std::ostringstream summary;
    summary << "simulate L=" << cfg.L << " lambda=" << fmt_short(cfg.lambda) << " m=" << m
            << " steps=" << cfg.steps << " seed=" << cfg.seed << "\n";
    summary << "simulate created=" << s.created << " delivered=" << s.delivered
            << " mean_delay=" << fmt(s.mean_delay) << " queued=" << s.queued << "\n";
    finish(dir, summary.str(), log);
    return true;
}

bool run_mc_delay(const ExperimentConfig& cfg, std::ostream& log) {
    const LatticeSpec lat(cfg.L);
    const auto dir = cfg.out_dir / "mc-delay";
    const int m = first_m(cfg);
    const NodeCoord r0 = cfg.r0.value_or(NodeCoord{cfg.L / 2, cfg.L / 2});
    const DelayStats stats =
        single_packet_delay(r0, cfg.rd, RoutingConfig::for_cutoff(m, lat), lat, cfg.trials, cfg.seed);

    auto csv = open_out(dir, "samples.csv");
    csv << "trial,delay\n";
    for (size_t t = 0; t < stats.samples.size(); ++t) csv << t << ',' << stats.samples[t] << '\n';

    std::ostringstream summary;
    summary << "mc-delay L=" << cfg.L << " m=" << m << " r0=(" << r0.i << ',' << r0.j << ") rd=("
            << cfg.rd.i << ',' << cfg.rd.j << ") trials=" << cfg.trials << " seed=" << cfg.seed
            << "\n";
    summary << "mc-delay mean=" << fmt(stats.mean) << " std_error=" << fmt(stats.std_error)
            << " d_pm=" << d_pm(r0, cfg.rd, lat) << "\n";
    finish(dir, summary.str(), log);
    return true;
}

namespace {

// BFS hop distance on the torus; the validate command's independent oracle
// for d_pm.
std::vector<int> bfs_distances(NodeCoord src, const LatticeSpec& lat) {
    std::vector<int> dist(static_cast<size_t>(lat.node_count()), -1);
    std::deque<int> frontier{lat.index(src)};
    dist[static_cast<size_t>(lat.index(src))] = 0;
    while (!frontier.empty()) {
        const int idx = frontier.front();
        frontier.pop_front();
        for (const NodeCoord nb : neighbors(lat.coord(idx), lat)) {
            const int nidx = lat.index(nb);
            if (dist[static_cast<size_t>(nidx)] < 0) {
                dist[static_cast<size_t>(nidx)] = dist[static_cast<size_t>(idx)] + 1;
                frontier.push_back(nidx);
            }
        }
    }
    return dist;
}

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

CheckResult check_metric_bfs() {
    const LatticeSpec lat(8);
    for (int s = 0; s < lat.node_count(); ++s) {
        const auto dist = bfs_distances(lat.coord(s), lat);
        for (int t = 0; t < lat.node_count(); ++t) {
            if (dist[static_cast<size_t>(t)] != d_pm(lat.coord(s), lat.coord(t), lat)) {
                return {"metric-bfs-equivalence", false, "mismatch at L=8"};
            }
        }
    }
    return {"metric-bfs-equivalence", true, "d_pm equals BFS hop distance (L=8, all pairs)"};
}

CheckResult check_metric_axioms() {
    const LatticeSpec lat(8);
    const int n = lat.node_count();
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const int dab = d_pm(lat.coord(a), lat.coord(b), lat);
            if ((dab == 0) != (a == b)) return {"metric-axioms", false, "identity fails"};
            if (dab != d_pm(lat.coord(b), lat.coord(a), lat)) {
                return {"metric-axioms", false, "symmetry fails"};
            }
        }
    }
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const int dab = d_pm(lat.coord(a), lat.coord(b), lat);
            for (int c = 0; c < n; ++c) {
                if (dab > d_pm(lat.coord(a), lat.coord(c), lat) +
                              d_pm(lat.coord(c), lat.coord(b), lat)) {
                    return {"metric-axioms", false, "triangle inequality fails"};
                }
            }
        }
    }
    return {"metric-axioms", true, "identity, symmetry, triangle (L=8, exhaustive)"};
}

CheckResult check_metric_equivalence() {
    const LatticeSpec lat(10);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int a = 0; a < lat.node_count(); ++a) {
        for (int b = 0; b < lat.node_count(); ++b) {
            const double pm = d_pm(lat.coord(a), lat.coord(b), lat);
            const double pe = d_pe(lat.coord(a), lat.coord(b), lat);
            if (pe > pm + 1e-12 || pe < inv_sqrt2 * pm - 1e-12) {
                return {"metric-equivalence", false, "d_pe bounds violated"};
            }
        }
    }
    return {"metric-equivalence", true, "d_pm/sqrt(2) <= d_pe <= d_pm (L=10, all pairs)"};
}

CheckResult check_counting() {
    for (int L = 4; L <= 12; L += 2) {
        const LatticeSpec lat(L);
        std::vector<int> counts(static_cast<size_t>(L) + 1, 0);
        for (int idx = 0; idx < lat.node_count(); ++idx) {
            ++counts[static_cast<size_t>(d_pm(lat.coord(idx), NodeCoord{0, 0}, lat))];
        }
        int cum = 0;
        for (int k = 0; k <= L; ++k) {
            if (counts[static_cast<size_t>(k)] != ring_count(k, lat)) {
                return {"counting-oracles", false, "ring_count mismatch at L=" + std::to_string(L)};
            }
            if (k >= 1) {
                cum += counts[static_cast<size_t>(k)];
                if (cum != table_size(k, lat)) {
                    return {"counting-oracles", false, "table_size mismatch at L=" + std::to_string(L)};
                }
            }
        }
    }
    return {"counting-oracles", true, "ring_count and table_size match brute-force counts (even L in [4,12])"};
}

CheckResult check_semidet_exact() {
    for (int L = 4; L <= 32; L += 2) {
        const LatticeSpec lat(L);
        for (int m = 0; m <= L; ++m) {
            long long sum = 0;
            for (int idx = 0; idx < lat.node_count(); ++idx) {
                sum += theta(d_pm(lat.coord(idx), NodeCoord{0, 0}, lat), m);
            }
            const double brute = static_cast<double>(sum) / static_cast<double>(L * L);
            if (tau_bar_semidet(m, lat) != brute) {
                return {"semidet-closed-form", false,
                        "mismatch at L=" + std::to_string(L) + " m=" + std::to_string(m)};
            }
        }
    }
    return {"semidet-closed-form", true, "closed form equals brute-force sum exactly (even L in [4,32])"};
}

CheckResult check_full_table(std::uint64_t seed) {
    const LatticeSpec lat(20);
    Rng rng(stream_seed(seed, 101));
    const RoutingConfig full = RoutingConfig::full(lat);
    for (int k = 0; k < 200; ++k) {
        const NodeCoord r0 = lat.coord(static_cast<int>(rng.below(static_cast<std::uint32_t>(lat.node_count()))));
        NodeCoord rd = r0;
        while (rd == r0) {
            rd = lat.coord(static_cast<int>(rng.below(static_cast<std::uint32_t>(lat.node_count()))));
        }
        const DelayStats s = single_packet_delay(r0, rd, full, lat, 1, stream_seed(seed, 500 + static_cast<std::uint64_t>(k)));
        if (s.samples[0] != d_pm(r0, rd, lat)) {
            return {"full-table-exactness", false, "delay != d_pm"};
        }
    }
    return {"full-table-exactness", true, "lone-packet delay equals d_pm under m = D_max (L=20, 200 pairs)"};
}

CheckResult check_routing_uniformity(std::uint64_t seed) {
    const LatticeSpec lat(10);
    const RoutingConfig cfg = RoutingConfig::for_cutoff(1, lat);
    const QueueSnapshot zero(lat);
    Rng rng(stream_seed(seed, 77));
    const NodeCoord r{0, 0};
    const NodeCoord rd{5, 5};  // far away, so all four neighbours tie
    std::array<long long, 4> counts{0, 0, 0, 0};
    const auto nbr = neighbors(r, lat);
    const long long trials = 100000;
    for (long long t = 0; t < trials; ++t) {
        const NodeCoord next = select_next(r, rd, cfg, zero, lat, rng);
        for (int k = 0; k < 4; ++k) {
            if (nbr[static_cast<size_t>(k)] == next) ++counts[static_cast<size_t>(k)];
        }
    }
    for (const long long c : counts) {
        const double freq = static_cast<double>(c) / static_cast<double>(trials);
        if (std::abs(freq - 0.25) > 0.01) {
            return {"routing-uniformity", false, "tie-break frequency " + fmt(freq)};
        }
    }
    return {"routing-uniformity", true, "uniform tie-break over 4 candidates, 1e5 draws, 0.25 +- 0.01"};
}

CheckResult check_solver_oracle(double tol) {
    double worst = 0.0;
    for (const int L : {8, 12}) {
        const LatticeSpec lat(L);
        std::vector<AbsorbingSpec> specs;
        for (const double R : {1.0, 2.0}) specs.push_back(AbsorbingSpec::euclidean(R));
        for (const int m : {1, 2, 3}) specs.push_back(AbsorbingSpec::manhattan(m));
        for (const auto& spec : specs) {
            const HittingField it = solve_hitting(lat, spec, std::min(tol, 1e-13));
            const HittingField de = solve_hitting(lat, spec, tol, SolveMethod::Dense);
            for (size_t idx = 0; idx < it.values.size(); ++idx) {
                worst = std::max(worst, std::abs(it.values[idx] - de.values[idx]));
            }
        }
    }
    if (worst > 1e-8) return {"solver-oracle-agreement", false, "max |iterative - dense| = " + fmt(worst)};
    return {"solver-oracle-agreement", true,
            "iterative vs dense max |diff| = " + fmt(worst) + " (L in {8,12}, R in {1,2}, m in {1,2,3})"};
}

CheckResult check_harmonicity(double tol) {
    const LatticeSpec lat(50);
    const HittingField field = solve_hitting(lat, AbsorbingSpec::euclidean(1.0), tol);
    // Pinned acceptance threshold, independent of the solver tolerance knob.
    constexpr double kThreshold = 1e-6;
    double worst = 0.0;
    for (int idx = 0; idx < lat.node_count(); ++idx) {
        const NodeCoord r = lat.coord(idx);
        if (field.spec.absorbs(r, lat)) {
            if (field.values[static_cast<size_t>(idx)] != 0.0) {
                return {"solver-harmonicity", false, "nonzero value on the absorbing set"};
            }
            continue;
        }
        double s = 0.0;
        for (const NodeCoord nb : neighbors(r, lat)) s += field.at(nb);
        const double defect = std::abs(field.values[static_cast<size_t>(idx)] - 1.0 - 0.25 * s);
        worst = std::max(worst, defect / (1.0 + field.values[static_cast<size_t>(idx)]));
    }
    if (worst > kThreshold) {
        return {"solver-harmonicity", false, "max relative defect = " + fmt(worst) + " > 1e-06"};
    }
    return {"solver-harmonicity", true, "max relative defect = " + fmt(worst) + " (L=50, R=1)"};
}

CheckResult check_sandwich(double tol) {
    for (const int m : {1, 5}) {
        const SandwichReport rep = sandwich_check(LatticeSpec(50), m, tol);
        if (!rep.holds()) {
            return {"sandwich-bounds", false,
                    "m=" + std::to_string(m) + " lower=" + fmt(rep.worst_lower) +
                        " upper=" + fmt(rep.worst_upper)};
        }
    }
    return {"sandwich-bounds", true, "T_m <= tau_{m,1} <= T_{m*sqrt2/2} (L=50, m in {1,5}, slack 1e-6)"};
}

CheckResult check_mc_consistency(std::uint64_t seed, double tol) {
    const LatticeSpec lat(12);
    const int m = 3;
    const HittingField field = tau_random(lat, m, tol);
    const NodeCoord r0{6, 6};
    const double exact = tau_total(field, r0);
    const DelayStats s =
        single_packet_delay(r0, NodeCoord{0, 0}, RoutingConfig::for_cutoff(m, lat), lat, 20000, seed);
    const double z = (s.mean - exact) / s.std_error;
    if (std::abs(z) > 3.0) {
        return {"mc-consistency", false, "z = " + fmt(z) + " (mean " + fmt(s.mean) + " vs " + fmt(exact) + ")"};
    }
    return {"mc-consistency", true,
            "L=12 m=3 r0=(6,6): mean " + fmt(s.mean) + " vs exact " + fmt(exact) + ", |z| = " + fmt(std::abs(z))};
}

CheckResult check_shape(double tol) {
    const ShapeReport rep = lower_bound_shape_report({24, 48, 96}, 1.0, 0.125, tol);
    if (!rep.all_positive() || rep.spread() > 2.0) {
        return {"lower-bound-shape", false, "spread = " + fmt(rep.spread())};
    }
    return {"lower-bound-shape", true,
            "ratios positive, spread = " + fmt(rep.spread()) + " (L in {24,48,96}, R=1, f=1/8)"};
}

}  // namespace

bool run_validate(const ExperimentConfig& cfg, std::ostream& log) {
    const auto dir = cfg.out_dir / "validate";
    std::ostringstream report;
    report << "latnet validate (seed=" << cfg.seed << " tol=" << fmt_short(cfg.tol) << ")\n";

    const CheckResult checks[] = {
        check_metric_bfs(),
        check_metric_axioms(),
        check_metric_equivalence(),
        check_counting(),
        check_semidet_exact(),
        check_full_table(cfg.seed),
        check_routing_uniformity(cfg.seed),
        check_solver_oracle(cfg.tol),
        check_harmonicity(cfg.tol),
        check_sandwich(cfg.tol),
        check_mc_consistency(cfg.seed, cfg.tol),
        check_shape(cfg.tol),
    };
    int passed = 0;
    for (const auto& c : checks) {
        report << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
        passed += c.pass ? 1 : 0;
    }
    const int total = static_cast<int>(std::size(checks));
    const bool ok = passed == total;
    report << "RESULT: " << (ok ? "PASS" : "FAIL") << " (" << passed << "/" << total << ")\n";
    finish(dir, report.str(), log);
    return ok;
}

}  // namespace latnet
