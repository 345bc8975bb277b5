// Acceptance suite: runs each release criterion at its stated scale and
// tolerance, enforces the per-criterion runtime budget, and prints one
// PASS/FAIL line per criterion. Exit status 0 only when every line passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "latnet/analysis.hpp"
#include "latnet/experiments.hpp"
#include "latnet/simulator.hpp"

using namespace latnet;

namespace {

struct Criterion {
    std::string name;
    double budget_s;
    std::function<bool(std::string&)> run;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

bool c1_full_table_exactness(std::string& detail) {
    const LatticeSpec lat(20);
    const RoutingConfig full = RoutingConfig::full(lat);
    Rng pick(20250810);
    int exact = 0;
    const int pairs = 1000;
    for (int k = 0; k < pairs; ++k) {
        const NodeCoord r0 = lat.coord(static_cast<int>(pick.below(400)));
        NodeCoord rd = r0;
        while (rd == r0) rd = lat.coord(static_cast<int>(pick.below(400)));
        const DelayStats s = single_packet_delay(r0, rd, full, lat, 1, 9000 + static_cast<std::uint64_t>(k));
        if (s.samples[0] == d_pm(r0, rd, lat)) ++exact;
    }
    detail = std::to_string(exact) + "/" + std::to_string(pairs) + " episodes exact";
    return exact == pairs;
}

bool c2_sandwich(std::string& detail) {
    const LatticeSpec lat(50);
    bool ok = true;
    std::ostringstream d;
    for (const int m : {1, 5}) {
        const SandwichReport rep = sandwich_check(lat, m, 1e-10);
        ok = ok && rep.holds(1e-6);
        d << "m=" << m << " margins " << fmt(rep.worst_lower) << "/" << fmt(rep.worst_upper) << " ";
    }
    detail = d.str() + "(slack 1e-6)";
    return ok;
}

bool c3_semidet_closed_form(std::string& detail) {
    for (int L = 4; L <= 64; L += 2) {
        const LatticeSpec lat(L);
        for (int m = 0; m <= L; ++m) {
            long long sum = 0;
            for (int idx = 0; idx < lat.node_count(); ++idx) {
                sum += theta(d_pm(lat.coord(idx), NodeCoord{0, 0}, lat), m);
            }
            const double brute = static_cast<double>(sum) / static_cast<double>(L * L);
            if (tau_bar_semidet(m, lat) != brute) {
                detail = "mismatch at L=" + std::to_string(L) + " m=" + std::to_string(m);
                return false;
            }
        }
    }
    for (const int L : {10, 50}) {
        const LatticeSpec lat(L);
        if (tau_bar_semidet(L, lat) != static_cast<double>(L) / 2.0) {
            detail = "tau_bar_L != L/2 at L=" + std::to_string(L);
            return false;
        }
        const DelayCurve curve = average_delay_curve(lat, {L}, 1e-10);
        if (curve.at(L).tau_bar != static_cast<double>(L) / 2.0) {
            detail = "curve tau_bar_L != L/2 at L=" + std::to_string(L);
            return false;
        }
    }
    detail = "closed form exact for all even L <= 64, all m; tau_bar_L = L/2 at L in {10,50}";
    return true;
}

bool c4_counting(std::string& detail) {
    for (int L = 4; L <= 20; L += 2) {
        const LatticeSpec lat(L);
        std::vector<int> counts(static_cast<size_t>(L) + 1, 0);
        for (int idx = 0; idx < lat.node_count(); ++idx) {
            ++counts[static_cast<size_t>(d_pm(lat.coord(idx), NodeCoord{0, 0}, lat))];
        }
        int cum = 0;
        for (int k = 0; k <= L; ++k) {
            if (ring_count(k, lat) != counts[static_cast<size_t>(k)]) {
                detail = "ring_count mismatch at L=" + std::to_string(L) + " k=" + std::to_string(k);
                return false;
            }
            if (k >= 1) {
                cum += counts[static_cast<size_t>(k)];
                if (table_size(k, lat) != cum) {
                    detail = "table_size mismatch at L=" + std::to_string(L) + " m=" + std::to_string(k);
                    return false;
                }
            }
        }
    }
    detail = "ring_count and table_size match exhaustive counts for even L in [4,20]";
    return true;
}

bool c5_solver_oracle(std::string& detail) {
    double worst = 0.0;
    for (int L = 4; L <= 12; L += 2) {
        const LatticeSpec lat(L);
        std::vector<AbsorbingSpec> specs;
        for (const double R : {1.0, 2.0}) specs.push_back(AbsorbingSpec::euclidean(R));
        for (const int m : {1, 2, 3}) specs.push_back(AbsorbingSpec::manhattan(m));
        for (const auto& spec : specs) {
            const HittingField it = solve_hitting(lat, spec, 1e-13);
            const HittingField de = solve_hitting(lat, spec, 1e-13, SolveMethod::Dense);
            for (size_t k = 0; k < it.values.size(); ++k) {
                worst = std::max(worst, std::abs(it.values[k] - de.values[k]));
            }
        }
    }
    detail = "max |iterative - dense| = " + fmt(worst) + " over even L <= 12, R in {1,2}, m in {1,2,3}";
    return worst <= 1e-8;
}

bool c6_monte_carlo(std::string& detail) {
    const LatticeSpec lat(12);
    const int m = 3;
    const NodeCoord r0{6, 6};
    const HittingField field = tau_random(lat, m, 1e-12);
    const double exact = tau_total(field, r0);
    const DelayStats s = single_packet_delay(r0, NodeCoord{0, 0}, RoutingConfig::for_cutoff(m, lat),
                                             lat, 100000, 123456);
    const double z = (s.mean - exact) / s.std_error;
    detail = "mean " + fmt(s.mean) + " vs exact " + fmt(exact) + ", |z| = " + fmt(std::abs(z));
    return std::abs(z) <= 3.0;
}

bool c7_log_law_fit(std::string& detail) {
    const LatticeSpec lat(50);
    bool ok = true;
    std::ostringstream d;
    for (const double R : {1.0, 5.0}) {
        const HittingField f = solve_hitting(lat, AbsorbingSpec::euclidean(R), 1e-10);
        std::vector<FitPoint> pts;
        for (int idx = 0; idx < lat.node_count(); ++idx) {
            const double norm = pe_norm(lat.coord(idx), lat);
            if (norm > R && norm <= 10.0) pts.emplace_back(norm, f.values[static_cast<size_t>(idx)]);
        }
        const FitResult fit = fit_loglinear(pts, pts.size());
        ok = ok && fit.r_squared >= 0.98;
        d << "R=" << fmt(R) << " r_squared=" << fmt(fit.r_squared) << " ";
    }
    detail = d.str() + "(threshold 0.98)";
    return ok;
}

bool c8_lower_bound_shape(std::string& detail) {
    const ShapeReport rep = lower_bound_shape_report({24, 48, 96}, 1.0, 0.125, 1e-10);
    detail = "ratios in [" + fmt(rep.ratio_min()) + ", " + fmt(rep.ratio_max()) +
             "], spread = " + fmt(rep.spread());
    return rep.all_positive() && rep.spread() <= 2.0;
}

bool c9_upper_bound(std::string& detail) {
    const LatticeSpec lat(100);
    const HittingField f = solve_hitting(lat, AbsorbingSpec::euclidean(1.0), 1e-10);
    std::vector<NodeCoord> eligible;
    for (int idx = 0; idx < lat.node_count(); ++idx) {
        const double norm = pe_norm(lat.coord(idx), lat);
        if (norm >= 2.0 && norm <= 25.0) eligible.push_back(lat.coord(idx));
    }
    Rng pick(987654);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const NodeCoord r = eligible[pick.below(static_cast<std::uint32_t>(eligible.size()))];
        const double bound = asymptotic_upper_bound(r, 1.0, lat) * 1.15;
        worst = std::max(worst, f.at(r) / bound);
    }
    detail = "max T/(bound*1.15) = " + fmt(worst) + " over 20 sampled nodes";
    return worst <= 1.0;
}

bool c10_cost_minimization(std::string& detail) {
    const LatticeSpec lat(50);
    std::vector<int> ms(50);
    std::iota(ms.begin(), ms.end(), 1);
    const DelayCurve curve = average_delay_curve(lat, ms, 1e-10);

    std::vector<FitPoint> pts;
    for (const auto& e : curve.entries) pts.emplace_back(static_cast<double>(e.m), e.tau_bar);
    const FitResult fit = fit_loglinear(pts, static_cast<std::size_t>(10), 50);
    if (fit.r_squared < 0.98) {
        detail = "delay curve vs log m fit r_squared = " + fmt(fit.r_squared) + " < 0.98";
        return false;
    }

    const auto free = argmin_cost(CostModel{0.0, lat, curve});
    if (free.first != 50) {
        detail = "a=0 argmin = " + std::to_string(free.first) + ", expected 50";
        return false;
    }
    std::ostringstream d;
    d << "a=0 m*=50; ";
    for (const double a : {10.0, 100.0}) {
        const auto numeric = argmin_cost(CostModel{a, lat, curve});
        const double analytic = optimal_m_analytic(a, fit.A, lat);
        d << "a=" << fmt(a) << " m*=" << numeric.first << " analytic=" << fmt(analytic) << " ";
        if (std::abs(static_cast<double>(numeric.first) - analytic) > 2.0) {
            detail = d.str() + "- difference exceeds 2";
            return false;
        }
    }
    detail = d.str() + "(fitted A=" + fmt(fit.A) + ")";
    return true;
}

bool c11_validate_determinism(std::string& detail) {
    ExperimentConfig cfg;
    cfg.seed = 7;
    cfg.out_dir = "acceptance_out/run1";
    std::ostringstream rep1, rep2;
    const bool ok1 = run_validate(cfg, rep1);
    cfg.out_dir = "acceptance_out/run2";
    const bool ok2 = run_validate(cfg, rep2);
    const bool identical = rep1.str() == rep2.str();
    detail = std::string("reports ") + (identical ? "byte-identical" : "DIFFER") +
             ", checks " + (ok1 && ok2 ? "pass" : "fail");
    return ok1 && ok2 && identical;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"01 full-table-exactness (L=20, 1000 pairs)", 10.0, c1_full_table_exactness},
        {"02 sandwich-bounds (L=50, m in {1,5})", 60.0, c2_sandwich},
        {"03 semidet-closed-form (even L <= 64)", 5.0, c3_semidet_closed_form},
        {"04 counting-oracles (even L in [4,20])", 5.0, c4_counting},
        {"05 solver-oracle-equivalence (even L <= 12)", 30.0, c5_solver_oracle},
        {"06 monte-carlo-vs-exact (L=12, m=3, 1e5 trials)", 60.0, c6_monte_carlo},
        {"07 log-law-fit (L=50, R in {1,5})", 60.0, c7_log_law_fit},
        {"08 lower-bound-shape (L in {24,48,96})", 300.0, c8_lower_bound_shape},
        {"09 upper-bound-consistency (L=100, 20 nodes)", 300.0, c9_upper_bound},
        {"10 cost-minimization (L=50)", 120.0, c10_cost_minimization},
        {"11 validate-determinism", 300.0, c11_validate_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        std::string detail;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > c.budget_s) {
            ok = false;
            detail += " [runtime budget exceeded]";
        }
        std::printf("%s %s: %s (%.2f s < %.0f s)\n", ok ? "PASS" : "FAIL", c.name.c_str(),
                    detail.c_str(), elapsed, c.budget_s);
        failures += ok ? 0 : 1;
    }
    std::printf("ACCEPTANCE: %zu/%zu criteria passed\n", criteria.size() - static_cast<size_t>(failures),
                criteria.size());
    return failures == 0 ? 0 : 1;
}
