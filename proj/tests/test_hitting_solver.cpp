#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "latnet/hitting_solver.hpp"
#include "latnet/simulator.hpp"

using namespace latnet;

TEST_SUITE("hitting_solver") {

TEST_CASE("absorbing membership is exact on boundary nodes") {
    const LatticeSpec lat(8);
    // radius^2 = 2 must include (1,1); the sqrt-rounded radius must too
    const AbsorbingSpec s2 = AbsorbingSpec::euclidean_from_radius_sq(2.0);
    CHECK(s2.absorbs({1, 1}, lat));
    CHECK_FALSE(s2.absorbs({2, 0}, lat));
    const AbsorbingSpec m3 = AbsorbingSpec::manhattan(3);
    CHECK(m3.absorbs({2, 1}, lat));
    CHECK_FALSE(m3.absorbs({2, 2}, lat));
    CHECK_THROWS_AS(AbsorbingSpec::euclidean(-1.0), std::invalid_argument);
}

TEST_CASE("degenerate absorbing sets are rejected") {
    const LatticeSpec lat(6);
    CHECK_THROWS_AS(solve_hitting(lat, AbsorbingSpec::manhattan(6)), std::invalid_argument);
    CHECK_THROWS_AS(solve_hitting(lat, AbsorbingSpec::euclidean(100.0)), std::invalid_argument);
    CHECK_THROWS_AS(solve_hitting(lat, AbsorbingSpec::euclidean(1.0), 0.0), std::invalid_argument);
}

TEST_CASE("iterative solver signals non-convergence when the budget is tiny") {
    const LatticeSpec lat(12);
    CHECK_THROWS_AS(solve_hitting(lat, AbsorbingSpec::euclidean(1.0), 1e-12,
                                  SolveMethod::Iterative, 1.9, 2),
                    std::runtime_error);
}

TEST_CASE("dense method is limited to L <= 32") {
    const LatticeSpec lat(34);
    CHECK_THROWS_AS(solve_hitting(lat, AbsorbingSpec::euclidean(1.0), 1e-10, SolveMethod::Dense),
                    std::invalid_argument);
}

TEST_CASE("absorbed nodes are exactly zero and others at least one") {
    const LatticeSpec lat(12);
    const HittingField f = solve_hitting(lat, AbsorbingSpec::euclidean(2.0));
    for (int idx = 0; idx < lat.node_count(); ++idx) {
        const NodeCoord r = lat.coord(idx);
        if (f.spec.absorbs(r, lat)) {
            CHECK(f.values[static_cast<size_t>(idx)] == 0.0);
        } else {
            CHECK(f.values[static_cast<size_t>(idx)] >= 1.0 - 1e-8);
        }
    }
}

TEST_CASE("L=4 R=1 field satisfies the stencil and matches hand values") {
    const LatticeSpec lat(4);
    for (const SolveMethod method : {SolveMethod::Iterative, SolveMethod::Dense}) {
        const HittingField f = solve_hitting(lat, AbsorbingSpec::euclidean(1.0), 1e-13, method);
        // neighbours of (1,1) are (2,1), (0,1) [absorbed], (1,2), (1,0) [absorbed]
        CHECK(f.at({1, 1}) ==
              doctest::Approx(1.0 + 0.25 * (f.at({2, 1}) + f.at({1, 2}))).epsilon(1e-10));
        // by symmetry classes the exact values are 11/3, 16/3, 19/3
        CHECK(f.at({1, 1}) == doctest::Approx(11.0 / 3.0).epsilon(1e-10));
        CHECK(f.at({2, 0}) == doctest::Approx(11.0 / 3.0).epsilon(1e-10));
        CHECK(f.at({2, 1}) == doctest::Approx(16.0 / 3.0).epsilon(1e-10));
        CHECK(f.at({2, 2}) == doctest::Approx(19.0 / 3.0).epsilon(1e-10));
    }
}

TEST_CASE("harmonicity defect stays below the requested tolerance") {
    const LatticeSpec lat(12);
    const double tol = 1e-11;
    const HittingField f = solve_hitting(lat, AbsorbingSpec::manhattan(2), tol);
    CHECK(f.residual <= tol);
    for (int idx = 0; idx < lat.node_count(); ++idx) {
        const NodeCoord r = lat.coord(idx);
        if (f.spec.absorbs(r, lat)) continue;
        double s = 0.0;
        for (const NodeCoord nb : neighbors(r, lat)) s += f.at(nb);
        const double defect = std::abs(f.values[static_cast<size_t>(idx)] - 1.0 - 0.25 * s);
        CHECK(defect <= tol * (1.0 + f.values[static_cast<size_t>(idx)]));
    }
}

TEST_CASE("fields inherit the dihedral symmetries of the lattice") {
    const LatticeSpec lat(10);
    const int L = lat.L();
    const HittingField f = solve_hitting(lat, AbsorbingSpec::manhattan(2), 1e-12);
    for (int idx = 0; idx < lat.node_count(); ++idx) {
        const NodeCoord r = lat.coord(idx);
        const int mi = (L - r.i) % L, mj = (L - r.j) % L;
        const double v = f.at(r);
        CHECK(f.at({mi, r.j}) == doctest::Approx(v).epsilon(1e-9));
        CHECK(f.at({r.i, mj}) == doctest::Approx(v).epsilon(1e-9));
        CHECK(f.at({r.j, r.i}) == doctest::Approx(v).epsilon(1e-9));
    }
}

TEST_CASE("iterative and dense methods agree") {
    for (const int L : {4, 8}) {
        const LatticeSpec lat(L);
        for (const int m : {1, 2}) {
            const HittingField it = solve_hitting(lat, AbsorbingSpec::manhattan(m), 1e-13);
            const HittingField de =
                solve_hitting(lat, AbsorbingSpec::manhattan(m), 1e-13, SolveMethod::Dense);
            for (size_t k = 0; k < it.values.size(); ++k) {
                CHECK(std::abs(it.values[k] - de.values[k]) <= 1e-8);
            }
        }
    }
}

TEST_CASE("tau_random boundary behaviour") {
    const LatticeSpec lat(8);
    CHECK_THROWS_AS(tau_random(lat, 0), std::out_of_range);
    CHECK_THROWS_AS(tau_random(lat, 9), std::out_of_range);
    const HittingField f = tau_random(lat, 3);
    for (int idx = 0; idx < lat.node_count(); ++idx) {
        const NodeCoord r = lat.coord(idx);
        if (d_pm(r, {0, 0}, lat) <= 3) CHECK(f.values[static_cast<size_t>(idx)] == 0.0);
    }
    // full table: no random phase at all
    const HittingField full = tau_random(lat, 8);
    for (const double v : full.values) CHECK(v == 0.0);
    CHECK(full.residual == 0.0);
}

TEST_CASE("tau_random L=4 m=2 exact values") {
    // only five nodes are free: the four at distance 3 (value 5/3) and the
    // antipode (value 8/3)
    const LatticeSpec lat(4);
    for (const SolveMethod method : {SolveMethod::Iterative, SolveMethod::Dense}) {
        const HittingField f = tau_random(lat, 2, 1e-13, method);
        CHECK(f.at({2, 1}) == doctest::Approx(5.0 / 3.0).epsilon(1e-10));
        CHECK(f.at({1, 2}) == doctest::Approx(5.0 / 3.0).epsilon(1e-10));
        CHECK(f.at({2, 2}) == doctest::Approx(8.0 / 3.0).epsilon(1e-10));
    }
}

TEST_CASE("tau_total composes the random and deterministic parts") {
    const LatticeSpec lat(12);
    const HittingField f = tau_random(lat, 4, 1e-12);
    CHECK(tau_total(f, {0, 0}) == 0.0);
    CHECK(tau_total(f, {2, 1}) == 3.0);  // inside the deterministic zone
    CHECK(tau_total(f, {6, 6}) == doctest::Approx(f.at({6, 6}) + 4.0));
    const HittingField full = tau_random(lat, 12);
    for (int idx = 0; idx < lat.node_count(); ++idx) {
        const NodeCoord r = lat.coord(idx);
        CHECK(tau_total(full, r) == doctest::Approx(static_cast<double>(d_pm(r, {0, 0}, lat))));
    }
    const HittingField euclid = solve_hitting(lat, AbsorbingSpec::euclidean(1.0));
    CHECK_THROWS_AS(tau_total(euclid, {3, 3}), std::invalid_argument);
}

TEST_CASE("L=4 m=1 total delay matches the Monte Carlo simulator") {
    const LatticeSpec lat(4);
    const HittingField f = tau_random(lat, 1, 1e-12);
    CHECK(f.at({2, 2}) == doctest::Approx(19.0 / 3.0).epsilon(1e-10));
    const double exact = tau_total(f, {2, 2});
    CHECK(exact == doctest::Approx(19.0 / 3.0 + 1.0).epsilon(1e-10));
    const DelayStats s =
        single_packet_delay({2, 2}, {0, 0}, RoutingConfig::for_cutoff(1, lat), lat, 100000, 4242);
    CHECK(std::abs(s.mean - exact) <= 3.0 * s.std_error);
}

TEST_CASE("Monte Carlo means track tau_total across random configurations") {
    Rng pick(31415);
    for (int cfg = 0; cfg < 5; ++cfg) {
        const int L = 4 + 2 * static_cast<int>(pick.below(5));  // 4..12
        const LatticeSpec lat(L);
        const int m = 1 + static_cast<int>(pick.below(static_cast<std::uint32_t>(L / 2)));
        NodeCoord r0{0, 0};
        while (d_pm(r0, {0, 0}, lat) <= m) {
            r0 = lat.coord(static_cast<int>(pick.below(static_cast<std::uint32_t>(lat.node_count()))));
        }
        const HittingField field = tau_random(lat, m, 1e-12);
        const double exact = tau_total(field, r0);
        const DelayStats s = single_packet_delay(r0, {0, 0}, RoutingConfig::for_cutoff(m, lat),
                                                 lat, 20000, 2718 + static_cast<std::uint64_t>(cfg));
        CHECK(std::abs(s.mean - exact) <= 3.0 * s.std_error);
    }
}

TEST_CASE("sandwich bounds hold at small scale against the dense oracle") {
    const LatticeSpec lat(8);
    CHECK_THROWS_AS(sandwich_check(lat, 4), std::out_of_range);
    CHECK_THROWS_AS(sandwich_check(lat, 0), std::out_of_range);
    const SandwichReport rep = sandwich_check(lat, 2, 1e-12);
    CHECK(rep.holds(1e-9));

    // same margins from dense solves
    const HittingField tau1 = tau_random(lat, 2, 1e-12, SolveMethod::Dense);
    const HittingField outer =
        solve_hitting(lat, AbsorbingSpec::euclidean(2.0), 1e-12, SolveMethod::Dense);
    const HittingField inner =
        solve_hitting(lat, AbsorbingSpec::euclidean_from_radius_sq(2.0), 1e-12, SolveMethod::Dense);
    double lower = 1e300, upper = 1e300;
    for (size_t k = 0; k < tau1.values.size(); ++k) {
        lower = std::min(lower, tau1.values[k] - outer.values[k]);
        upper = std::min(upper, inner.values[k] - tau1.values[k]);
    }
    CHECK(lower >= -1e-9);
    CHECK(upper >= -1e-9);
    CHECK(rep.worst_lower == doctest::Approx(lower).epsilon(1e-6));
    CHECK(rep.worst_upper == doctest::Approx(upper).epsilon(1e-6));
}

TEST_CASE("average of tau_random is nonincreasing in m") {
    const LatticeSpec lat(10);
    double prev = 1e300;
    for (int m = 1; m <= 9; ++m) {
        const HittingField f = tau_random(lat, m, 1e-11);
        double mean = 0.0;
        for (const double v : f.values) mean += v;
        mean /= static_cast<double>(lat.node_count());
        CHECK(mean <= prev + 1e-8);
        prev = mean;
    }
}

TEST_CASE("field CSV export is self-describing and full precision") {
    const LatticeSpec lat(4);
    const HittingField f = solve_hitting(lat, AbsorbingSpec::euclidean(1.0), 1e-13);
    std::ostringstream out;
    write_field_csv(f, out);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "i,j,d_pm,d_pe,value");
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        int i = 0, j = 0, dm = 0;
        double de = 0.0, v = 0.0;
        char c = 0;
        std::istringstream ls(line);
        ls >> i >> c >> j >> c >> dm >> c >> de >> c >> v;
        const NodeCoord r{i, j};
        CHECK(dm == d_pm(r, {0, 0}, lat));
        CHECK(de == doctest::Approx(d_pe(r, {0, 0}, lat)).epsilon(1e-15));
        CHECK(v == f.at(r));  // 17 significant digits round-trip doubles exactly
        ++rows;
    }
    CHECK(rows == lat.node_count());
}

}  // TEST_SUITE
