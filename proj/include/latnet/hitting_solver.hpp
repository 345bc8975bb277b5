#pragma once

#include <iosfwd>
#include <vector>

#include "latnet/lattice.hpp"

namespace latnet {

enum class Metric { PeriodicEuclidean, PeriodicManhattan };
enum class SolveMethod { Iterative, Dense };

// Absorbing disc {r : d(r, 0) <= radius} around the destination at the origin.
// Euclidean membership compares the integer squared distance against radius_sq,
// so thresholds like m^2/2 are exact when constructed via from_radius_sq;
// going through sqrt would misclassify boundary nodes such as (1,1) at m = 2.
struct AbsorbingSpec {
    Metric metric;
    double radius;
    double radius_sq;

    static AbsorbingSpec euclidean(double R);
    static AbsorbingSpec euclidean_from_radius_sq(double R_sq);
    static AbsorbingSpec manhattan(int m);

    bool absorbs(NodeCoord r, const LatticeSpec& lat) const;
};

// Expected hitting times of the absorbing disc for a simple random walk:
// values = 0 on the disc and value = 1 + mean of the four neighbour values
// elsewhere. residual is the achieved max |defect| / (1 + value).
struct HittingField {
    LatticeSpec lat;
    AbsorbingSpec spec;
    std::vector<double> values;  // row-major L*L
    double residual;

    double at(NodeCoord r) const { return values[static_cast<size_t>(lat.index(r))]; }
};

// Solves the hitting-time system. Iterative: Gauss-Seidel sweeps with
// successive over-relaxation, stopping when the relative infinity-norm
// residual drops below tol; throws std::runtime_error when the sweep budget
// is exhausted. Dense: direct elimination, restricted to L <= 32; the
// independent oracle path. Throws std::invalid_argument when the absorbing
// set is empty or covers the whole lattice.
HittingField solve_hitting(const LatticeSpec& lat, const AbsorbingSpec& spec, double tol = 1e-10,
                           SolveMethod method = SolveMethod::Iterative, double relaxation = 1.9,
                           long long max_sweeps = 1'000'000);

// The random part tau_{m,1}: hitting times of the Manhattan disc of radius m.
// m = L returns the all-zero field (a full table has no random phase).
HittingField tau_random(const LatticeSpec& lat, int m, double tol = 1e-10,
                        SolveMethod method = SolveMethod::Iterative);

// Total expected delay tau_m(r) = tau_{m,1}(r) + theta(d_pm(r, 0), m) for a
// field produced by tau_random.
double tau_total(const HittingField& random_part, NodeCoord r);

// Worst-case margins of T_m <= tau_{m,1} <= T_{m*sqrt(2)/2} over all nodes.
struct SandwichReport {
    int m;
    double worst_lower;  // min over r of tau_{m,1} - T_m
    double worst_upper;  // min over r of T_{m*sqrt(2)/2} - tau_{m,1}
    bool holds(double slack = 1e-6) const {
        return worst_lower >= -slack && worst_upper >= -slack;
    }
};

// Requires 1 <= m < L/2 so all three absorbing discs are proper.
SandwichReport sandwich_check(const LatticeSpec& lat, int m, double tol = 1e-10);

// CSV export: header i,j,d_pm,d_pe,value; one row per node, row-major,
// 17 significant digits.
void write_field_csv(const HittingField& field, std::ostream& out);

}  // namespace latnet
