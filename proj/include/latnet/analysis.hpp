#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "latnet/hitting_solver.hpp"

namespace latnet {

struct DelayCurveEntry {
    int m;
    double tau_bar;      // total average delay, = tau_rand + tau_semidet by construction
    double tau_rand;     // average of the random part over all nodes
    double tau_semidet;  // closed-form semi-deterministic average
};

struct DelayCurve {
    LatticeSpec lat;
    std::vector<DelayCurveEntry> entries;

    bool has(int m) const;
    const DelayCurveEntry& at(int m) const;  // throws std::out_of_range when missing
};

// Closed form for the average semi-deterministic part: m - (2m^3 + m)/(3L^2)
// for m < L/2, else L/2 - (2(L-m)^3 + (L-m))/(3L^2). Computed from an integer
// numerator over 3L^2, so it equals the brute-force sum of theta over all
// nodes bit-for-bit. Accepts 0 <= m <= L.
double tau_bar_semidet(int m, const LatticeSpec& lat);

// One solver run per m: tau_bar = mean(tau_random field) + tau_bar_semidet.
DelayCurve average_delay_curve(const LatticeSpec& lat, const std::vector<int>& ms,
                               double tol = 1e-10);

// Ordinary least squares of y against log x. A and B parameterize the delay
// law tau ~ A L^2 log(B L / m) and are filled only when L is supplied (and B
// only when the fitted A is positive).
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double A = std::numeric_limits<double>::quiet_NaN();
    double B = std::numeric_limits<double>::quiet_NaN();
};

using FitPoint = std::pair<double, double>;

// Fits the subset selected by `use`. Throws std::invalid_argument when fewer
// than two points are selected, a selected x is <= 0, or all selected x are
// equal (degenerate design).
FitResult fit_loglinear(const std::vector<FitPoint>& points,
                        const std::function<bool(double, double)>& use,
                        std::optional<int> L = std::nullopt);

// Convenience: fit the first `first_n` points.
FitResult fit_loglinear(const std::vector<FitPoint>& points, std::size_t first_n,
                        std::optional<int> L = std::nullopt);

// Expected time a planar Brownian motion started at radius rho spends inside
// the circle of radius b before hitting the circle of radius a:
// b^2 log(rho/a) - (rho^2 - a^2)/2. Requires 0 < a <= rho <= b.
double brownian_u(double rho, double a, double b);

// Leading term of the large-L upper bound on the hitting time of the
// Euclidean disc of radius R: L^2 log(norm/R) - (norm^2 - R^2). Requires
// R < norm. Identical to 2 L^2 brownian_u(norm/L; R/L, 1/sqrt(2)).
double asymptotic_upper_bound_norm(double norm_r, double R, const LatticeSpec& lat);
double asymptotic_upper_bound(NodeCoord r, double R, const LatticeSpec& lat);

struct ShapeEntry {
    int L;
    NodeCoord r;
    double norm;
    double hitting_time;
    double ratio;  // hitting_time / (L^2 log(norm / R))
};

// Hitting-time ratios across lattice sizes at a fixed radius fraction. The
// lower bound predicts the ratios stay bounded below by a positive constant;
// the empirical check is that they are all positive and within a small
// spread, not a reproduction of the unknown constant.
struct ShapeReport {
    double R;
    double radius_fraction;
    std::vector<ShapeEntry> entries;

    bool all_positive() const;
    double ratio_min() const;
    double ratio_max() const;
    double spread() const { return ratio_max() / ratio_min(); }
};

// For each L: solves T_R and evaluates the ratio at r = (round(f L), 0).
// Requires R >= 1, R < f L and f < 1/4 for every L.
ShapeReport lower_bound_shape_report(const std::vector<int>& lattice_sides, double R,
                                     double radius_fraction, double tol = 1e-10);

// Cost of operating one node: c(m, a) = tau_bar_m + a * M(m).
struct CostModel {
    double a;  // memory-vs-delay weight, >= 0
    LatticeSpec lat;
    DelayCurve curve;
};

double cost(int m, const CostModel& model);

// Exhaustive scan over the curve's 1..L range. Costs within an absolute
// 1e-9 window count as ties, resolved toward the larger table: the delay
// averages of m = L-1 and m = L coincide exactly, so a strict comparison
// would be decided by solver round-off.
std::pair<int, double> argmin_cost(const CostModel& model);

// Closed-form minimizer sqrt(a^2 + 4 a A L^2)/(4a) - 1/2 of the small-m cost
// surrogate A L^2 log(BL/m) + 2 a m (m+1). Requires a > 0 and A > 0.
double optimal_m_analytic(double a, double A, const LatticeSpec& lat);

}  // namespace latnet
