#include "latnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace latnet {

bool DelayCurve::has(int m) const {
    return std::any_of(entries.begin(), entries.end(),
                       [m](const DelayCurveEntry& e) { return e.m == m; });
}

const DelayCurveEntry& DelayCurve::at(int m) const {
    for (const auto& e : entries) {
        if (e.m == m) return e;
    }
    throw std::out_of_range("DelayCurve: no entry for m = " + std::to_string(m));
}

double tau_bar_semidet(int m, const LatticeSpec& lat) {
    const long long L = lat.L();
    if (m < 0 || m > L) {
        throw std::out_of_range("tau_bar_semidet: m must be in [0, L], got " + std::to_string(m));
    }
    const long long mm = m;
    long long num;  // 3 L^2 tau_bar, an exact integer for even L
    if (2 * mm < L) {
        num = 3 * L * L * mm - (2 * mm * mm * mm + mm);
    } else {
        const long long lm = L - mm;
        num = 3 * L * L * L / 2 - (2 * lm * lm * lm + lm);
    }
    return static_cast<double>(num) / static_cast<double>(3 * L * L);
}

DelayCurve average_delay_curve(const LatticeSpec& lat, const std::vector<int>& ms, double tol) {
    DelayCurve curve{lat, {}};
    curve.entries.reserve(ms.size());
    for (const int m : ms) {
        if (m < 1 || m > lat.d_max()) {
            throw std::out_of_range("average_delay_curve: m must be in [1, L], got " +
                                    std::to_string(m));
        }
        double rand_avg = 0.0;
        if (m < lat.d_max()) {
            const HittingField field = tau_random(lat, m, tol);
            double sum = 0.0;
            for (const double v : field.values) sum += v;
            rand_avg = sum / static_cast<double>(lat.node_count());
        }
        const double semidet = tau_bar_semidet(m, lat);
        curve.entries.push_back(DelayCurveEntry{m, rand_avg + semidet, rand_avg, semidet});
    }
    return curve;
}

FitResult fit_loglinear(const std::vector<FitPoint>& points,
                        const std::function<bool(double, double)>& use, std::optional<int> L) {
    std::vector<FitPoint> sel;
    for (const auto& [x, y] : points) {
        if (!use(x, y)) continue;
        if (x <= 0.0) {
            throw std::invalid_argument("fit_loglinear: selected x must be > 0");
        }
        sel.emplace_back(x, y);
    }
    if (sel.size() < 2) {
        throw std::invalid_argument("fit_loglinear: need at least two selected points");
    }

    const double n = static_cast<double>(sel.size());
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : sel) {
        mx += std::log(x);
        my += y;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : sel) {
        const double dx = std::log(x) - mx;
        const double dy = y - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("fit_loglinear: degenerate design, all selected x equal");
    }

    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    const double ss_res = syy - fit.slope * sxy;
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;

    if (L) {
        const double L2 = static_cast<double>(*L) * static_cast<double>(*L);
        fit.A = -fit.slope / L2;
        if (fit.A > 0.0) {
            fit.B = std::exp(fit.intercept / (fit.A * L2)) / static_cast<double>(*L);
        }
    }
    return fit;
}

FitResult fit_loglinear(const std::vector<FitPoint>& points, std::size_t first_n,
                        std::optional<int> L) {
    std::size_t taken = 0;
    return fit_loglinear(
        points, [&taken, first_n](double, double) { return taken++ < first_n; }, L);
}

double brownian_u(double rho, double a, double b) {
    if (!(a > 0.0) || !(a <= rho) || !(rho <= b)) {
        throw std::invalid_argument("brownian_u: need 0 < a <= rho <= b");
    }
    return b * b * std::log(rho / a) - (rho * rho - a * a) / 2.0;
}

double asymptotic_upper_bound_norm(double norm_r, double R, const LatticeSpec& lat) {
    if (!(R > 0.0) || !(norm_r > R)) {
        throw std::invalid_argument("asymptotic_upper_bound: need 0 < R < ||r||");
    }
    const double L2 = static_cast<double>(lat.L()) * static_cast<double>(lat.L());
    return L2 * std::log(norm_r / R) - (norm_r * norm_r - R * R);
}

double asymptotic_upper_bound(NodeCoord r, double R, const LatticeSpec& lat) {
    return asymptotic_upper_bound_norm(pe_norm(r, lat), R, lat);
}

bool ShapeReport::all_positive() const {
    return !entries.empty() && std::all_of(entries.begin(), entries.end(),
                                           [](const ShapeEntry& e) { return e.ratio > 0.0; });
}

double ShapeReport::ratio_min() const {
    double m = entries.front().ratio;
    for (const auto& e : entries) m = std::min(m, e.ratio);
    return m;
}

double ShapeReport::ratio_max() const {
    double m = entries.front().ratio;
    for (const auto& e : entries) m = std::max(m, e.ratio);
    return m;
}

ShapeReport lower_bound_shape_report(const std::vector<int>& lattice_sides, double R,
                                     double radius_fraction, double tol) {
    if (lattice_sides.empty()) {
        throw std::invalid_argument("lower_bound_shape_report: no lattice sizes given");
    }
    if (!(radius_fraction > 0.0) || !(radius_fraction < 0.25)) {
        throw std::invalid_argument("lower_bound_shape_report: radius fraction must lie in (0, 1/4)");
    }
    ShapeReport report{R, radius_fraction, {}};
    for (const int side : lattice_sides) {
        const LatticeSpec lat(side);
        const NodeCoord r{static_cast<int>(std::lround(radius_fraction * side)), 0};
        const double norm = pe_norm(r, lat);
        if (!(R < norm)) {
            throw std::invalid_argument(
                "lower_bound_shape_report: need R < ||r_L||; increase L or the fraction");
        }
        const HittingField field = solve_hitting(lat, AbsorbingSpec::euclidean(R), tol);
        const double denom =
            static_cast<double>(side) * static_cast<double>(side) * std::log(norm / R);
        report.entries.push_back(ShapeEntry{side, r, norm, field.at(r), field.at(r) / denom});
    }
    return report;
}

double cost(int m, const CostModel& model) {
    if (model.a < 0.0) throw std::invalid_argument("cost: weight a must be >= 0");
    return model.curve.at(m).tau_bar + model.a * static_cast<double>(table_size(m, model.lat));
}

std::pair<int, double> argmin_cost(const CostModel& model) {
    const int L = model.lat.L();
    constexpr double kTieWindow = 1e-9;
    double best = cost(1, model);
    for (int m = 2; m <= L; ++m) best = std::min(best, cost(m, model));
    for (int m = L; m >= 1; --m) {
        const double c = cost(m, model);
        if (c <= best + kTieWindow) return {m, c};
    }
    return {1, best};  // unreachable
}

double optimal_m_analytic(double a, double A, const LatticeSpec& lat) {
    if (!(a > 0.0)) throw std::invalid_argument("optimal_m_analytic: a must be > 0");
    if (!(A > 0.0)) throw std::invalid_argument("optimal_m_analytic: A must be > 0");
    const double L2 = static_cast<double>(lat.L()) * static_cast<double>(lat.L());
    return std::sqrt(a * a + 4.0 * a * A * L2) / (4.0 * a) - 0.5;
}

}  // namespace latnet
