#include "latnet/hitting_solver.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace latnet {

AbsorbingSpec AbsorbingSpec::euclidean(double R) {
    if (R < 0.0) throw std::invalid_argument("AbsorbingSpec: radius must be >= 0");
    return AbsorbingSpec{Metric::PeriodicEuclidean, R, R * R};
}

AbsorbingSpec AbsorbingSpec::euclidean_from_radius_sq(double R_sq) {
    if (R_sq < 0.0) throw std::invalid_argument("AbsorbingSpec: radius^2 must be >= 0");
    return AbsorbingSpec{Metric::PeriodicEuclidean, std::sqrt(R_sq), R_sq};
}

AbsorbingSpec AbsorbingSpec::manhattan(int m) {
    if (m < 0) throw std::invalid_argument("AbsorbingSpec: radius must be >= 0");
    const double r = static_cast<double>(m);
    return AbsorbingSpec{Metric::PeriodicManhattan, r, r * r};
}

bool AbsorbingSpec::absorbs(NodeCoord r, const LatticeSpec& lat) const {
    if (metric == Metric::PeriodicManhattan) {
        return static_cast<double>(d_pm(r, NodeCoord{0, 0}, lat)) <= radius;
    }
    return static_cast<double>(d_pe_sq(r, NodeCoord{0, 0}, lat)) <= radius_sq;
}

namespace {

struct System {
    std::vector<char> absorbed;           // per node
    std::vector<std::array<int, 4>> nbr;  // neighbour indices per node
    int n_free = 0;
};

System build_system(const LatticeSpec& lat, const AbsorbingSpec& spec) {
    const int n = lat.node_count();
    System sys;
    sys.absorbed.resize(static_cast<size_t>(n));
    sys.nbr.resize(static_cast<size_t>(n));
    int n_abs = 0;
    for (int idx = 0; idx < n; ++idx) {
        const NodeCoord r = lat.coord(idx);
        sys.absorbed[static_cast<size_t>(idx)] = spec.absorbs(r, lat) ? 1 : 0;
        n_abs += sys.absorbed[static_cast<size_t>(idx)];
        const auto nb = neighbors(r, lat);
        for (int k = 0; k < 4; ++k) sys.nbr[static_cast<size_t>(idx)][static_cast<size_t>(k)] = lat.index(nb[static_cast<size_t>(k)]);
    }
    if (n_abs == 0) throw std::invalid_argument("solve_hitting: absorbing set is empty");
    if (n_abs == n) throw std::invalid_argument("solve_hitting: absorbing set covers the lattice");
    sys.n_free = n - n_abs;
    return sys;
}

double max_relative_defect(const System& sys, const std::vector<double>& v) {
    double worst = 0.0;
    for (size_t idx = 0; idx < v.size(); ++idx) {
        if (sys.absorbed[idx]) continue;
        const auto& nb = sys.nbr[idx];
        const double s = v[static_cast<size_t>(nb[0])] + v[static_cast<size_t>(nb[1])] +
                         v[static_cast<size_t>(nb[2])] + v[static_cast<size_t>(nb[3])];
        const double defect = std::abs(v[idx] - 1.0 - 0.25 * s);
        const double rel = defect / (1.0 + v[idx]);
        if (rel > worst) worst = rel;
    }
    return worst;
}

void solve_iterative(const System& sys, std::vector<double>& v, double tol, double relaxation,
                     long long max_sweeps, double& residual) {
    for (long long sweep = 0; sweep < max_sweeps; ++sweep) {
        for (size_t idx = 0; idx < v.size(); ++idx) {
            if (sys.absorbed[idx]) continue;
            const auto& nb = sys.nbr[idx];
            const double s = v[static_cast<size_t>(nb[0])] + v[static_cast<size_t>(nb[1])] +
                             v[static_cast<size_t>(nb[2])] + v[static_cast<size_t>(nb[3])];
            const double gs = 1.0 + 0.25 * s;
            v[idx] += relaxation * (gs - v[idx]);
        }
        residual = max_relative_defect(sys, v);
        if (residual <= tol) return;
    }
    throw std::runtime_error("solve_hitting: no convergence within the sweep budget");
}

void solve_dense(const LatticeSpec& lat, const System& sys, std::vector<double>& v,
                 double& residual) {
    if (lat.L() > 32) {
        throw std::invalid_argument("solve_hitting: dense method is limited to L <= 32");
    }
    const int n = lat.node_count();
    std::vector<int> row(static_cast<size_t>(n), -1);
    int next = 0;
    for (int idx = 0; idx < n; ++idx) {
        if (!sys.absorbed[static_cast<size_t>(idx)]) row[static_cast<size_t>(idx)] = next++;
    }

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(sys.n_free, sys.n_free);
    Eigen::VectorXd b = Eigen::VectorXd::Ones(sys.n_free);
    for (int idx = 0; idx < n; ++idx) {
        const int r = row[static_cast<size_t>(idx)];
        if (r < 0) continue;
        A(r, r) = 1.0;
        for (const int nb : sys.nbr[static_cast<size_t>(idx)]) {
            const int c = row[static_cast<size_t>(nb)];
            if (c >= 0) A(r, c) -= 0.25;
        }
    }
    const Eigen::VectorXd x = A.partialPivLu().solve(b);
    for (int idx = 0; idx < n; ++idx) {
        const int r = row[static_cast<size_t>(idx)];
        v[static_cast<size_t>(idx)] = r >= 0 ? x(r) : 0.0;
    }
    residual = max_relative_defect(sys, v);
}

}  // namespace

HittingField solve_hitting(const LatticeSpec& lat, const AbsorbingSpec& spec, double tol,
                           SolveMethod method, double relaxation, long long max_sweeps) {
    if (tol <= 0.0) throw std::invalid_argument("solve_hitting: tol must be > 0");
    if (relaxation <= 0.0 || relaxation >= 2.0) {
        throw std::invalid_argument("solve_hitting: relaxation must be in (0, 2)");
    }
    const System sys = build_system(lat, spec);
    HittingField field{lat, spec, std::vector<double>(static_cast<size_t>(lat.node_count()), 0.0), 0.0};
    if (method == SolveMethod::Iterative) {
        solve_iterative(sys, field.values, tol, relaxation, max_sweeps, field.residual);
    } else {
        solve_dense(lat, sys, field.values, field.residual);
    }
    return field;
}

HittingField tau_random(const LatticeSpec& lat, int m, double tol, SolveMethod method) {
    if (m < 1 || m > lat.d_max()) {
        throw std::out_of_range("tau_random: m must be in [1, L], got " + std::to_string(m));
    }
    const AbsorbingSpec spec = AbsorbingSpec::manhattan(m);
    if (m == lat.d_max()) {
        return HittingField{lat, spec, std::vector<double>(static_cast<size_t>(lat.node_count()), 0.0), 0.0};
    }
    return solve_hitting(lat, spec, tol, method);
}

double tau_total(const HittingField& random_part, NodeCoord r) {
    if (random_part.spec.metric != Metric::PeriodicManhattan) {
        throw std::invalid_argument("tau_total: field must use the Manhattan metric");
    }
    const int m = static_cast<int>(random_part.spec.radius);
    return random_part.at(r) + static_cast<double>(theta(d_pm(r, NodeCoord{0, 0}, random_part.lat), m));
}

SandwichReport sandwich_check(const LatticeSpec& lat, int m, double tol) {
    if (m < 1 || 2 * m >= lat.L()) {
        throw std::out_of_range("sandwich_check: m must satisfy 1 <= m < L/2");
    }
    const HittingField tau1 = tau_random(lat, m, tol);
    const HittingField outer = solve_hitting(lat, AbsorbingSpec::euclidean(static_cast<double>(m)), tol);
    // radius m*sqrt(2)/2, held as radius^2 = m^2/2 so boundary nodes stay exact
    const HittingField inner = solve_hitting(
        lat, AbsorbingSpec::euclidean_from_radius_sq(static_cast<double>(m) * static_cast<double>(m) / 2.0), tol);

    SandwichReport rep{m, 0.0, 0.0};
    bool first = true;
    for (size_t idx = 0; idx < tau1.values.size(); ++idx) {
        const double lower = tau1.values[idx] - outer.values[idx];
        const double upper = inner.values[idx] - tau1.values[idx];
        if (first) {
            rep.worst_lower = lower;
            rep.worst_upper = upper;
            first = false;
        } else {
            rep.worst_lower = std::min(rep.worst_lower, lower);
            rep.worst_upper = std::min(rep.worst_upper, upper);
        }
    }
    return rep;
}

void write_field_csv(const HittingField& field, std::ostream& out) {
    const LatticeSpec& lat = field.lat;
    out << "i,j,d_pm,d_pe,value\n";
    out.precision(17);
    for (int idx = 0; idx < lat.node_count(); ++idx) {
        const NodeCoord r = lat.coord(idx);
        out << r.i << ',' << r.j << ',' << d_pm(r, NodeCoord{0, 0}, lat) << ','
            << d_pe(r, NodeCoord{0, 0}, lat) << ',' << field.values[static_cast<size_t>(idx)] << '\n';
    }
}

}  // namespace latnet
