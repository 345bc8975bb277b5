#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>

#include "latnet/analysis.hpp"
#include "latnet/simulator.hpp"

namespace py = pybind11;
using namespace latnet;

namespace {

using Pair = std::pair<int, int>;

NodeCoord nc(Pair p) { return NodeCoord{p.first, p.second}; }
Pair pr(NodeCoord r) { return {r.i, r.j}; }

py::array_t<double> field_array(const HittingField& f) {
    const int L = f.lat.L();
    return py::array_t<double>({L, L}, f.values.data());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Delay analysis and simulation for a periodic-lattice packet network (C++ core)";
    m.attr("__version__") = "0.1.0";

    py::class_<LatticeSpec>(m, "LatticeSpec")
        .def(py::init<int>(), py::arg("L"))
        .def_property_readonly("L", &LatticeSpec::L)
        .def_property_readonly("d_max", &LatticeSpec::d_max)
        .def_property_readonly("node_count", &LatticeSpec::node_count)
        .def("__repr__", [](const LatticeSpec& lat) {
            return "LatticeSpec(L=" + std::to_string(lat.L()) + ")";
        });

    m.def("d_pm", [](Pair a, Pair b, const LatticeSpec& lat) { return d_pm(nc(a), nc(b), lat); },
          py::arg("r1"), py::arg("r2"), py::arg("lat"),
          "Periodic Manhattan (hop) distance between two nodes.");
    m.def("d_pe", [](Pair a, Pair b, const LatticeSpec& lat) { return d_pe(nc(a), nc(b), lat); },
          py::arg("r1"), py::arg("r2"), py::arg("lat"),
          "Periodic Euclidean distance between two nodes.");
    m.def("neighbors",
          [](Pair r, const LatticeSpec& lat) {
              const auto nb = neighbors(nc(r), lat);
              return std::vector<Pair>{pr(nb[0]), pr(nb[1]), pr(nb[2]), pr(nb[3])};
          },
          py::arg("r"), py::arg("lat"), "The four neighbours, in (+x, -x, +y, -y) order.");
    m.def("theta", &theta, py::arg("y"), py::arg("m"), "Distance cutoff: y if y < m, else m.");
    m.def("ring_count", &ring_count, py::arg("k"), py::arg("lat"),
          "Number of sites at hop distance exactly k from a fixed node.");
    m.def("table_size", &table_size, py::arg("m"), py::arg("lat"),
          "Number of sites within hop distance m (partial routing-table size).");

    py::class_<RoutingConfig>(m, "RoutingConfig")
        .def_static("for_cutoff", &RoutingConfig::for_cutoff, py::arg("m"), py::arg("lat"))
        .def_static("full", &RoutingConfig::full, py::arg("lat"))
        .def_readonly("m", &RoutingConfig::m)
        .def_readonly("full_table", &RoutingConfig::full_table);

    m.def("candidate_set",
          [](Pair r, Pair r_d, const RoutingConfig& cfg, const LatticeSpec& lat) {
              std::vector<Pair> out;
              for (const NodeCoord c : candidate_set(nc(r), nc(r_d), cfg, lat)) out.push_back(pr(c));
              return out;
          },
          py::arg("r"), py::arg("r_d"), py::arg("cfg"), py::arg("lat"),
          "Neighbours minimizing the cutoff distance to the destination.");

    py::class_<NetworkState>(m, "NetworkState")
        .def(py::init<const LatticeSpec&, std::uint64_t>(), py::arg("lat"), py::arg("seed"))
        .def("step",
             [](NetworkState& st, double lam, int m) {
                 st.step(StepParams{lam, RoutingConfig::for_cutoff(m, st.lattice())});
             },
             py::arg("lam"), py::arg("m"), "One parallel update at creation rate lam.")
        .def("inject", [](NetworkState& st, Pair at, Pair dst) { st.inject(nc(at), nc(dst)); },
             py::arg("at"), py::arg("destination"))
        .def_property_readonly("clock", &NetworkState::clock)
        .def_property_readonly("created_total", &NetworkState::created_total)
        .def_property_readonly("queued_total", &NetworkState::queued_total)
        .def("queue_len", [](const NetworkState& st, Pair r) { return st.queue_len(nc(r)); },
             py::arg("r"))
        .def("delivered", [](const NetworkState& st) {
            std::vector<std::pair<long long, long long>> out;
            for (const auto& rec : st.delivered()) out.emplace_back(rec.packet_id, rec.delay);
            return out;
        });

    py::class_<DelayStats>(m, "DelayStats")
        .def_readonly("mean", &DelayStats::mean)
        .def_readonly("std_error", &DelayStats::std_error)
        .def_property_readonly("samples", [](const DelayStats& s) {
            return py::array_t<long long>(static_cast<py::ssize_t>(s.samples.size()), s.samples.data());
        });

    m.def("single_packet_delay",
          [](Pair r0, Pair r_d, const RoutingConfig& routing, const LatticeSpec& lat,
             long long trials, std::uint64_t seed) {
              return single_packet_delay(nc(r0), nc(r_d), routing, lat, trials, seed);
          },
          py::arg("r0"), py::arg("r_d"), py::arg("routing"), py::arg("lat"), py::arg("trials"),
          py::arg("seed"), "Monte Carlo delay of a lone packet (lambda = 0 episodes).");

    py::class_<LoadedSummary>(m, "LoadedSummary")
        .def_readonly("created", &LoadedSummary::created)
        .def_readonly("delivered", &LoadedSummary::delivered)
        .def_readonly("mean_delay", &LoadedSummary::mean_delay)
        .def_readonly("queued", &LoadedSummary::queued);

    m.def("run_loaded",
          [](const LatticeSpec& lat, double lam, int cutoff, long long steps, std::uint64_t seed) {
              return run_loaded(lat, StepParams{lam, RoutingConfig::for_cutoff(cutoff, lat)}, steps,
                                seed);
          },
          py::arg("lat"), py::arg("lam"), py::arg("m"), py::arg("steps"), py::arg("seed"),
          "Run `steps` parallel updates from an empty network.");

    py::enum_<Metric>(m, "Metric")
        .value("PeriodicEuclidean", Metric::PeriodicEuclidean)
        .value("PeriodicManhattan", Metric::PeriodicManhattan);
    py::enum_<SolveMethod>(m, "SolveMethod")
        .value("Iterative", SolveMethod::Iterative)
        .value("Dense", SolveMethod::Dense);

    py::class_<AbsorbingSpec>(m, "AbsorbingSpec")
        .def_static("euclidean", &AbsorbingSpec::euclidean, py::arg("R"))
        .def_static("euclidean_from_radius_sq", &AbsorbingSpec::euclidean_from_radius_sq,
                    py::arg("R_sq"))
        .def_static("manhattan", &AbsorbingSpec::manhattan, py::arg("m"))
        .def_readonly("metric", &AbsorbingSpec::metric)
        .def_readonly("radius", &AbsorbingSpec::radius)
        .def_readonly("radius_sq", &AbsorbingSpec::radius_sq)
        .def("absorbs", [](const AbsorbingSpec& s, Pair r, const LatticeSpec& lat) {
            return s.absorbs(nc(r), lat);
        }, py::arg("r"), py::arg("lat"));

    py::class_<HittingField>(m, "HittingField")
        .def_property_readonly("lat", [](const HittingField& f) { return f.lat; })
        .def_property_readonly("spec", [](const HittingField& f) { return f.spec; })
        .def_readonly("residual", &HittingField::residual)
        .def_property_readonly("values", &field_array, "L x L array of expected hitting times.")
        .def("at", [](const HittingField& f, Pair r) { return f.at(nc(r)); }, py::arg("r"));

    m.def("solve_hitting", &solve_hitting, py::arg("lat"), py::arg("spec"), py::arg("tol") = 1e-10,
          py::arg("method") = SolveMethod::Iterative, py::arg("relaxation") = 1.9,
          py::arg("max_sweeps") = 1'000'000,
          "Expected hitting times of the absorbing disc for a simple random walk.");
    m.def("tau_random", &tau_random, py::arg("lat"), py::arg("m"), py::arg("tol") = 1e-10,
          py::arg("method") = SolveMethod::Iterative,
          "Random part of the delay: hitting times of the Manhattan disc of radius m.");
    m.def("tau_total", [](const HittingField& f, Pair r) { return tau_total(f, nc(r)); },
          py::arg("random_part"), py::arg("r"),
          "Total expected delay tau_m(r) = tau_{m,1}(r) + theta(d_pm(r,0), m).");

    py::class_<SandwichReport>(m, "SandwichReport")
        .def_readonly("m", &SandwichReport::m)
        .def_readonly("worst_lower", &SandwichReport::worst_lower)
        .def_readonly("worst_upper", &SandwichReport::worst_upper)
        .def("holds", &SandwichReport::holds, py::arg("slack") = 1e-6);

    m.def("sandwich_check", &sandwich_check, py::arg("lat"), py::arg("m"), py::arg("tol") = 1e-10,
          "Worst-case margins of T_m <= tau_{m,1} <= T_{m*sqrt(2)/2}.");

    m.def("tau_bar_semidet", &tau_bar_semidet, py::arg("m"), py::arg("lat"),
          "Average semi-deterministic delay part, exact closed form.");

    py::class_<DelayCurveEntry>(m, "DelayCurveEntry")
        .def_readonly("m", &DelayCurveEntry::m)
        .def_readonly("tau_bar", &DelayCurveEntry::tau_bar)
        .def_readonly("tau_rand", &DelayCurveEntry::tau_rand)
        .def_readonly("tau_semidet", &DelayCurveEntry::tau_semidet);

    py::class_<DelayCurve>(m, "DelayCurve")
        .def_property_readonly("lat", [](const DelayCurve& c) { return c.lat; })
        .def_readonly("entries", &DelayCurve::entries)
        .def("at", &DelayCurve::at, py::arg("m"), py::return_value_policy::copy);

    m.def("average_delay_curve", &average_delay_curve, py::arg("lat"), py::arg("ms"),
          py::arg("tol") = 1e-10, "Average delay, its random and semi-deterministic parts per m.");

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("slope", &FitResult::slope)
        .def_readonly("intercept", &FitResult::intercept)
        .def_readonly("r_squared", &FitResult::r_squared)
        .def_readonly("A", &FitResult::A)
        .def_readonly("B", &FitResult::B);

    m.def("fit_loglinear",
          [](const std::vector<FitPoint>& pts, std::size_t first_n, std::optional<int> L) {
              return fit_loglinear(pts, first_n, L);
          },
          py::arg("points"), py::arg("first_n"), py::arg("L") = std::nullopt,
          "Least squares of y against log x over the first `first_n` points.");

    m.def("brownian_u", &brownian_u, py::arg("rho"), py::arg("a"), py::arg("b"),
          "Expected time inside radius b before hitting radius a, for planar Brownian motion.");
    m.def("asymptotic_upper_bound",
          [](Pair r, double R, const LatticeSpec& lat) {
              return asymptotic_upper_bound(nc(r), R, lat);
          },
          py::arg("r"), py::arg("R"), py::arg("lat"),
          "Leading large-L upper bound L^2 log(||r||/R) - (||r||^2 - R^2).");
    m.def("asymptotic_upper_bound_norm", &asymptotic_upper_bound_norm, py::arg("norm_r"),
          py::arg("R"), py::arg("lat"));

    py::class_<ShapeEntry>(m, "ShapeEntry")
        .def_readonly("L", &ShapeEntry::L)
        .def_property_readonly("r", [](const ShapeEntry& e) { return pr(e.r); })
        .def_readonly("norm", &ShapeEntry::norm)
        .def_readonly("hitting_time", &ShapeEntry::hitting_time)
        .def_readonly("ratio", &ShapeEntry::ratio);

    py::class_<ShapeReport>(m, "ShapeReport")
        .def_readonly("R", &ShapeReport::R)
        .def_readonly("radius_fraction", &ShapeReport::radius_fraction)
        .def_readonly("entries", &ShapeReport::entries)
        .def("all_positive", &ShapeReport::all_positive)
        .def("ratio_min", &ShapeReport::ratio_min)
        .def("ratio_max", &ShapeReport::ratio_max)
        .def("spread", &ShapeReport::spread);

    m.def("lower_bound_shape_report", &lower_bound_shape_report, py::arg("lattice_sides"),
          py::arg("R"), py::arg("radius_fraction"), py::arg("tol") = 1e-10,
          "Hitting-time ratios across lattice sizes at a fixed radius fraction.");

    py::class_<CostModel>(m, "CostModel")
        .def(py::init([](double a, const LatticeSpec& lat, const DelayCurve& curve) {
                 return CostModel{a, lat, curve};
             }),
             py::arg("a"), py::arg("lat"), py::arg("curve"))
        .def_readonly("a", &CostModel::a);

    m.def("cost", &cost, py::arg("m"), py::arg("model"),
          "Per-node operating cost tau_bar_m + a * M(m).");
    m.def("argmin_cost", &argmin_cost, py::arg("model"),
          "Minimizing (m, cost); near-ties resolve toward the larger table.");
    m.def("optimal_m_analytic", &optimal_m_analytic, py::arg("a"), py::arg("A"), py::arg("lat"),
          "Closed-form minimizer of the small-m cost surrogate.");
}
