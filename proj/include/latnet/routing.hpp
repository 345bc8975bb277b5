#pragma once

#include <vector>

#include "latnet/lattice.hpp"
#include "latnet/rng.hpp"

namespace latnet {

// Cutoff parameter m in [1, L]. Destinations farther than m hops are treated
// as exactly m hops away, so m = 1 is a pure random walk and m = L (D_max)
// is shortest-path full-table routing.
struct RoutingConfig {
    int m;
    bool full_table;

    static RoutingConfig for_cutoff(int m, const LatticeSpec& lat);
    static RoutingConfig full(const LatticeSpec& lat) { return for_cutoff(lat.d_max(), lat); }
};

// Per-node queue lengths frozen at the start of a forwarding sub-step; all
// nodes decide simultaneously against this same state.
struct QueueSnapshot {
    explicit QueueSnapshot(const LatticeSpec& lat) : len(static_cast<size_t>(lat.node_count()), 0) {}
    std::vector<int> len;  // indexed by LatticeSpec::index
};

// A_m(r): the neighbours of r minimizing theta(d_pm(., r_d), m), in the fixed
// (+x, -x, +y, -y) order. Throws std::invalid_argument when r == r_d (a packet
// at its destination is destroyed, never routed).
std::vector<NodeCoord> candidate_set(NodeCoord r, NodeCoord r_d, const RoutingConfig& cfg,
                                     const LatticeSpec& lat);

// One routing decision: among the candidates with the smallest snapshot queue,
// pick uniformly. Consumes exactly one draw from rng per call, also when the
// choice is forced, so the stream position is a pure function of the call
// count. Throws std::invalid_argument when r == r_d.
NodeCoord select_next(NodeCoord r, NodeCoord r_d, const RoutingConfig& cfg,
                      const QueueSnapshot& q, const LatticeSpec& lat, Rng& rng);

}  // namespace latnet
