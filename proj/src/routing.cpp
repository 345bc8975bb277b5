#include "latnet/routing.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace latnet {

RoutingConfig RoutingConfig::for_cutoff(int m, const LatticeSpec& lat) {
    if (m < 1 || m > lat.d_max()) {
        throw std::invalid_argument("RoutingConfig: m must be in [1, " +
                                    std::to_string(lat.d_max()) + "], got " + std::to_string(m));
    }
    return RoutingConfig{m, m == lat.d_max()};
}

namespace {

// Fills out[0..n) with the theta-minimizing neighbours, preserving the
// (+x, -x, +y, -y) order. Returns n.
int candidate_list(NodeCoord r, NodeCoord r_d, const RoutingConfig& cfg, const LatticeSpec& lat,
                   std::array<NodeCoord, 4>& out) {
    if (r == r_d) {
        throw std::invalid_argument("routing: packet already at its destination");
    }
    const auto nbr = neighbors(r, lat);
    int best = std::numeric_limits<int>::max();
    int n = 0;
    for (const NodeCoord c : nbr) {
        const int t = theta(d_pm(c, r_d, lat), cfg.m);
        if (t < best) {
            best = t;
            n = 0;
        }
        if (t == best) out[n++] = c;
    }
    return n;
}

}  // namespace

std::vector<NodeCoord> candidate_set(NodeCoord r, NodeCoord r_d, const RoutingConfig& cfg,
                                     const LatticeSpec& lat) {
    std::array<NodeCoord, 4> buf;
    const int n = candidate_list(r, r_d, cfg, lat, buf);
    return std::vector<NodeCoord>(buf.begin(), buf.begin() + n);
}

NodeCoord select_next(NodeCoord r, NodeCoord r_d, const RoutingConfig& cfg,
                      const QueueSnapshot& q, const LatticeSpec& lat, Rng& rng) {
    std::array<NodeCoord, 4> cand;
    const int n = candidate_list(r, r_d, cfg, lat, cand);

    std::array<NodeCoord, 4> best;
    int nb = 0;
    int qmin = std::numeric_limits<int>::max();
    for (int k = 0; k < n; ++k) {
        const int ql = q.len[static_cast<size_t>(lat.index(cand[k]))];
        if (ql < qmin) {
            qmin = ql;
            nb = 0;
        }
        if (ql == qmin) best[nb++] = cand[k];
    }
    return best[rng.below(static_cast<std::uint32_t>(nb))];
}

}  // namespace latnet
