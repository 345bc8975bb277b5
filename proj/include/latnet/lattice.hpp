#pragma once

#include <array>
#include <compare>

namespace latnet {

// A site (i, j) on the L x L torus, 0-based in both axes.
struct NodeCoord {
    int i = 0;
    int j = 0;
    friend constexpr bool operator==(const NodeCoord&, const NodeCoord&) = default;
    friend constexpr auto operator<=>(const NodeCoord&, const NodeCoord&) = default;
};

// Square lattice with periodic boundary conditions. Only even L >= 4 is
// accepted: the ring-count and semi-deterministic closed forms assume an even
// side, and the maximum d_pm distance is then exactly L.
class LatticeSpec {
public:
    explicit LatticeSpec(int side);

    int L() const { return side_; }
    int d_max() const { return side_; }
    int node_count() const { return side_ * side_; }

    // Row-major linear index.
    int index(NodeCoord r) const { return r.i * side_ + r.j; }
    NodeCoord coord(int idx) const { return {idx / side_, idx % side_}; }
    bool contains(NodeCoord r) const {
        return r.i >= 0 && r.i < side_ && r.j >= 0 && r.j < side_;
    }

    friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;

private:
    int side_;
};

// Periodic Manhattan metric: hop distance on the 4-regular torus graph.
int d_pm(NodeCoord r1, NodeCoord r2, const LatticeSpec& lat);

// Periodic Euclidean metric: sqrt(dx^2 + dy^2) with per-axis wraparound.
double d_pe(NodeCoord r1, NodeCoord r2, const LatticeSpec& lat);

// Exact integer dx^2 + dy^2 of the periodic Euclidean metric.
int d_pe_sq(NodeCoord r1, NodeCoord r2, const LatticeSpec& lat);

// d_pe(r, 0).
double pe_norm(NodeCoord r, const LatticeSpec& lat);

// The four nearest neighbours of r, in the fixed order (+x, -x, +y, -y).
// This order is part of the reproducibility contract of routing tie-breaks.
std::array<NodeCoord, 4> neighbors(NodeCoord r, const LatticeSpec& lat);

// Distance cutoff: y if y < m, else m.
int theta(int y, int m);

// N(k): number of sites at d_pm distance exactly k from a fixed node.
// Throws std::out_of_range unless 0 <= k <= L.
int ring_count(int k, const LatticeSpec& lat);

// M(m): number of sites x with 1 <= d_pm(x, 0) <= m, i.e. the partial routing
// table size. Throws std::out_of_range unless 1 <= m <= L. M(L) = L^2 - 1 by
// continuity of the partial sums.
int table_size(int m, const LatticeSpec& lat);

}  // namespace latnet
