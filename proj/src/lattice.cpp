#include "latnet/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace latnet {

LatticeSpec::LatticeSpec(int side) : side_(side) {
    if (side < 4 || side % 2 != 0) {
        throw std::invalid_argument("LatticeSpec: side must be even and >= 4, got " +
                                    std::to_string(side));
    }
}

namespace {

// min(|a - b|, L - |a - b|): per-axis distance on the ring of length L.
inline int axis_dist(int a, int b, int L) {
    const int d = std::abs(a - b);
    return std::min(d, L - d);
}

inline int wrap(int v, int L) {
    if (v < 0) return v + L;
    if (v >= L) return v - L;
    return v;
}

}  // namespace

int d_pm(NodeCoord r1, NodeCoord r2, const LatticeSpec& lat) {
    const int L = lat.L();
    return axis_dist(r1.i, r2.i, L) + axis_dist(r1.j, r2.j, L);
}

int d_pe_sq(NodeCoord r1, NodeCoord r2, const LatticeSpec& lat) {
    const int L = lat.L();
    const int dx = axis_dist(r1.i, r2.i, L);
    const int dy = axis_dist(r1.j, r2.j, L);
    return dx * dx + dy * dy;
}

double d_pe(NodeCoord r1, NodeCoord r2, const LatticeSpec& lat) {
    return std::sqrt(static_cast<double>(d_pe_sq(r1, r2, lat)));
}

double pe_norm(NodeCoord r, const LatticeSpec& lat) {
    return d_pe(r, NodeCoord{0, 0}, lat);
}

std::array<NodeCoord, 4> neighbors(NodeCoord r, const LatticeSpec& lat) {
    const int L = lat.L();
    return {NodeCoord{wrap(r.i + 1, L), r.j}, NodeCoord{wrap(r.i - 1, L), r.j},
            NodeCoord{r.i, wrap(r.j + 1, L)}, NodeCoord{r.i, wrap(r.j - 1, L)}};
}

int theta(int y, int m) { return y < m ? y : m; }

int ring_count(int k, const LatticeSpec& lat) {
    const int L = lat.L();
    if (k < 0 || k > L) {
        throw std::out_of_range("ring_count: k must be in [0, L], got " + std::to_string(k));
    }
    if (k == 0 || k == L) return 1;
    if (k < L / 2) return 4 * k;
    if (k == L / 2) return 2 * L - 2;
    return 4 * (L - k);
}

int table_size(int m, const LatticeSpec& lat) {
    const int L = lat.L();
    if (m < 1 || m > L) {
        throw std::out_of_range("table_size: m must be in [1, L], got " + std::to_string(m));
    }
    if (m == L) return L * L - 1;
    if (m < L / 2) return 2 * m * (m + 1);
    return L * L - 2 * (L - m) * (L - m - 1) - 2;
}

}  // namespace latnet
