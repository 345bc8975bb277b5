#include "latnet/simulator.hpp"

#include <cmath>
#include <stdexcept>

namespace latnet {

NetworkState::NetworkState(const LatticeSpec& lat, std::uint64_t seed)
    : lat_(lat),
      queues_(static_cast<size_t>(lat.node_count())),
      arrivals_(static_cast<size_t>(lat.node_count())),
      rng_(seed) {}

long long NetworkState::queued_total() const {
    long long total = 0;
    for (const auto& q : queues_) total += static_cast<long long>(q.size());
    return total;
}

void NetworkState::inject(NodeCoord at, NodeCoord destination) {
    if (at == destination) {
        throw std::invalid_argument("inject: packet would start at its destination");
    }
    queues_[static_cast<size_t>(lat_.index(at))].push_back(Packet{clock_, destination, next_id_++});
    ++created_;
}

void NetworkState::step(const StepParams& p) {
    if (p.lambda < 0.0 || p.lambda > 1.0) {
        throw std::invalid_argument("step: lambda must be in [0, 1]");
    }
    const int n = lat_.node_count();

    // Sub-step 1: creation. Destination uniform over the other n-1 nodes.
    if (p.lambda > 0.0) {
        for (int idx = 0; idx < n; ++idx) {
            if (!rng_.bernoulli(p.lambda)) continue;
            const std::uint32_t pick = rng_.below(static_cast<std::uint32_t>(n - 1));
            const int dst = pick >= static_cast<std::uint32_t>(idx) ? static_cast<int>(pick) + 1
                                                                    : static_cast<int>(pick);
            queues_[static_cast<size_t>(idx)].push_back(Packet{clock_, lat_.coord(dst), next_id_++});
            ++created_;
        }
    }

    // Sub-step 2: forwarding against the frozen snapshot.
    QueueSnapshot snap(lat_);
    for (int idx = 0; idx < n; ++idx) {
        snap.len[static_cast<size_t>(idx)] = static_cast<int>(queues_[static_cast<size_t>(idx)].size());
    }
    for (int idx = 0; idx < n; ++idx) {
        auto& q = queues_[static_cast<size_t>(idx)];
        if (q.empty()) continue;
        const Packet pkt = q.front();
        q.pop_front();
        const NodeCoord next = select_next(lat_.coord(idx), pkt.destination, p.routing, snap, lat_, rng_);
        if (next == pkt.destination) {
            delivered_.push_back(DeliveryRecord{pkt.id, clock_ + 1 - pkt.created_at});
        } else {
            arrivals_[static_cast<size_t>(lat_.index(next))].push_back(pkt);
        }
    }

    // Sub-step 3: enqueue simultaneous arrivals in random order.
    for (int idx = 0; idx < n; ++idx) {
        auto& arr = arrivals_[static_cast<size_t>(idx)];
        if (arr.empty()) continue;
        for (int k = static_cast<int>(arr.size()) - 1; k > 0; --k) {
            const int j = static_cast<int>(rng_.below(static_cast<std::uint32_t>(k + 1)));
            std::swap(arr[static_cast<size_t>(k)], arr[static_cast<size_t>(j)]);
        }
        auto& q = queues_[static_cast<size_t>(idx)];
        for (const Packet& pkt : arr) q.push_back(pkt);
        arr.clear();
    }

    ++clock_;
}

DelayStats single_packet_delay(NodeCoord r0, NodeCoord r_d, const RoutingConfig& routing,
                               const LatticeSpec& lat, long long trials, std::uint64_t seed) {
    if (r0 == r_d) {
        throw std::invalid_argument("single_packet_delay: r0 == r_d");
    }
    if (trials < 1) {
        throw std::invalid_argument("single_packet_delay: trials must be >= 1");
    }
    constexpr long long kStepCap = 1'000'000'000;  // recurrence guarantees termination; guards bugs

    const QueueSnapshot zero(lat);
    std::vector<long long> samples(static_cast<size_t>(trials));
    for (long long t = 0; t < trials; ++t) {
        Rng rng(stream_seed(seed, static_cast<std::uint64_t>(t)));
        NodeCoord pos = r0;
        long long steps = 0;
        while (pos != r_d) {
            pos = select_next(pos, r_d, routing, zero, lat, rng);
            if (++steps > kStepCap) {
                throw std::runtime_error("single_packet_delay: episode exceeded step cap");
            }
        }
        samples[static_cast<size_t>(t)] = steps;
    }

    double mean = 0.0;
    for (const long long s : samples) mean += static_cast<double>(s);
    mean /= static_cast<double>(trials);
    double var = 0.0;
    for (const long long s : samples) {
        const double d = static_cast<double>(s) - mean;
        var += d * d;
    }
    const double std_error =
        trials > 1 ? std::sqrt(var / static_cast<double>(trials - 1) / static_cast<double>(trials))
                   : 0.0;
    return DelayStats{mean, std_error, std::move(samples)};
}

LoadedSummary run_loaded(const LatticeSpec& lat, const StepParams& p, long long steps,
                         std::uint64_t seed) {
    if (steps < 1) {
        throw std::invalid_argument("run_loaded: steps must be >= 1");
    }
    NetworkState state(lat, seed);
    for (long long k = 0; k < steps; ++k) state.step(p);

    const auto& recs = state.delivered();
    double mean = 0.0;
    for (const auto& r : recs) mean += static_cast<double>(r.delay);
    if (!recs.empty()) mean /= static_cast<double>(recs.size());
    return LoadedSummary{state.created_total(), static_cast<long long>(recs.size()), mean,
                         state.queued_total()};
}

}  // namespace latnet
