#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "latnet/routing.hpp"

namespace latnet {

// The unit of simulated traffic. A packet carries only its creation time and
// its destination; the id exists for bookkeeping.
struct Packet {
    long long created_at;
    NodeCoord destination;
    long long id;
};

struct StepParams {
    double lambda;  // per-node creation probability per step, in [0, 1]
    RoutingConfig routing;
};

struct DeliveryRecord {
    long long packet_id;
    long long delay;
};

// One simulation instance: per-node FIFO queues, a discrete clock, and one
// seeded stream. A packet created at clock k1 and destroyed during the step
// whose post-increment clock reads k2 has delay k2 - k1, so under full-table
// routing the delay of a lone packet equals d_pm exactly.
//
// Draw order within a step is fixed so runs are bit-reproducible:
//   1. creation scan, row-major: one Bernoulli draw per node, plus one
//      destination draw per created packet (no draws at all when lambda == 0);
//   2. forwarding scan, row-major: exactly one draw per forwarded packet,
//      against the queue snapshot taken after creation;
//   3. arrival mixing, row-major: Fisher-Yates per node, consuming draws only
//      when two or more packets arrive simultaneously.
class NetworkState {
public:
    NetworkState(const LatticeSpec& lat, std::uint64_t seed);

    // One parallel update: create, forward (destroying packets that reach
    // their destination), mix arrivals, advance the clock.
    void step(const StepParams& p);

    // Appends one packet with created_at = clock() to the queue at `at`.
    // Throws std::invalid_argument when at == destination.
    void inject(NodeCoord at, NodeCoord destination);

    const LatticeSpec& lattice() const { return lat_; }
    long long clock() const { return clock_; }
    long long created_total() const { return created_; }
    long long queued_total() const;
    int queue_len(NodeCoord r) const { return static_cast<int>(queues_[static_cast<size_t>(lat_.index(r))].size()); }
    const std::vector<DeliveryRecord>& delivered() const { return delivered_; }

private:
    LatticeSpec lat_;
    std::vector<std::deque<Packet>> queues_;
    std::vector<std::vector<Packet>> arrivals_;  // per-step scratch, kept for capacity
    long long clock_ = 0;
    long long created_ = 0;
    long long next_id_ = 0;
    Rng rng_;
    std::vector<DeliveryRecord> delivered_;
};

struct DelayStats {
    double mean;
    double std_error;  // 0 for a single trial
    std::vector<long long> samples;
};

// Monte Carlo delay of a lone packet from r0 to r_d: `trials` independent
// episodes with lambda = 0, episode t seeded with stream_seed(seed, t).
// Episodes walk the packet directly through select_next over an all-zero
// snapshot; with a single packet this is draw-for-draw identical to stepping
// a full NetworkState. Throws std::invalid_argument on r0 == r_d or
// trials < 1, std::runtime_error if an episode exceeds 1e9 steps.
DelayStats single_packet_delay(NodeCoord r0, NodeCoord r_d, const RoutingConfig& routing,
                               const LatticeSpec& lat, long long trials, std::uint64_t seed);

struct LoadedSummary {
    long long created;
    long long delivered;
    double mean_delay;  // 0 when nothing was delivered
    long long queued;   // packets still enqueued after the last step
};

// Runs `steps` updates from an empty network. Deterministic given seed.
LoadedSummary run_loaded(const LatticeSpec& lat, const StepParams& p, long long steps,
                         std::uint64_t seed);

}  // namespace latnet
