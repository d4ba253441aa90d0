#pragma once

#include "rpcfrag/partition.hpp"
#include "rpcfrag/random.hpp"

#include <utility>
#include <vector>

namespace rpcfrag {

enum class Direction { fragmentation, coalescent };

const char* direction_name(Direction d);

struct TrajectoryEvent {
    double time;
    SetPartition partition;
};

// The first event is the initial state; each later event is a jump.
struct Trajectory {
    int n = 0;
    Direction direction = Direction::fragmentation;
    double horizon = 0.0;
    std::vector<TrajectoryEvent> events;
};

struct EngineConfig {
    int enumeration_cap = 10;
    double bisection_tol = 1e-12;
    double horizon = 0.0;
};

void validate_config(const EngineConfig& cfg);

// Throws an integrity error unless times increase strictly and every jump is
// a single split (fragmentation) or a single merge (coalescent).
void validate_trajectory(const Trajectory& traj);

std::vector<SetPartition> sample_marginal_semigroup(const std::vector<double>& ts, int n,
                                                    RandomStream& rng);

// First time a block of size m, intact at t0, splits, given the uniform u
// that the survival function must equal.
double invert_survival(double t0, int m, double u, double tol);

// Splitter of a block of size m at time t, drawn from the jump rates
// normalized over the nontrivial partitions of [m].
SetPartition sample_splitter(double t, int m, RandomStream& rng);

Trajectory simulate_jump_chain(int n, double t_end, const EngineConfig& cfg, RandomStream& rng);

Trajectory simulate_coalescent(int n, double horizon, RandomStream& rng);

// Maps fragmentation time t to coalescent time -ln t and back (t = e^(-s)),
// keeping the input window [lo, hi] and reversing event order.
Trajectory reverse_time(const Trajectory& traj, double lo, double hi);

// State at time u (the last event at or before u).
const SetPartition& state_at(const Trajectory& traj, double u);
// State at lo followed by every state entered in (lo, hi].
std::vector<SetPartition> states_in_window(const Trajectory& traj, double lo, double hi);

std::vector<std::pair<double, Rational>> tagged_fragment_path(const Trajectory& traj, int i = 1);

}  // namespace rpcfrag
