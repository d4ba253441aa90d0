#pragma once

#include "rpcfrag/partition.hpp"
#include "rpcfrag/random.hpp"

#include <cstddef>
#include <vector>

namespace rpcfrag {

inline constexpr std::size_t max_node_atoms = 1000000;

// Atoms of a Poisson measure with intensity domain_length * x r^(-1-x) dr,
// produced in decreasing order. Lowering the threshold continues the same
// realization, so no atom is ever redrawn.
class PoissonAtomStream {
public:
    PoissonAtomStream(double x, double domain_length);

    double x() const { return x_; }
    double next(RandomStream& rng);
    // Atoms >= thr not yet taken, appended in decreasing order.
    void take_above(double thr, RandomStream& rng, std::vector<double>& out);

private:
    double x_;
    double domain_length_;
    double arrival_ = 0.0;
    bool has_pending_ = false;
    double pending_ = 0.0;
};

std::vector<double> sample_poisson_atoms(double x, double eps, double domain_length,
                                         RandomStream& rng);

// Expected total size of the atoms below thr per unit domain length.
double small_atom_mass(double x, double thr);

struct CascadeNode {
    std::vector<int> index;  // (i_1, ..., i_k), 1-based, decreasing atom order
    int parent = -1;         // position in the previous level
    int first_child = 0;     // position in the next level
    int child_count = 0;
    double weight = 0.0;     // normalized
    double dust = 0.0;       // normalized mass of the discarded children
};

struct CascadeTree {
    std::vector<double> xs;
    double eps = 0.0;
    double root_dust = 0.0;
    std::vector<std::vector<CascadeNode>> levels;
    // Level k bound: 1 - sum of stored normalized weights at level k.
    std::vector<double> truncation_bounds;
};

CascadeTree build_cascade(const std::vector<double>& xs, double eps, RandomStream& rng);

// Induced partitions of [n], one per level, from a single set of uniforms.
// A point landing in a dust region is a singleton from that level on.
std::vector<SetPartition> cascade_partitions(const CascadeTree& tree, int n, RandomStream& rng);

struct Jump {
    double location;
    double size;
};

struct SubordinatorPath {
    double x = 0.0;
    double domain_length = 0.0;
    double eps = 0.0;
    std::vector<Jump> jumps;  // sorted by location

    double range() const;
};

SubordinatorPath sample_subordinator(double x, double domain_length, double eps,
                                     RandomStream& rng);

// outer o inner: each inner jump is replaced by the total of the outer jumps
// falling inside the interval it covers.
SubordinatorPath compose_subordinators(const SubordinatorPath& outer,
                                       const SubordinatorPath& inner);

struct Interval {
    double left = 0.0;
    double right = 0.0;
    int parent = -1;
    double xi = 0.0;  // length in the subordinator's own coordinate

    double length() const { return right - left; }
};

struct IntervalFamily {
    double length = 0.0;  // the family lives in [0, length]
    std::vector<Interval> intervals;  // sorted by left end
};

struct NestedIntervals {
    std::vector<double> xs;
    double domain = 0.0;
    double eps = 0.0;
    std::vector<IntervalFamily> levels;
    std::vector<double> truncation_bounds;
};

// Level k uses the stable subordinator of index x_k / x_{k+1} (x_{p+1} = 1),
// so the final-coordinate lengths at level k follow the cascade at x_k.
NestedIntervals nested_intervals(const std::vector<double>& xs, double a, double eps,
                                 RandomStream& rng);

SetPartition partition_from_points(const IntervalFamily& family,
                                   const std::vector<double>& points);
SetPartition partition_from_intervals(const IntervalFamily& family, int n, RandomStream& rng);
std::vector<SetPartition> nested_partitions(const NestedIntervals& nested, int n,
                                            RandomStream& rng);

}  // namespace rpcfrag
