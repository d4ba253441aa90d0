#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <vector>

namespace rpcfrag {

using Block = std::vector<int>;
using Rational = boost::rational<std::int64_t>;

// Partition of {1..n}. Elements inside a block are increasing and blocks are
// ordered by their least element, so equal partitions compare equal.
class SetPartition {
public:
    SetPartition() = default;

    static SetPartition trivial(int n);
    static SetPartition singletons(int n);
    // labels[i] is any block tag for element i+1; equal tags share a block.
    static SetPartition from_labels(const std::vector<int>& labels);

    int n() const { return n_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    const std::vector<Block>& blocks() const { return blocks_; }
    const Block& block(int i) const { return blocks_[static_cast<std::size_t>(i)]; }

    std::vector<int> sizes() const;
    // Block index (0-based, canonical order) of each element, i.e. the
    // restricted growth string.
    std::vector<int> labels() const;
    int block_index_of(int element) const;
    bool is_trivial() const { return blocks_.size() == 1; }

    bool operator==(const SetPartition& other) const
    {
        return n_ == other.n_ && blocks_ == other.blocks_;
    }
    bool operator!=(const SetPartition& other) const { return !(*this == other); }
    bool operator<(const SetPartition& other) const;

private:
    friend SetPartition canonicalize(const std::vector<Block>&, int);
    int n_ = 0;
    std::vector<Block> blocks_;
};

// Validates and orders raw blocks into canonical form on {1..n}.
SetPartition canonicalize(const std::vector<Block>& raw_blocks, int n);
// Ground set size taken as the number of listed elements.
SetPartition canonicalize(const std::vector<Block>& raw_blocks);

SetPartition restrict(const SetPartition& pi, int n);

// Splitter i acts on block i through the increasing bijection from the block
// onto {1..|block|}.
SetPartition frag_partition(const SetPartition& pi,
                            const std::vector<SetPartition>& splitters);

// True when every block of fine lies inside a block of coarse.
bool refines(const SetPartition& fine, const SetPartition& coarse);

std::vector<Rational> block_frequencies(const SetPartition& pi);

struct MassPartition {
    std::vector<double> masses;
    double dust_bound = 0.0;

    double total() const;
};

// Sorts masses into nonincreasing order and checks ranges.
MassPartition make_mass_partition(std::vector<double> masses, double dust_bound = 0.0);

// Block sums of s over the index partition pi (indices are 1-based; indices
// beyond the stored masses carry zero mass).
MassPartition coag_mass(const MassPartition& s, const SetPartition& pi);

MassPartition frag_mass(const MassPartition& s, const std::vector<MassPartition>& splitters);

}  // namespace rpcfrag
