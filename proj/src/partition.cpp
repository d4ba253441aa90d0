#include "rpcfrag/partition.hpp"

#include "rpcfrag/error.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <unordered_map>

namespace rpcfrag {

SetPartition SetPartition::trivial(int n)
{
    require(n >= 1, ErrorCode::argument, "partition size must be positive");
    Block all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i + 1;
    return canonicalize({all}, n);
}

SetPartition SetPartition::singletons(int n)
{
    require(n >= 1, ErrorCode::argument, "partition size must be positive");
    std::vector<Block> raw;
    raw.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) raw.push_back({i});
    return canonicalize(raw, n);
}

SetPartition SetPartition::from_labels(const std::vector<int>& labels)
{
    require(!labels.empty(), ErrorCode::argument, "empty label vector");
    // Relabel in order of first appearance; this is the canonical block order.
    std::unordered_map<int, std::size_t> slot;
    SetPartition out;
    out.n_ = static_cast<int>(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, fresh] = slot.try_emplace(labels[i], out.blocks_.size());
        if (fresh) out.blocks_.emplace_back();
        out.blocks_[it->second].push_back(static_cast<int>(i) + 1);
    }
    return out;
}

std::vector<int> SetPartition::sizes() const
{
    std::vector<int> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) out.push_back(static_cast<int>(b.size()));
    return out;
}

std::vector<int> SetPartition::labels() const
{
    std::vector<int> out(static_cast<std::size_t>(n_), 0);
    for (std::size_t b = 0; b < blocks_.size(); ++b)
        for (int e : blocks_[b]) out[static_cast<std::size_t>(e - 1)] = static_cast<int>(b);
    return out;
}

int SetPartition::block_index_of(int element) const
{
    require(element >= 1 && element <= n_, ErrorCode::argument, "element outside ground set");
    for (std::size_t b = 0; b < blocks_.size(); ++b)
        if (std::binary_search(blocks_[b].begin(), blocks_[b].end(), element))
            return static_cast<int>(b);
    fail(ErrorCode::integrity, "element not covered by partition");
}

bool SetPartition::operator<(const SetPartition& other) const
{
    if (n_ != other.n_) return n_ < other.n_;
    return labels() < other.labels();
}

SetPartition canonicalize(const std::vector<Block>& raw_blocks, int n)
{
    require(n >= 1, ErrorCode::malformed_partition, "ground set must be nonempty");
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    SetPartition out;
    out.n_ = n;
    for (const auto& raw : raw_blocks) {
        require(!raw.empty(), ErrorCode::malformed_partition, "empty block");
        Block b = raw;
        std::sort(b.begin(), b.end());
        for (int e : b) {
            if (e < 1 || e > n)
                fail(ErrorCode::malformed_partition,
                     "element " + std::to_string(e) + " outside {1.." + std::to_string(n) + "}");
            if (seen[static_cast<std::size_t>(e)])
                fail(ErrorCode::malformed_partition,
                     "element " + std::to_string(e) + " appears in two blocks");
            seen[static_cast<std::size_t>(e)] = 1;
        }
        out.blocks_.push_back(std::move(b));
    }
    for (int e = 1; e <= n; ++e)
        if (!seen[static_cast<std::size_t>(e)])
            fail(ErrorCode::malformed_partition,
                 "element " + std::to_string(e) + " not covered");
    std::sort(out.blocks_.begin(), out.blocks_.end(),
              [](const Block& a, const Block& b) { return a.front() < b.front(); });
    return out;
}

SetPartition canonicalize(const std::vector<Block>& raw_blocks)
{
    std::size_t count = 0;
    for (const auto& b : raw_blocks) count += b.size();
    require(count >= 1, ErrorCode::malformed_partition, "partition has no elements");
    return canonicalize(raw_blocks, static_cast<int>(count));
}

SetPartition restrict(const SetPartition& pi, int n)
{
    require(n >= 1 && n <= pi.n(), ErrorCode::argument, "restriction size out of range");
    std::vector<Block> raw;
    for (const auto& b : pi.blocks()) {
        Block part;
        for (int e : b)
            if (e <= n) part.push_back(e);
        if (!part.empty()) raw.push_back(std::move(part));
    }
    return canonicalize(raw, n);
}

SetPartition frag_partition(const SetPartition& pi, const std::vector<SetPartition>& splitters)
{
    require(static_cast<int>(splitters.size()) == pi.block_count(), ErrorCode::argument,
            "one splitter per block is required");
    std::vector<Block> raw;
    for (int i = 0; i < pi.block_count(); ++i) {
        const Block& b = pi.block(i);
        const SetPartition& sp = splitters[static_cast<std::size_t>(i)];
        require(sp.n() >= static_cast<int>(b.size()), ErrorCode::argument,
                "splitter ground set smaller than its block");
        for (const auto& sb : sp.blocks()) {
            Block part;
            for (int pos : sb) {
                if (pos > static_cast<int>(b.size())) break;
                part.push_back(b[static_cast<std::size_t>(pos - 1)]);
            }
            if (!part.empty()) raw.push_back(std::move(part));
        }
    }
    return canonicalize(raw, pi.n());
}

bool refines(const SetPartition& fine, const SetPartition& coarse)
{
    if (fine.n() != coarse.n()) return false;
    const auto lab = coarse.labels();
    for (const auto& b : fine.blocks())
        for (int e : b)
            if (lab[static_cast<std::size_t>(e - 1)] != lab[static_cast<std::size_t>(b.front() - 1)])
                return false;
    return true;
}

std::vector<Rational> block_frequencies(const SetPartition& pi)
{
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(pi.block_count()));
    for (const auto& b : pi.blocks())
        out.emplace_back(static_cast<std::int64_t>(b.size()), pi.n());
    return out;
}

double MassPartition::total() const
{
    double s = 0.0;
    for (double m : masses) s += m;
    return s;
}

MassPartition make_mass_partition(std::vector<double> masses, double dust_bound)
{
    require(dust_bound >= 0.0, ErrorCode::argument, "dust bound must be nonnegative");
    double sum = 0.0;
    for (double m : masses) {
        require(m >= 0.0 && m <= 1.0, ErrorCode::argument, "mass outside [0,1]");
        sum += m;
    }
    require(sum <= 1.0 + 1e-12, ErrorCode::argument, "masses sum above 1");
    std::sort(masses.begin(), masses.end(), std::greater<double>());
    return MassPartition{std::move(masses), dust_bound};
}

MassPartition coag_mass(const MassPartition& s, const SetPartition& pi)
{
    for (std::size_t j = static_cast<std::size_t>(pi.n()); j < s.masses.size(); ++j)
        if (s.masses[j] != 0.0)
            fail(ErrorCode::argument, "mass index " + std::to_string(j + 1) +
                                          " outside the coagulating partition");
    std::vector<double> sums;
    sums.reserve(static_cast<std::size_t>(pi.block_count()));
    for (const auto& b : pi.blocks()) {
        double acc = 0.0;
        for (int idx : b)
            if (static_cast<std::size_t>(idx) <= s.masses.size())
                acc += s.masses[static_cast<std::size_t>(idx - 1)];
        sums.push_back(acc);
    }
    std::sort(sums.begin(), sums.end(), std::greater<double>());
    return MassPartition{std::move(sums), s.dust_bound};
}

MassPartition frag_mass(const MassPartition& s, const std::vector<MassPartition>& splitters)
{
    require(splitters.size() == s.masses.size(), ErrorCode::argument,
            "one splitter per enumerated mass is required");
    std::vector<double> out;
    double dust = s.dust_bound;
    for (std::size_t i = 0; i < s.masses.size(); ++i) {
        for (double m : splitters[i].masses) out.push_back(s.masses[i] * m);
        dust += s.masses[i] * splitters[i].dust_bound;
    }
    std::sort(out.begin(), out.end(), std::greater<double>());
    return MassPartition{std::move(out), dust};
}

}  // namespace rpcfrag
