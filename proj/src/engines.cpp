#include "rpcfrag/engines.hpp"

#include "rpcfrag/error.hpp"
#include "rpcfrag/laws.hpp"
#include "rpcfrag/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

namespace rpcfrag {

namespace {

constexpr int max_enumeration_cap = 12;

// Integer partitions of m into at least two parts, parts nonincreasing.
void integer_partitions(int remaining, int max_part, std::vector<int>& cur,
                        std::vector<std::vector<int>>& out)
{
    if (remaining == 0) {
        if (cur.size() >= 2) out.push_back(cur);
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        cur.push_back(part);
        integer_partitions(remaining - part, part, cur, out);
        cur.pop_back();
    }
}

// Number of set partitions of [m] whose block sizes are the given parts.
double set_partition_count(const std::vector<int>& parts)
{
    int m = 0;
    for (int part : parts) m += part;
    double lg = std::lgamma(m + 1.0);
    for (int part : parts) lg -= std::lgamma(part + 1.0);
    for (std::size_t i = 0; i < parts.size();) {
        std::size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        lg -= std::lgamma(static_cast<double>(j - i) + 1.0);
        i = j;
    }
    return std::exp(lg);
}

SetPartition from_blocks(const std::vector<Block>& blocks, int n)
{
    std::vector<Block> live;
    for (const auto& b : blocks)
        if (!b.empty()) live.push_back(b);
    return canonicalize(live, n);
}

int changed_blocks(const SetPartition& a, const SetPartition& b)
{
    // Blocks of a that are not blocks of b.
    std::set<Block> bs(b.blocks().begin(), b.blocks().end());
    int count = 0;
    for (const auto& blk : a.blocks())
        if (!bs.count(blk)) ++count;
    return count;
}

}  // namespace

const char* direction_name(Direction d)
{
    return d == Direction::fragmentation ? "fragmentation" : "coalescent";
}

void validate_config(const EngineConfig& cfg)
{
    require(cfg.enumeration_cap >= 2 && cfg.enumeration_cap <= max_enumeration_cap,
            ErrorCode::configuration, "enumeration cap must lie in [2, 12]");
    require(cfg.bisection_tol > 0.0 && cfg.bisection_tol < 1e-3, ErrorCode::configuration,
            "bisection tolerance must lie in (0, 1e-3)");
}

void validate_trajectory(const Trajectory& traj)
{
    require(!traj.events.empty(), ErrorCode::integrity, "trajectory has no initial state");
    for (std::size_t i = 1; i < traj.events.size(); ++i) {
        const auto& prev = traj.events[i - 1];
        const auto& next = traj.events[i];
        require(next.time > prev.time, ErrorCode::integrity, "event times must increase");
        require(next.partition.n() == traj.n && prev.partition.n() == traj.n,
                ErrorCode::integrity, "ground set changed along the trajectory");
        if (traj.direction == Direction::fragmentation) {
            require(refines(next.partition, prev.partition) &&
                        changed_blocks(prev.partition, next.partition) == 1,
                    ErrorCode::integrity, "fragmentation step must split exactly one block");
        } else {
            require(refines(prev.partition, next.partition) &&
                        changed_blocks(next.partition, prev.partition) == 1 &&
                        next.partition.block_count() < prev.partition.block_count(),
                    ErrorCode::integrity, "coalescent step must merge blocks into one");
        }
    }
}

std::vector<SetPartition> sample_marginal_semigroup(const std::vector<double>& ts, int n,
                                                    RandomStream& rng)
{
    require(!ts.empty(), ErrorCode::argument, "at least one time is required");
    require(n >= 1, ErrorCode::argument, "n must be positive");
    for (std::size_t j = 0; j < ts.size(); ++j) {
        require(ts[j] > 0.0 && ts[j] < 1.0, ErrorCode::domain, "times must lie in (0,1)");
        if (j > 0) require(ts[j] > ts[j - 1], ErrorCode::argument, "times must increase strictly");
    }
    std::vector<SetPartition> out;
    out.reserve(ts.size());
    out.push_back(sample_crp(PdParams::proper(ts[0], 0.0), n, rng));
    for (std::size_t j = 1; j < ts.size(); ++j) {
        // PD(t', -t) splits each block between t and t'.
        const PdParams split = PdParams::proper(ts[j], -ts[j - 1]);
        const SetPartition& prev = out.back();
        std::vector<SetPartition> splitters;
        splitters.reserve(static_cast<std::size_t>(prev.block_count()));
        for (const auto& b : prev.blocks())
            splitters.push_back(sample_crp(split, static_cast<int>(b.size()), rng));
        out.push_back(frag_partition(prev, splitters));
    }
    return out;
}

double invert_survival(double t0, int m, double u, double tol)
{
    require(t0 >= 0.0 && t0 < 1.0, ErrorCode::domain, "time must lie in [0,1)");
    require(u > 0.0 && u < 1.0, ErrorCode::argument, "level must lie in (0,1)");
    require(m >= 2, ErrorCode::domain, "a block needs at least two elements to split");
    double lo = t0;
    double hi = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
        if (hi - lo <= tol) return 0.5 * (lo + hi);
        const double mid = 0.5 * (lo + hi);
        if (mid >= 1.0 || mid <= lo) return mid;
        if (survival(t0, mid, m) > u)
            lo = mid;
        else
            hi = mid;
    }
    fail(ErrorCode::numeric, "survival inversion did not converge");
}

SetPartition sample_splitter(double t, int m, RandomStream& rng)
{
    require(t > 0.0 && t < 1.0, ErrorCode::domain, "time must lie in (0,1)");
    require(m >= 2 && m <= max_enumeration_cap, ErrorCode::configuration,
            "block size outside the enumeration range");
    // Rates depend on the block sizes only, so pick the size profile with
    // weight (number of partitions) * rate, then a uniform partition of it.
    std::vector<std::vector<int>> shapes;
    std::vector<int> cur;
    integer_partitions(m, m, cur, shapes);
    std::vector<double> cumulative(shapes.size());
    double total = 0.0;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        total += set_partition_count(shapes[i]) * jump_rate(t, shapes[i]);
        cumulative[i] = total;
    }
    const double target = rng.uniform() * total;
    std::size_t pick = static_cast<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), target) - cumulative.begin());
    pick = std::min(pick, shapes.size() - 1);

    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size() - 1; i > 0; --i)
        std::swap(order[i], order[rng.below(i + 1)]);
    std::vector<int> labels(static_cast<std::size_t>(m));
    std::size_t pos = 0;
    int label = 0;
    for (int part : shapes[pick]) {
        for (int j = 0; j < part; ++j) labels[static_cast<std::size_t>(order[pos++])] = label;
        ++label;
    }
    return SetPartition::from_labels(labels);
}

Trajectory simulate_jump_chain(int n, double t_end, const EngineConfig& cfg, RandomStream& rng)
{
    validate_config(cfg);
    require(n >= 1, ErrorCode::argument, "n must be positive");
    require(t_end > 0.0 && t_end < 1.0, ErrorCode::domain, "end time must lie in (0,1)");
    require(n <= cfg.enumeration_cap, ErrorCode::configuration,
            "block size exceeds the enumeration cap");

    Trajectory traj;
    traj.n = n;
    traj.direction = Direction::fragmentation;
    traj.horizon = t_end;
    traj.events.push_back({0.0, SetPartition::trivial(n)});

    std::vector<Block> blocks;
    blocks.push_back(SetPartition::trivial(n).block(0));
    using Pending = std::pair<double, std::size_t>;
    std::priority_queue<Pending, std::vector<Pending>, std::greater<Pending>> queue;
    auto schedule = [&](std::size_t id, double t0) {
        const int m = static_cast<int>(blocks[id].size());
        if (m >= 2) queue.emplace(invert_survival(t0, m, rng.uniform_open(), cfg.bisection_tol), id);
    };
    schedule(0, 0.0);
    while (!queue.empty()) {
        const auto [tau, id] = queue.top();
        queue.pop();
        if (tau > t_end) break;
        const Block parent = blocks[id];
        blocks[id].clear();
        const SetPartition splitter = sample_splitter(tau, static_cast<int>(parent.size()), rng);
        for (const auto& piece : splitter.blocks()) {
            Block child;
            for (int pos : piece) child.push_back(parent[static_cast<std::size_t>(pos - 1)]);
            blocks.push_back(std::move(child));
            schedule(blocks.size() - 1, tau);
        }
        traj.events.push_back({tau, from_blocks(blocks, n)});
    }
    return traj;
}

Trajectory simulate_coalescent(int n, double horizon, RandomStream& rng)
{
    require(n >= 1, ErrorCode::argument, "n must be positive");
    require(horizon > 0.0, ErrorCode::domain, "horizon must be positive");
    Trajectory traj;
    traj.n = n;
    traj.direction = Direction::coalescent;
    traj.horizon = horizon;
    traj.events.push_back({0.0, SetPartition::singletons(n)});

    std::vector<Block> blocks = SetPartition::singletons(n).blocks();
    double time = 0.0;
    while (blocks.size() > 1) {
        const int b = static_cast<int>(blocks.size());
        time += rng.exponential() / (b - 1.0);
        if (time > horizon) break;
        // C(b,k) lambda_{b,k} = b / (k (k-1)), summing to b - 1.
        double target = rng.uniform() * (b - 1.0);
        int k = 2;
        for (; k < b; ++k) {
            const double w = static_cast<double>(b) / (k * (k - 1.0));
            if (target < w) break;
            target -= w;
        }
        std::vector<std::size_t> idx(blocks.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        for (int i = 0; i < k; ++i)
            std::swap(idx[static_cast<std::size_t>(i)],
                      idx[static_cast<std::size_t>(i) + rng.below(idx.size() - static_cast<std::size_t>(i))]);
        std::vector<std::size_t> chosen(idx.begin(), idx.begin() + k);
        std::sort(chosen.begin(), chosen.end());
        Block merged;
        for (std::size_t c : chosen) merged.insert(merged.end(), blocks[c].begin(), blocks[c].end());
        for (std::size_t c = chosen.size(); c-- > 0;)
            blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(chosen[c]));
        blocks.push_back(std::move(merged));
        traj.events.push_back({time, from_blocks(blocks, n)});
    }
    return traj;
}

const SetPartition& state_at(const Trajectory& traj, double u)
{
    require(!traj.events.empty(), ErrorCode::argument, "empty trajectory");
    require(u >= traj.events.front().time, ErrorCode::argument, "time precedes the trajectory");
    const auto it = std::upper_bound(traj.events.begin(), traj.events.end(), u,
                                     [](double v, const TrajectoryEvent& e) { return v < e.time; });
    return (it - 1)->partition;
}

std::vector<SetPartition> states_in_window(const Trajectory& traj, double lo, double hi)
{
    require(lo <= hi, ErrorCode::argument, "window must satisfy lo <= hi");
    std::vector<SetPartition> out{state_at(traj, lo)};
    for (const auto& e : traj.events)
        if (e.time > lo && e.time <= hi) out.push_back(e.partition);
    return out;
}

Trajectory reverse_time(const Trajectory& traj, double lo, double hi)
{
    require(lo > 0.0, ErrorCode::domain, "time 0 lies outside the image of the time reversal");
    require(lo < hi, ErrorCode::argument, "window must satisfy lo < hi");
    require(!traj.events.empty() && lo >= traj.events.front().time && hi <= traj.horizon,
            ErrorCode::argument, "window must lie inside the trajectory");
    const bool frag = traj.direction == Direction::fragmentation;
    if (frag) require(hi < 1.0, ErrorCode::domain, "fragmentation times must lie below 1");
    auto map = [frag](double u) { return frag ? -std::log(u) : std::exp(-u); };

    Trajectory out;
    out.n = traj.n;
    out.direction = frag ? Direction::coalescent : Direction::fragmentation;
    out.horizon = map(lo);
    out.events.push_back({map(hi), state_at(traj, hi)});
    for (std::size_t i = traj.events.size(); i-- > 1;) {
        const double u = traj.events[i].time;
        if (u > lo && u < hi) out.events.push_back({map(u), traj.events[i - 1].partition});
    }
    return out;
}

std::vector<std::pair<double, Rational>> tagged_fragment_path(const Trajectory& traj, int i)
{
    require(i >= 1 && i <= traj.n, ErrorCode::argument, "tagged element out of range");
    std::vector<std::pair<double, Rational>> out;
    out.reserve(traj.events.size());
    for (const auto& e : traj.events) {
        const auto& b = e.partition.block(e.partition.block_index_of(i));
        out.emplace_back(e.time, Rational(static_cast<std::int64_t>(b.size()), traj.n));
    }
    return out;
}

}  // namespace rpcfrag
