#include "rpcfrag/engines.hpp"
#include "rpcfrag/error.hpp"
#include "rpcfrag/laws.hpp"
#include "rpcfrag/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace rpcfrag;
using doctest::Approx;

namespace {

bool within_3se(const std::vector<double>& values, double target, double slack = 0.0)
{
    const MeanEstimate e = estimate_mean(values);
    return std::fabs(e.mean - target) <= 3.0 * e.std_error + slack;
}

}  // namespace

TEST_CASE("semigroup marginals")
{
    const PartitionIndex index(4);
    std::vector<std::uint64_t> counts(index.size(), 0);
    std::vector<double> pair_kept;
    const double t1 = 0.3, t2 = 0.6;
    for (std::uint64_t r = 0; r < 100000; ++r) {
        RandomStream rng(40, r);
        const auto parts = sample_marginal_semigroup({t1, t2, 0.8}, 4, rng);
        ++counts[index(parts[0])];
        REQUIRE(refines(parts[1], parts[0]));
        REQUIRE(refines(parts[2], parts[1]));
        if (parts[0].block_index_of(1) == parts[0].block_index_of(2))
            pair_kept.push_back(parts[1].block_index_of(1) == parts[1].block_index_of(2) ? 1.0 : 0.0);
    }
    CHECK(compare_distributions(counts, exact_law_ruelle(t1, 4), CompareMode::chi_square, 1e-3).pass);
    CHECK(within_3se(pair_kept, (1.0 - t2) / (1.0 - t1)));
    RandomStream rng(40, 0);
    CHECK_THROWS_AS(sample_marginal_semigroup({0.5, 0.4}, 3, rng), Error);
    CHECK_THROWS_AS(sample_marginal_semigroup({1.0}, 3, rng), Error);
}

TEST_CASE("holding-time inversion")
{
    for (double t0 : {0.0, 0.3, 0.8})
        for (double u : {0.01, 0.3, 0.77, 0.999}) {
            CHECK(invert_survival(t0, 2, u, 1e-12) == Approx(1.0 - u * (1.0 - t0)).epsilon(1e-10));
            for (int m : {3, 6}) {
                const double tau = invert_survival(t0, m, u, 1e-12);
                CHECK(survival(t0, tau, m) == Approx(u).epsilon(1e-9));
            }
        }
}

TEST_CASE("splitter law")
{
    const double tau = 0.4;
    std::vector<double> fine;
    for (std::uint64_t r = 0; r < 100000; ++r) {
        RandomStream rng(41, r);
        const SetPartition s = sample_splitter(tau, 3, rng);
        REQUIRE(!s.is_trivial());
        fine.push_back(s.block_count() == 3 ? 1.0 : 0.0);
    }
    CHECK(within_3se(fine, tau / ((1.0 - tau) * (2.0 - tau)) / split_rate(tau, 3)));
}

TEST_CASE("jump chain marginal and holding times")
{
    const PartitionIndex index(3);
    std::vector<std::uint64_t> counts(index.size(), 0);
    std::vector<double> first;
    const EngineConfig cfg;
    const double t_end = 0.9;
    for (std::uint64_t r = 0; r < 100000; ++r) {
        RandomStream rng(42, r);
        const Trajectory traj = simulate_jump_chain(3, 0.5, cfg, rng);
        validate_trajectory(traj);
        ++counts[index(traj.events.back().partition)];
        RandomStream g(43, r);
        const Trajectory longer = simulate_jump_chain(4, t_end, cfg, g);
        if (longer.events.size() > 1) first.push_back(longer.events[1].time);
    }
    CHECK(total_variation(counts, exact_law_ruelle(0.5, 3).probs) < 0.02);
    // First split time given that it happens before t_end.
    const double norm = 1.0 - survival(0.0, t_end, 4);
    const double d = ks_statistic(first, [&](double x) { return (1.0 - survival(0.0, x, 4)) / norm; });
    CHECK(kolmogorov_pvalue(d, first.size()) > 1e-3);
    RandomStream rng(42, 0);
    EngineConfig small;
    small.enumeration_cap = 3;
    CHECK_THROWS_AS(simulate_jump_chain(5, 0.5, small, rng), Error);
}

TEST_CASE("coalescent")
{
    std::vector<double> two;
    std::vector<double> hold, pair;
    for (std::uint64_t r = 0; r < 100000; ++r) {
        RandomStream rng(44, r);
        const Trajectory t2 = simulate_coalescent(2, 1e9, rng);
        two.push_back(t2.events.at(1).time);
        const Trajectory t3 = simulate_coalescent(3, 1e9, rng);
        validate_trajectory(t3);
        hold.push_back(t3.events.at(1).time);
        pair.push_back(t3.events[1].partition.block_count() == 2 ? 1.0 : 0.0);
    }
    const double d = ks_statistic(two, [](double x) { return 1.0 - std::exp(-x); });
    CHECK(kolmogorov_pvalue(d, two.size()) > 1e-3);
    CHECK(within_3se(hold, 0.5));
    CHECK(within_3se(pair, 0.75));
}

TEST_CASE("trajectories are monotone")
{
    const EngineConfig cfg;
    for (std::uint64_t r = 0; r < 500; ++r) {
        RandomStream rng(45, r);
        const Trajectory f = simulate_jump_chain(7, 0.95, cfg, rng);
        for (std::size_t i = 1; i < f.events.size(); ++i)
            CHECK(refines(f.events[i].partition, f.events[i - 1].partition));
        const Trajectory c = simulate_coalescent(7, 5.0, rng);
        for (std::size_t i = 1; i < c.events.size(); ++i)
            CHECK(refines(c.events[i - 1].partition, c.events[i].partition));
    }
}

TEST_CASE("time reversal")
{
    const EngineConfig cfg;
    const double lo = std::exp(-1.0), hi = std::exp(-0.2);
    for (std::uint64_t r = 0; r < 500; ++r) {
        RandomStream rng(46, r);
        const Trajectory f = simulate_jump_chain(5, hi, cfg, rng);
        const Trajectory back = reverse_time(f, lo, hi);
        CHECK(back.direction == Direction::coalescent);
        CHECK(back.horizon == Approx(1.0));
        CHECK(back.events.front().time == Approx(0.2));
        validate_trajectory(back);
        const Trajectory again = reverse_time(back, back.events.front().time, back.horizon);
        CHECK(again.direction == Direction::fragmentation);
        CHECK(again.events.front().partition == state_at(f, lo));
        const auto inside = states_in_window(f, lo, hi);
        REQUIRE(again.events.size() == inside.size());
        for (std::size_t i = 0; i < inside.size(); ++i) CHECK(again.events[i].partition == inside[i]);
        for (std::size_t i = 1; i < again.events.size(); ++i) {
            double orig = -1.0;
            for (const auto& e : f.events)
                if (e.partition == again.events[i].partition) orig = e.time;
            CHECK(again.events[i].time == Approx(orig).epsilon(1e-12));
        }
    }
    Trajectory empty;
    CHECK_THROWS_AS(reverse_time(empty, 0.1, 0.2), Error);
}

TEST_CASE("tagged fragment")
{
    Trajectory traj;
    traj.n = 4;
    traj.horizon = 0.9;
    traj.events.push_back({0.0, SetPartition::trivial(4)});
    traj.events.push_back({0.5, SetPartition::singletons(4)});
    const auto path = tagged_fragment_path(traj);
    CHECK(path[0].second == Rational(1));
    CHECK(path[1].second == Rational(1, 4));
    std::vector<double> freq;
    const int n = 200;
    for (std::uint64_t r = 0; r < 100000; ++r) {
        RandomStream rng(47, r);
        const SetPartition pi = sample_marginal_semigroup({0.5}, n, rng)[0];
        freq.push_back(static_cast<double>(pi.block(0).size()) / n);
    }
    // |block of 1|/n has mean (1 + (n-1)(1-t))/n exactly.
    CHECK(within_3se(freq, 0.5, 1.0 / n));
}

TEST_CASE("trajectory validation rejects bad steps")
{
    Trajectory traj;
    traj.n = 3;
    traj.events.push_back({0.0, SetPartition::trivial(3)});
    traj.events.push_back({0.2, SetPartition::singletons(3)});
    traj.events.push_back({0.1, SetPartition::singletons(3)});
    CHECK_THROWS_AS(validate_trajectory(traj), Error);
    traj.events.pop_back();
    CHECK_NOTHROW(validate_trajectory(traj));
    traj.direction = Direction::coalescent;
    CHECK_THROWS_AS(validate_trajectory(traj), Error);
}
