#include "rpcfrag/error.hpp"
#include "rpcfrag/oracle.hpp"
#include "rpcfrag/partition.hpp"
#include "rpcfrag/random.hpp"

#include <doctest.h>

#include <numeric>

using namespace rpcfrag;

namespace {

SetPartition P(std::vector<Block> blocks) { return canonicalize(blocks); }

SetPartition random_partition(int n, RandomStream& rng)
{
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (auto& l : labels) l = static_cast<int>(rng.below(4));
    return SetPartition::from_labels(labels);
}

void check_masses(const MassPartition& s, std::vector<double> expected)
{
    REQUIRE(s.masses.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(s.masses[i] == doctest::Approx(expected[i]).epsilon(1e-15));
}

}  // namespace

TEST_CASE("canonical form orders blocks by least element")
{
    CHECK(P({{2}, {1, 3}}).blocks() == std::vector<Block>{{1, 3}, {2}});
    CHECK(P({{1}, {2}, {3}}) == SetPartition::singletons(3));
    CHECK(P({{3, 1}, {2}}).blocks() == std::vector<Block>{{1, 3}, {2}});
}

TEST_CASE("malformed partitions are rejected")
{
    CHECK_THROWS_AS(canonicalize({{1, 2}}, 3), Error);
    CHECK_THROWS_AS(canonicalize({{1, 2}, {2, 3}}), Error);
    CHECK_THROWS_AS(canonicalize({{1}, {}}), Error);
    CHECK_THROWS_AS(canonicalize({{0, 1}}), Error);
    try {
        canonicalize({{1, 2}}, 3);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::malformed_partition);
    }
}

TEST_CASE("canonicalization is idempotent")
{
    RandomStream rng(7, 0);
    for (int rep = 0; rep < 200; ++rep) {
        const SetPartition pi = random_partition(8, rng);
        CHECK(canonicalize(pi.blocks(), pi.n()) == pi);
        CHECK(SetPartition::from_labels(pi.labels()) == pi);
    }
}

TEST_CASE("restriction")
{
    CHECK(restrict(P({{1, 3}, {2}}), 2) == SetPartition::singletons(2));
    CHECK(restrict(SetPartition::trivial(3), 2) == SetPartition::trivial(2));
    CHECK(restrict(P({{1, 4}, {2, 3}}), 1) == SetPartition::trivial(1));
    RandomStream rng(7, 1);
    for (int rep = 0; rep < 200; ++rep) {
        const SetPartition pi = random_partition(8, rng);
        for (int m = 1; m <= 8; ++m)
            for (int n = 1; n <= m; ++n) CHECK(restrict(restrict(pi, m), n) == restrict(pi, n));
    }
}

TEST_CASE("fragmentation of set partitions")
{
    CHECK(frag_partition(SetPartition::trivial(3), {P({{1, 2}, {3}})}) == P({{1, 2}, {3}}));
    CHECK(frag_partition(P({{1, 3}, {2}}), {P({{1}, {2}}), SetPartition::trivial(1)}) ==
          SetPartition::singletons(3));
    RandomStream rng(7, 2);
    for (int rep = 0; rep < 200; ++rep) {
        const SetPartition pi = random_partition(8, rng);
        std::vector<SetPartition> split, unit, fine;
        for (const auto& b : pi.blocks()) {
            const int m = static_cast<int>(b.size());
            split.push_back(random_partition(m, rng));
            unit.push_back(SetPartition::trivial(m));
            fine.push_back(SetPartition::singletons(m));
        }
        const SetPartition f = frag_partition(pi, split);
        CHECK(refines(f, pi));
        CHECK(frag_partition(pi, unit) == pi);
        CHECK(frag_partition(pi, fine) == SetPartition::singletons(8));
    }
}

TEST_CASE("coagulation of mass partitions")
{
    check_masses(coag_mass(make_mass_partition({0.5, 0.3, 0.2}), P({{1, 2}, {3}})), {0.8, 0.2});
    check_masses(coag_mass(make_mass_partition({0.4, 0.4, 0.2}), SetPartition::trivial(3)), {1.0});
    const MassPartition s = make_mass_partition({0.45, 0.25, 0.2, 0.1});
    check_masses(coag_mass(s, SetPartition::singletons(4)), s.masses);
    RandomStream rng(7, 3);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> w(8);
        for (auto& x : w) x = rng.uniform();
        const double total = std::accumulate(w.begin(), w.end(), 0.0);
        for (auto& x : w) x /= total;
        const MassPartition m = make_mass_partition(w);
        const MassPartition c = coag_mass(m, random_partition(8, rng));
        CHECK(std::fabs(c.total() - m.total()) <= 1e-15);
        for (std::size_t i = 1; i < c.masses.size(); ++i) CHECK(c.masses[i - 1] >= c.masses[i]);
    }
}

TEST_CASE("fragmentation of mass partitions")
{
    check_masses(frag_mass(make_mass_partition({1.0}), {make_mass_partition({0.6, 0.4})}), {0.6, 0.4});
    check_masses(frag_mass(make_mass_partition({0.5, 0.5}), {make_mass_partition({1.0}), make_mass_partition({1.0})}),
                 {0.5, 0.5});
    check_masses(frag_mass(make_mass_partition({0.5, 0.5}),
                           {make_mass_partition({0.5, 0.5}), make_mass_partition({0.5, 0.5})}),
                 {0.25, 0.25, 0.25, 0.25});
}

TEST_CASE("block frequencies are exact")
{
    CHECK(block_frequencies(SetPartition::trivial(3)) == std::vector<Rational>{Rational(1)});
    CHECK(block_frequencies(P({{1, 3}, {2}})) == std::vector<Rational>{Rational(2, 3), Rational(1, 3)});
    CHECK(block_frequencies(SetPartition::singletons(4)) == std::vector<Rational>(4, Rational(1, 4)));
    RandomStream rng(7, 4);
    for (int rep = 0; rep < 100; ++rep) {
        const auto f = block_frequencies(random_partition(8, rng));
        CHECK(std::accumulate(f.begin(), f.end(), Rational(0)) == Rational(1));
    }
}

TEST_CASE("enumeration matches the Bell numbers")
{
    CHECK(enumerate_partitions(1).size() == 1);
    CHECK(enumerate_partitions(3).size() == 5);
    CHECK(enumerate_partitions(4).size() == 15);
    for (int n = 1; n <= 10; ++n) CHECK(enumerate_partitions(n).size() == bell_number(n));
    const auto all = enumerate_partitions(6);
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1] != all[i]);
    CHECK_THROWS_AS(enumerate_partitions(13), Error);
}
