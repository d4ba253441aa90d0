#include "rpcfrag/error.hpp"
#include "rpcfrag/oracle.hpp"
#include "rpcfrag/samplers.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

#include <doctest.h>

#include <cmath>

using namespace rpcfrag;
using doctest::Approx;

namespace {

// |estimate - target| within 3 standard errors.
bool within_3se(const std::vector<double>& values, double target, double slack = 0.0)
{
    const MeanEstimate e = estimate_mean(values);
    return std::fabs(e.mean - target) <= 3.0 * e.std_error + slack;
}

std::vector<std::uint64_t> crp_counts(const PdParams& p, int n, std::uint64_t draws, std::uint64_t seed)
{
    const PartitionIndex index(n);
    std::vector<std::uint64_t> counts(index.size(), 0);
    for (std::uint64_t r = 0; r < draws; ++r) {
        RandomStream rng(seed, r);
        ++counts[index(sample_crp(p, n, rng))];
    }
    return counts;
}

}  // namespace

TEST_CASE("random streams are reproducible and distinct")
{
    RandomStream a(11, 3), b(11, 3), c(11, 4), d(12, 3);
    bool differs_c = false, differs_d = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        differs_c = differs_c || x != c.next_u64();
        differs_d = differs_d || x != d.next_u64();
    }
    CHECK(differs_c);
    CHECK(differs_d);
    for (std::uint64_t r = 0; r < 50; ++r) {
        RandomStream u(5, r), v(5, r);
        CHECK(sample_crp(PdParams::make(0.4, 0.0), 30, u) == sample_crp(PdParams::make(0.4, 0.0), 30, v));
    }
}

TEST_CASE("beta draws have the right mean and no cancellation")
{
    std::vector<double> x;
    RandomStream rng(1, 0);
    for (int i = 0; i < 100000; ++i) x.push_back(rng.beta(0.3, 2.0));
    CHECK(within_3se(x, 0.3 / 2.3));
    for (int i = 0; i < 1000; ++i) {
        const auto [y, z] = rng.beta_pair(1e-3, 1e-3);
        CHECK(y >= 0.0);
        CHECK(z >= 0.0);
        CHECK(y + z == Approx(1.0));
    }
}

TEST_CASE("GEM stick-breaking")
{
    std::vector<double> first_t, first_unif;
    for (std::uint64_t r = 0; r < 100000; ++r) {
        RandomStream rng(2, r);
        StickBreaker a(PdParams::make(0.4, 0.0));
        first_t.push_back(a.next(rng));
        StickBreaker b(PdParams::make(0.0, 1.0));
        first_unif.push_back(b.next(rng));
    }
    CHECK(within_3se(first_t, 0.6));
    CHECK(within_3se(first_unif, 0.5));
    RandomStream rng(2, 0);
    CHECK(sample_gem(PdParams::make(0.5, 0.0), 0.5, rng).sticks.size() >= 1);
    CHECK_THROWS_AS(sample_gem(PdParams::make(0.5, 0.0), 0.0, rng), Error);
    CHECK_THROWS_AS(sample_gem(PdParams::make(0.5, -0.7), 0.1, rng), Error);
}

TEST_CASE("ranked Poisson-Dirichlet draws")
{
    const double alpha = 0.3, tol = 1e-6;
    std::vector<double> sq;
    double dust = 0.0;
    for (std::uint64_t r = 0; r < 20000; ++r) {
        RandomStream rng(3, r);
        const MassPartition s = sample_pd_ranked(PdParams::make(alpha, 0.0), tol, rng);
        for (std::size_t i = 1; i < s.masses.size(); ++i) REQUIRE(s.masses[i - 1] >= s.masses[i]);
        REQUIRE(s.dust_bound < tol);
        double v = 0.0;
        for (double w : s.masses) v += w * w;
        sq.push_back(v);
        dust = std::max(dust, s.dust_bound);
    }
    CHECK(within_3se(sq, 1.0 - alpha, dust));
}

TEST_CASE("Chinese restaurant draws")
{
    RandomStream rng(4, 0);
    CHECK(sample_crp(PdParams::make(0.5, 0.0), 1, rng) == SetPartition::trivial(1));
    std::vector<double> same;
    for (std::uint64_t r = 0; r < 100000; ++r) {
        RandomStream g(4, r);
        same.push_back(sample_crp(PdParams::make(0.5, 0.0), 2, g).is_trivial() ? 1.0 : 0.0);
    }
    CHECK(within_3se(same, 0.5));
    CHECK_THROWS_AS(sample_crp(PdParams::make(0.5, -0.5), 3, rng), Error);
}

TEST_CASE("Chinese restaurant law on P_4 is exact")
{
    const std::pair<double, double> params[] = {{0.3, 0.0}, {0.5, 0.0}, {0.5, 0.5}, {0.7, -0.3}};
    std::uint64_t seed = 40;
    for (const auto& [a, th] : params) {
        const PdParams p = PdParams::make(a, th);
        const ExactLaw law = exact_law([&](const Composition& c) { return eppf_pd(p, c); }, 4);
        const TestReport rep =
            compare_distributions(crp_counts(p, 4, 100000, ++seed), law, CompareMode::chi_square, 1e-3);
        CHECK(rep.pass);
    }
}

TEST_CASE("paint-box")
{
    RandomStream rng(5, 0);
    CHECK(paint_box(make_mass_partition({1.0}), 6, rng) == SetPartition::trivial(6));
    CHECK(paint_box(MassPartition{{}, 1.0}, 5, rng) == SetPartition::singletons(5));
    std::vector<double> same;
    for (int i = 0; i < 100000; ++i)
        same.push_back(paint_box(make_mass_partition({0.5, 0.5}), 2, rng).is_trivial() ? 1.0 : 0.0);
    CHECK(within_3se(same, 0.5));
}

TEST_CASE("paint-box over ranked PD agrees with the restaurant")
{
    const double t = 0.3;
    const PartitionIndex index(4);
    std::vector<std::uint64_t> boxes(index.size(), 0);
    for (std::uint64_t r = 0; r < 100000; ++r) {
        RandomStream rng(6, r);
        const MassPartition s = sample_pd_ranked(PdParams::make(t, 0.0), 1e-6, rng);
        ++boxes[index(paint_box(s, 4, rng))];
    }
    const auto crp = crp_counts(PdParams::make(t, 0.0), 4, 100000, 7);
    CHECK(total_variation(boxes, crp) < 0.02);
}

TEST_CASE("size-biased permutation")
{
    RandomStream rng(8, 0);
    CHECK(size_biased_permutation(make_mass_partition({1.0}), rng).sticks == std::vector<double>{1.0});
    for (int i = 0; i < 100; ++i)
        CHECK(size_biased_permutation(make_mass_partition({0.5, 0.5}), rng).sticks.front() == 0.5);
    std::vector<double> big;
    for (int i = 0; i < 100000; ++i)
        big.push_back(size_biased_permutation(make_mass_partition({0.9, 0.1}), rng).sticks.front() == 0.9 ? 1.0 : 0.0);
    CHECK(within_3se(big, 0.9));
}

TEST_CASE("size-biased first coordinate of ranked PD is the first GEM stick")
{
    const double alpha = 0.3, theta = 1.0;
    std::vector<double> first;
    for (std::uint64_t r = 0; r < 20000; ++r) {
        RandomStream rng(9, r);
        const MassPartition s = sample_pd_ranked(PdParams::make(alpha, theta), 1e-4, rng);
        first.push_back(size_biased_permutation(s, rng).sticks.front());
    }
    const std::uint64_t n = first.size();
    const double d = ks_statistic(
        first, [&](double x) { return boost::math::ibeta(1.0 - alpha, theta + alpha, x); });
    CHECK(kolmogorov_pvalue(d, n) > 1e-3);
}

TEST_CASE("restricted nu mass")
{
    CHECK(nu_restricted_mass(1e-9, 0.9) == Approx(std::log(10.0)).epsilon(1e-7));
    for (double t : {0.1, 0.3, 0.5}) {
        CHECK(nu_restricted_mass(t, 0.5) < nu_restricted_mass(t, 0.9));
        for (double eps : {1e-3, 1e-6, 1e-9}) CHECK(nu_restricted_mass(t, 1.0 - eps) <= 2.0 * (-std::log(eps) + 2.0));
    }
    boost::math::quadrature::tanh_sinh<double> ts;
    for (double t : {0.05, 0.3, 0.7})
        for (double cap : {0.2, 0.9, 0.999}) {
            const double oracle =
                ts.integrate([&](double y) { return std::pow(y, -t) / (1.0 - y); }, 0.0, cap);
            CHECK(nu_restricted_mass(t, cap) == Approx(oracle).epsilon(1e-9));
            const NuSizeBiasedSampler sampler(t, cap);
            CHECK(sampler.total_mass() == Approx(oracle).epsilon(1e-9));
        }
    CHECK_THROWS_AS(nu_restricted_mass(0.3, 1.0), Error);
}

TEST_CASE("nu sampler inversion and draws")
{
    for (double t : {1e-6, 0.3, 0.5}) {
        const NuSizeBiasedSampler sampler(t, 1.0 - 1e-6);
        for (double u : {1e-6, 0.1, 0.5, 0.9, 1.0 - 1e-9}) {
            const FirstCoordinate q = sampler.quantile(u);
            CHECK(q.x + q.one_minus_x == Approx(1.0));
            CHECK(sampler.mass_below(q.x) == Approx(u * sampler.total_mass()).epsilon(1e-9));
        }
    }
    const double t = 0.3, cap = 0.95;
    const NuSizeBiasedSampler sampler(t, cap);
    std::vector<double> rest;
    double dust = 0.0;
    for (std::uint64_t r = 0; r < 20000; ++r) {
        RandomStream rng(10, r);
        const SizeBiasedSequence s = sampler.draw(rng, 1e-5);
        REQUIRE(s.sticks.front() <= cap);
        const double scale = 1.0 - s.sticks.front();
        double v = 0.0;
        for (std::size_t i = 1; i < s.sticks.size(); ++i) v += (s.sticks[i] / scale) * (s.sticks[i] / scale);
        rest.push_back(v);
        dust = std::max(dust, s.dust_bound / scale);
    }
    CHECK(within_3se(rest, 1.0 - t, dust));
}
