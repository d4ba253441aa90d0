#include "rpcfrag/cascade.hpp"
#include "rpcfrag/error.hpp"
#include "rpcfrag/oracle.hpp"
#include "rpcfrag/samplers.hpp"
#include "rpcfrag/suites.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace rpcfrag;
using doctest::Approx;

namespace {

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

// Ranked PD(alpha, 0) masses from the ranked atoms of a Poisson measure with
// intensity alpha r^(-1-alpha) dr, normalized by their total. The expected
// mass below eps is added to the total and kept as dust.
MassPartition ranked_stable_masses(double alpha, double eps, RandomStream& rng)
{
    std::vector<double> atoms = sample_poisson_atoms(alpha, eps, 1.0, rng);
    const double small = small_atom_mass(alpha, eps);
    double total = small;
    for (double a : atoms) total += a;
    for (double& a : atoms) a /= total;
    return MassPartition{atoms, small / total};
}

}  // namespace

TEST_CASE("exact laws")
{
    const ExactLaw p2 = exact_law_ruelle(0.3, 2);
    REQUIRE(p2.support.size() == 2);
    CHECK(p2.probs[0] == Approx(0.7));
    CHECK(p2.probs[1] == Approx(0.3));
    const int n = 5;
    const double uniform = 1.0 / static_cast<double>(bell_number(n));
    const ExactLaw u = exact_law([&](const Composition&) { return uniform; }, n);
    for (double p : u.probs) CHECK(p == Approx(uniform));
    CHECK(u.total() == Approx(1.0));
    const ExactLaw d = exact_law_dislocation(0.5, 3);
    CHECK(d.normalizer == Approx(4.0 / 3.0));
    CHECK(d.total() == Approx(1.0));
    for (double t : {0.1, 0.5, 0.9})
        for (int m = 1; m <= 8; ++m) CHECK(std::fabs(exact_law_ruelle(t, m).total() - 1.0) < 1e-12);
}

TEST_CASE("exact laws marginalize under restriction")
{
    for (double t : {0.2, 0.6})
        for (int m = 1; m <= 6; ++m) {
            const ExactLaw small = exact_law_ruelle(t, m);
            const ExactLaw big = exact_law_ruelle(t, m + 1);
            const PartitionIndex index(m);
            std::vector<double> marg(index.size(), 0.0);
            for (std::size_t i = 0; i < big.support.size(); ++i) marg[index(restrict(big.support[i], m))] += big.probs[i];
            for (std::size_t i = 0; i < marg.size(); ++i) CHECK(marg[i] == Approx(small.probs[i]).epsilon(1e-12));
        }
}

TEST_CASE("distribution comparison")
{
    const ExactLaw law = exact_law_ruelle(0.5, 3);
    std::vector<std::uint64_t> exact;
    for (double p : law.probs) exact.push_back(static_cast<std::uint64_t>(std::llround(p * 96000)));
    const TestReport tv = compare_distributions(exact, law, CompareMode::total_variation, 0.01);
    CHECK(tv.value < 1e-4);
    CHECK(tv.pass);
    const ExactLaw flat = exact_law([](const Composition&) { return 1.0 / 5.0; }, 3);
    const std::vector<std::uint64_t> one{100000, 0, 0, 0, 0};
    CHECK_FALSE(compare_distributions(one, flat, CompareMode::chi_square, 1e-3).pass);
    CHECK_FALSE(compare_distributions(one, flat, CompareMode::total_variation, 0.03).pass);
    CHECK(chi_square_pvalue(0.0, 3) == Approx(1.0));
    CHECK(kolmogorov_pvalue(0.0, 1000) == Approx(1.0));
    CHECK(kolmogorov_pvalue(0.2, 1000) < 1e-10);
}

TEST_CASE("compensated mean")
{
    std::vector<double> v(1000001, 0.1);
    v[0] = 1e8;
    const MeanEstimate e = estimate_mean(v);
    CHECK(e.mean == Approx((1e8 + 0.1 * 1000000) / 1000001.0).epsilon(1e-15));
    const MeanEstimate c = estimate_mean({2.0, 2.0, 2.0});
    CHECK(c.mean == 2.0);
    CHECK(c.std_error == 0.0);
}

TEST_CASE("diversity statistic")
{
    CHECK(diversity_stat(SetPartition::singletons(100), 0.5) == Approx(10.0));
    CHECK(diversity_stat(SetPartition::trivial(100), 0.5) == Approx(0.1));
    CHECK_THROWS_AS(diversity_stat(SetPartition::trivial(4), 1.0), Error);
    const double alpha = 0.5;
    std::vector<double> at3, at4;
    for (std::uint64_t r = 0; r < 1000; ++r) {
        RandomStream rng(50, r);
        at3.push_back(diversity_stat(sample_crp(PdParams::make(alpha, 0.0), 1000, rng), alpha));
        at4.push_back(diversity_stat(sample_crp(PdParams::make(alpha, 0.0), 10000, rng), alpha));
    }
    const double m3 = estimate_mean(at3).mean, m4 = estimate_mean(at4).mean;
    CHECK(std::fabs(m3 / m4 - 1.0) < 0.10);
}

TEST_CASE("tail index statistic")
{
    const double alpha = 0.5;
    std::vector<double> toy;
    for (int i = 1; i <= 100; ++i) toy.push_back(std::pow(i, -1.0 / alpha));
    const MassPartition s{toy, 0.0};
    for (std::size_t rank : {1u, 10u, 100u}) CHECK(tail_index_stat(s, alpha, rank) == Approx(1.0));
    CHECK_THROWS_AS(tail_index_stat(s, alpha, 101), Error);

    std::vector<double> ratio_ranks, ratio_div;
    const double g = boost::math::tgamma(1.0 - alpha);
    for (std::uint64_t r = 0; r < 300; ++r) {
        RandomStream rng(51, r);
        const MassPartition m = ranked_stable_masses(alpha, 1e-9, rng);
        const double l3 = tail_index_stat(m, alpha, 1000);
        const double l4 = tail_index_stat(m, alpha, 10000);
        ratio_ranks.push_back(l3 / l4);
        const double div = diversity_stat(paint_box(m, 10000, rng), alpha);
        ratio_div.push_back(g * l4 / div);
    }
    CHECK(std::fabs(median(ratio_ranks) - 1.0) < 0.20);
    CHECK(std::fabs(median(ratio_div) - 1.0) < 0.15);
}

TEST_CASE("absolute continuity estimator")
{
    const RunOptions opt{52, 1};
    const TestReport none = abs_continuity_check(0.5, {}, 10000, 100, opt);
    CHECK(none.extras[1].second == 0.0);
    CHECK(none.pass);
    const TestReport half = abs_continuity_check(0.5, {SetPartition::singletons(2)}, 10000, 5000, opt);
    CHECK(half.extras[3].second == Approx(1.0));
    CHECK(half.pass);
    const TestReport low = abs_continuity_check(0.3, {SetPartition::singletons(2)}, 10000, 5000, opt);
    CHECK(low.extras[3].second == Approx(3.0 / 7.0));
    CHECK(low.pass);
    CHECK_THROWS_AS(abs_continuity_check(0.5, {SetPartition::trivial(2)}, 10000, 100, opt), Error);
}

TEST_CASE("empirical measure")
{
    const RunOptions opt{53, 1};
    CHECK(test_function_limit(TestFunction::exp_neg) == Approx(0.5));
    CHECK(test_function_limit(TestFunction::exp_neg2) == Approx(1.0 / 3.0));
    const TestReport one = empirical_measure_test(0.95, TestFunction::one, 1000, opt);
    CHECK(one.extras[1].second == 1.0);
    CHECK(one.extras[2].second == 0.0);
    for (auto f : {TestFunction::exp_neg, TestFunction::exp_neg2}) {
        const TestReport r = empirical_measure_test(0.95, f, 100000, opt);
        CHECK(r.pass);
        // The finite-t closed form sits inside the Monte Carlo band.
        const double est = r.extras[1].second, se = r.extras[2].second, exact = r.extras.back().second;
        CHECK(std::fabs(est - exact) <= 3.0 * se);
    }
    CHECK_THROWS_AS(parse_test_function("cos"), Error);
    CHECK_THROWS_AS(empirical_measure_test(0.5, TestFunction::one, 100, opt), Error);
    // Block frequencies of semigroup partitions are proper.
    for (std::uint64_t r = 0; r < 100; ++r) {
        RandomStream rng(54, r);
        const auto f = block_frequencies(sample_crp(PdParams::make(0.95, 0.0), 50, rng));
        Rational total(0);
        for (const auto& x : f) total += x;
        CHECK(total == Rational(1));
    }
}

TEST_CASE("martingale mean")
{
    const RunOptions opt{55, 1};
    const MartingaleResult r = martingale_test({0.3, 0.5}, 2.0, 60, 20000, opt, {0.5, 0.9, 0.99});
    REQUIRE(r.reports.size() == 4);
    for (const auto& rep : r.reports) CHECK(rep.pass);
    REQUIRE(r.decay.size() == 3);
    CHECK(r.decay.back().second < r.decay.front().second);
    const MartingaleResult tiny = martingale_test({1e-12}, 1.5, 10, 1000, opt);
    CHECK(tiny.reports[0].extras[2].second == Approx(1.0).epsilon(1e-6));
    CHECK(std::exp(-psi(0.5, 2.0)) == Approx(0.375));
}

TEST_CASE("record hazard integral")
{
    CHECK(hazard_upper_bound(0.3, 1e-3) == Approx(2.0 * 0.3 * (-std::log(1e-3) + 2.0)));
    CHECK(hazard_lower_bound(0.3, 1e-3) <= hazard_upper_bound(0.3, 1e-3));
    const RunOptions opt{56, 1};
    const HazardEstimate a = record_hazard_integral(0.3, 1e-3, 4, 250, opt);
    const HazardEstimate b = record_hazard_integral(0.3, 1e-3, 4, 1000, opt);
    CHECK(a.value - a.error <= a.upper_bound);
    CHECK(a.value + a.error >= a.lower_bound);
    CHECK(a.prob_record_below == Approx(std::exp(-a.value)));
    // Four times the draws per point quarters the variance, within a factor 2.
    const double ratio = (a.mc_sigma * a.mc_sigma) / (b.mc_sigma * b.mc_sigma);
    CHECK(ratio > 2.0);
    CHECK(ratio < 8.0);
    const HazardEstimate small_t = record_hazard_integral(0.1, 1e-3, 4, 250, opt);
    const HazardEstimate small_eps = record_hazard_integral(0.3, 1e-6, 4, 250, opt);
    CHECK(small_t.value < a.value);
    CHECK(small_eps.value > a.value);
    CHECK_THROWS_AS(record_hazard_integral(0.7, 1e-3, 8, 100, opt), Error);
    CHECK_THROWS_AS(record_hazard_integral(0.3, 1e-3, 0, 100, opt), Error);
}

TEST_CASE("suite registry")
{
    const auto& cat = suite_catalog();
    REQUIRE(cat.size() == 13);
    for (std::size_t i = 0; i < cat.size(); ++i) CHECK(cat[i].criterion == static_cast<int>(i) + 1);
    CHECK(resolve_suites("exact").size() == 4);
    CHECK(resolve_suites("all").size() == 13);
    CHECK(resolve_suites("duality") == std::vector<std::string>{"duality"});
    CHECK_THROWS_AS(resolve_suites("nope"), Error);
    SuiteOptions opt;
    opt.seed = 1;
    for (const auto& name : resolve_suites("exact")) CHECK(run_suite(name, opt, [](const TestReport& r) { CHECK(r.pass); }));
}
