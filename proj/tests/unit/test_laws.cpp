#include "rpcfrag/error.hpp"
#include "rpcfrag/laws.hpp"
#include "rpcfrag/oracle.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>

#include <doctest.h>

#include <cmath>

using namespace rpcfrag;
using doctest::Approx;

namespace {

const double t_grid[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

// Probability that the Chinese restaurant seats 1..n as pi, multiplied out
// one customer at a time.
double crp_step_product(double alpha, double theta, const SetPartition& pi)
{
    const auto labels = pi.labels();
    std::vector<int> sizes;
    double p = 1.0;
    for (std::size_t m = 0; m < labels.size(); ++m) {
        const int l = labels[m];
        const double denom = static_cast<double>(m) + theta;
        if (m == 0) {
            sizes.push_back(1);
            continue;
        }
        if (l == static_cast<int>(sizes.size())) {
            p *= (theta + alpha * static_cast<double>(sizes.size())) / denom;
            sizes.push_back(1);
        } else {
            p *= (sizes[static_cast<std::size_t>(l)] - alpha) / denom;
            ++sizes[static_cast<std::size_t>(l)];
        }
    }
    return p;
}

double integrate(const std::function<double(double)>& f, double a, double b)
{
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

}  // namespace

TEST_CASE("rising factorial")
{
    CHECK(rising(3.7, 0) == 1.0);
    CHECK(rising(-2.5, 0) == 1.0);
    CHECK(rising(1.0, 5) == 120.0);
    CHECK(rising(-0.5, 2) == Approx(-0.25));
    CHECK(std::exp(log_rising(1.5, 40)) == Approx(rising(1.5, 40)).epsilon(1e-12));
}

TEST_CASE("Poisson-Dirichlet EPPF values")
{
    CHECK(eppf_pd(PdParams::make(0.5, 0.5), {1, 1}) == Approx(2.0 / 3.0));
    CHECK(eppf_pd(PdParams::make(0.3, 1.2), {1, 1}) == Approx((1.2 + 0.3) / 2.2));
    CHECK(eppf_pd(PdParams::make(0.5, 0.0), {2}) == Approx(0.5));
    CHECK(eppf_pd(PdParams::make(0.0, 1.0), {3}) == Approx(1.0 / 3.0));
    CHECK_THROWS_AS(eppf_pd(PdParams::make(0.5, 0.0), {0, 2}), Error);
}

TEST_CASE("EPPFs equal the sequential seating product")
{
    const std::pair<double, double> params[] = {{0.3, 0.0}, {0.5, 0.5}, {0.7, -0.3}, {0.0, 1.0}, {0.2, 3.0}};
    for (const auto& [a, th] : params)
        for (int n = 1; n <= 7; ++n)
            for (const auto& pi : enumerate_partitions(n)) {
                const double oracle = crp_step_product(a, th, pi);
                CHECK(eppf_pd(PdParams::make(a, th), pi.sizes()) == Approx(oracle).epsilon(1e-12));
                if (th == 0.0 && a > 0.0) CHECK(eppf_ruelle(a, pi.sizes()) == Approx(oracle).epsilon(1e-12));
            }
}

TEST_CASE("Ruelle EPPF")
{
    CHECK(eppf_ruelle(0.3, {2}) == Approx(0.7));
    CHECK(eppf_ruelle(0.3, {1, 1}) == Approx(0.3));
    for (double t : t_grid) {
        const double total = eppf_ruelle(t, {3}) + 3.0 * eppf_ruelle(t, {1, 2}) + eppf_ruelle(t, {1, 1, 1});
        CHECK(total == Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(eppf_ruelle(1.5, {1, 1}), Error);
    CHECK_THROWS_AS(eppf_ruelle(0.0, {1, 1}), Error);
}

TEST_CASE("log-space EPPFs stay finite at large n")
{
    const Composition c{150, 120, 90};
    const SignedLog l = log_eppf_ruelle(0.4, c);
    CHECK(l.sign == 1);
    CHECK(std::isfinite(l.log_abs));
    CHECK(l.log_abs < 0.0);
}

TEST_CASE("dislocation EPPF")
{
    CHECK(eppf_dislocation(0.5, {1, 1}) == Approx(1.0));
    CHECK(eppf_dislocation(0.3, {1, 1}) == Approx(0.3 / 0.7));
    CHECK(eppf_dislocation(0.5, {1, 2}) == Approx(1.0 / 3.0));
    CHECK_THROWS_AS(eppf_dislocation(0.5, {3}), Error);
    // The mass of {1 and 2 separated} equals the sum over nontrivial
    // partitions of [n] that separate them, for every n (consistency).
    for (double t : {0.2, 0.5, 0.8})
        for (int n = 2; n <= 6; ++n) {
            double sep = 0.0;
            for (const auto& pi : enumerate_partitions(n))
                if (pi.block_index_of(1) != pi.block_index_of(2)) sep += eppf_dislocation(t, pi.sizes());
            CHECK(sep == Approx(t / (1.0 - t)).epsilon(1e-12));
        }
}

TEST_CASE("jump rates")
{
    const auto P = [](std::vector<Block> b) { return canonicalize(b); };
    CHECK(jump_rate(0.5, P({{1}, {2}})) == Approx(2.0));
    CHECK(jump_rate(0.5, SetPartition::singletons(3)) == Approx(2.0 / 3.0));
    CHECK(jump_rate(0.5, P({{1, 2}, {3}})) == Approx(2.0 / 3.0));
    CHECK_THROWS_AS(jump_rate(0.5, SetPartition::trivial(3)), Error);
    for (double t : t_grid)
        for (int n = 2; n <= 7; ++n)
            for (const auto& pi : enumerate_partitions(n)) {
                if (pi.is_trivial()) continue;
                const int k = pi.block_count();
                const double oracle =
                    eppf_ruelle(t, pi.sizes()) / (t * (k - 1) * eppf_ruelle(t, {n}));
                CHECK(jump_rate(t, pi) == Approx(oracle).epsilon(1e-12));
                CHECK(jump_rate_from_dislocation(t, pi) == Approx(oracle).epsilon(1e-12));
            }
}

TEST_CASE("erosion rate vanishes")
{
    double prev = INFINITY;
    for (int n = 2; n <= 1502; ++n) {
        const double r = jump_rate(0.5, Composition{1, n - 1});
        CHECK(r == Approx(1.0 / (n - 1 - 0.5)).epsilon(1e-13));
        CHECK(r < prev);
        prev = r;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("split rates and survival")
{
    CHECK(split_rate(0.5, 2) == Approx(2.0));
    CHECK(split_rate(0.5, 3) == Approx(8.0 / 3.0));
    double total = 0.0;
    for (const auto& pi : enumerate_partitions(3))
        if (!pi.is_trivial()) total += jump_rate(0.5, pi);
    CHECK(total == Approx(8.0 / 3.0));
    CHECK(survival(0.0, 0.5, 2) == Approx(0.5));
    CHECK(survival(0.0, 0.5, 3) == Approx(0.375));
    CHECK(survival(0.3, 0.3, 5) == 1.0);
    for (int m : {2, 3, 5, 9})
        for (double t0 : {0.0, 0.2, 0.6})
            for (double t : {0.65, 0.9}) {
                const double integral = integrate([&](double u) { return split_rate(u, m); }, t0, t);
                CHECK(survival(t0, t, m) == Approx(std::exp(-integral)).epsilon(1e-8));
            }
}

TEST_CASE("coalescent rates")
{
    CHECK(coalescent_rate(2, 2) == Approx(1.0));
    CHECK(coalescent_rate(3, 2) == Approx(0.5));
    CHECK(coalescent_rate(3, 3) == Approx(0.5));
    CHECK(coalescent_rate(4, 3) == Approx(1.0 / 6.0));
    CHECK(coalescent_total_rate(3) == Approx(2.0));
    CHECK_THROWS_AS(coalescent_rate(3, 4), Error);
    for (int b = 2; b <= 12; ++b)
        for (int k = 2; k <= b; ++k) {
            const double integral = integrate(
                [&](double x) { return std::pow(x, k - 2) * std::pow(1.0 - x, b - k); }, 0.0, 1.0);
            CHECK(coalescent_rate(b, k) == Approx(integral).epsilon(1e-12));
        }
}

TEST_CASE("psi, phi and tagged moments")
{
    for (double p : {0.5, 1.0, 2.0, 3.7}) CHECK(std::fabs(psi(1e-12, p)) < 1e-10);
    CHECK(phi(0.5, 1.0) == Approx(2.0));
    CHECK(std::exp(-psi(0.5, 2.0)) == Approx(0.375));
    CHECK(tagged_moment(0.5, 1.0) == Approx(0.5));
    CHECK(tagged_moment(0.5, 2.0) == Approx(0.375));
    CHECK(tagged_moment(1e-9, 3.0) == Approx(1.0).epsilon(1e-8));
    for (double t : t_grid) {
        double prod = 1.0;
        for (int k = 1; k <= 5; ++k) {
            prod *= (k - t) / k;
            CHECK(tagged_moment(t, k) == Approx(prod).epsilon(1e-12));
        }
        for (double q : {0.3, 1.5, 4.2}) {
            // Moment of Beta(1-t, t).
            const double oracle = boost::math::beta(1.0 - t + q, t) / boost::math::beta(1.0 - t, t);
            CHECK(tagged_moment(t, q) == Approx(oracle).epsilon(1e-12));
            CHECK(std::exp(-psi(t, q)) == Approx(oracle).epsilon(1e-12));
            const double h = 1e-5;
            const double fd = (psi(t + h, q) - psi(t - h, q)) / (2.0 * h);
            CHECK(phi(t, q) == Approx(fd).epsilon(1e-7));
        }
    }
}

TEST_CASE("time-changed rates")
{
    const SetPartition pi = SetPartition::singletons(3);
    CHECK(time_changed_rate(0.4, pi, 0.4, 1.0) == Approx(jump_rate(0.4, pi)));
    const double u = 0.7;
    CHECK(time_changed_rate(u, pi, std::exp(-u), std::exp(-u)) ==
          Approx(std::exp(-u) * jump_rate(std::exp(-u), pi)));
    CHECK(time_changed_rate(0.2, pi, 0.4, 2.0) == Approx(2.0 * jump_rate(0.4, pi)));
    CHECK_THROWS_AS(time_changed_rate(0.2, pi, 0.4, -1.0), Error);
}
