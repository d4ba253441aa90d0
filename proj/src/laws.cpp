#include "rpcfrag/laws.hpp"

#include "rpcfrag/error.hpp"

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>

namespace rpcfrag {

namespace {

bool open_unit(double t) { return t > 0.0 && t < 1.0; }

void require_time(double t)
{
    require(open_unit(t), ErrorCode::domain, "time must lie in (0,1)");
}

double log_factorial(int m) { return log_rising(1.0, m); }

}  // namespace

PdParams PdParams::make(double alpha, double theta)
{
    if (alpha > 0.0 && alpha < 1.0 && theta == -alpha) return dislocation_pair(alpha);
    return proper(alpha, theta);
}

PdParams PdParams::proper(double alpha, double theta)
{
    require(std::isfinite(alpha) && std::isfinite(theta), ErrorCode::domain,
            "PD parameters must be finite");
    require(alpha >= 0.0 && alpha < 1.0, ErrorCode::domain, "PD alpha must lie in [0,1)");
    require(theta > -alpha, ErrorCode::domain, "PD theta must exceed -alpha");
    return PdParams{alpha, theta, false};
}

PdParams PdParams::dislocation_pair(double alpha)
{
    require(open_unit(alpha), ErrorCode::domain, "dislocation pair needs alpha in (0,1)");
    return PdParams{alpha, -alpha, true};
}

void validate_composition(const Composition& c)
{
    require(!c.empty(), ErrorCode::argument, "composition has no parts");
    for (int part : c) require(part >= 1, ErrorCode::argument, "composition parts must be >= 1");
}

int composition_total(const Composition& c)
{
    int n = 0;
    for (int part : c) n += part;
    return n;
}

double SignedLog::value() const
{
    return sign == 0 ? 0.0 : sign * std::exp(log_abs);
}

SignedLog operator*(SignedLog a, SignedLog b)
{
    if (a.sign == 0 || b.sign == 0) return SignedLog{0.0, 0};
    return SignedLog{a.log_abs + b.log_abs, a.sign * b.sign};
}

SignedLog operator/(SignedLog a, SignedLog b)
{
    require(b.sign != 0, ErrorCode::numeric, "division by an exact zero");
    if (a.sign == 0) return a;
    return SignedLog{a.log_abs - b.log_abs, a.sign * b.sign};
}

double rising(double x, int n)
{
    require(n >= 0, ErrorCode::argument, "rising factorial order must be nonnegative");
    double out = 1.0;
    for (int i = 0; i < n; ++i) out *= x + i;
    return out;
}

double log_rising(double x, int n)
{
    require(n >= 0, ErrorCode::argument, "rising factorial order must be nonnegative");
    if (n > 0) require(x > 0.0, ErrorCode::domain, "log rising factorial with a nonpositive factor");
    double out = 0.0;
    for (int i = 0; i < n; ++i) out += std::log(x + i);
    return out;
}

SignedLog signed_log_rising(double x, int n)
{
    require(n >= 0, ErrorCode::argument, "rising factorial order must be nonnegative");
    SignedLog out;
    for (int i = 0; i < n; ++i) {
        const double f = x + i;
        if (f == 0.0) return SignedLog{0.0, 0};
        out.log_abs += std::log(std::fabs(f));
        if (f < 0.0) out.sign = -out.sign;
    }
    return out;
}

SignedLog log_eppf_pd(const PdParams& p, const Composition& c)
{
    require(!p.dislocation, ErrorCode::domain,
            "the pair (t,-t) is a dislocation measure; use eppf_dislocation");
    const PdParams q = PdParams::proper(p.alpha, p.theta);
    validate_composition(c);
    const int n = composition_total(c);
    const int k = static_cast<int>(c.size());
    const double a = q.alpha;
    const double th = q.theta;

    if (a == 0.0) {
        // theta^k prod (n_i - 1)! / [theta]_n
        double lg = k * std::log(th) - log_rising(th, n);
        for (int part : c) lg += log_factorial(part - 1);
        return SignedLog{lg, 1};
    }
    if (th == 0.0) {
        // (k-1)! alpha^(k-1) / (n-1)! prod [1-alpha]_{n_i - 1}
        double lg = log_factorial(k - 1) + (k - 1) * std::log(a) - log_factorial(n - 1);
        for (int part : c) lg += log_rising(1.0 - a, part - 1);
        return SignedLog{lg, 1};
    }
    // [theta/alpha]_k / [theta]_n prod -[-alpha]_{n_i}
    SignedLog out = signed_log_rising(th / a, k) / signed_log_rising(th, n);
    for (int part : c) {
        SignedLog f = signed_log_rising(-a, part);
        f.sign = -f.sign;
        out = out * f;
    }
    return out;
}

double eppf_pd(const PdParams& p, const Composition& c)
{
    return log_eppf_pd(p, c).value();
}

SignedLog log_eppf_ruelle(double t, const Composition& c)
{
    require_time(t);
    validate_composition(c);
    const int n = composition_total(c);
    const int k = static_cast<int>(c.size());
    double lg = log_factorial(k - 1) - log_factorial(n - 1) + (k - 1) * std::log(t);
    for (int part : c) lg += log_rising(1.0 - t, part - 1);
    return SignedLog{lg, 1};
}

double eppf_ruelle(double t, const Composition& c)
{
    return log_eppf_ruelle(t, c).value();
}

double eppf_dislocation(double t, const Composition& c)
{
    require_time(t);
    validate_composition(c);
    const int k = static_cast<int>(c.size());
    require(k >= 2, ErrorCode::domain, "dislocation EPPF is infinite on the one-block partition");
    const int n = composition_total(c);
    SignedLog num{log_factorial(k - 2), 1};
    for (int part : c) {
        SignedLog f = signed_log_rising(-t, part);
        f.sign = -f.sign;
        num = num * f;
    }
    SignedLog den = signed_log_rising(-t, n);
    den.sign = -den.sign;
    return (num / den).value();
}

double jump_rate(double t, const Composition& c)
{
    require_time(t);
    validate_composition(c);
    const int k = static_cast<int>(c.size());
    require(k >= 2, ErrorCode::domain, "no jump rate towards the one-block partition");
    const int n = composition_total(c);
    // q_t(c) / (t (k-1) q_t(n)) = (k-2)! t^(k-2) prod [1-t]_(n_i - 1) / [1-t]_(n-1).
    // The largest part's factors cancel against the denominator, which keeps
    // the product short and exact to rounding for lopsided splits.
    const auto largest = std::max_element(c.begin(), c.end());
    double lg = log_factorial(k - 2) + (k - 2) * std::log(t);
    for (auto it = c.begin(); it != c.end(); ++it)
        if (it != largest) lg += log_rising(1.0 - t, *it - 1);
    double tail = 1.0;
    for (int i = *largest - 1; i <= n - 2; ++i) tail *= i + 1.0 - t;
    return std::exp(lg) / tail;
}

double jump_rate(double t, const SetPartition& pi)
{
    return jump_rate(t, pi.sizes());
}

double jump_rate_from_dislocation(double t, const SetPartition& pi)
{
    return eppf_dislocation(t, pi.sizes()) / t;
}

double split_rate(double t, int m)
{
    require(t >= 0.0 && t < 1.0, ErrorCode::domain, "time must lie in [0,1)");
    require(m >= 2, ErrorCode::domain, "a block needs at least two elements to split");
    double out = 0.0;
    for (int i = m - 1; i >= 1; --i) out += 1.0 / (i - t);
    return out;
}

double survival(double t0, double t, int m)
{
    require(t0 >= 0.0 && t < 1.0, ErrorCode::domain, "times must lie in [0,1)");
    require(t0 <= t, ErrorCode::argument, "survival needs t0 <= t");
    require(m >= 2, ErrorCode::domain, "a block needs at least two elements to split");
    double out = 1.0;
    for (int i = 1; i < m; ++i) out *= (i - t) / (i - t0);
    return out;
}

double coalescent_rate(int b, int k)
{
    require(b >= 2 && k >= 2 && k <= b, ErrorCode::domain, "coalescent rate needs 2 <= k <= b");
    // (k-2)!(b-k)!/(b-1)! = 1 / ((b-1) C(b-2, k-2))
    const double binom = boost::math::binomial_coefficient<double>(
        static_cast<unsigned>(b - 2), static_cast<unsigned>(k - 2));
    return 1.0 / ((b - 1) * binom);
}

double coalescent_total_rate(int b)
{
    require(b >= 1, ErrorCode::domain, "block count must be positive");
    double out = 0.0;
    for (int k = 2; k <= b; ++k)
        out += boost::math::binomial_coefficient<double>(static_cast<unsigned>(b),
                                                          static_cast<unsigned>(k)) *
               coalescent_rate(b, k);
    return out;
}

double phi(double t, double q)
{
    require_time(t);
    require(q > 0.0 && std::isfinite(q), ErrorCode::domain, "phi needs q > 0");
    return boost::math::digamma(q + 1.0 - t) - boost::math::digamma(1.0 - t);
}

double psi(double t, double q)
{
    require_time(t);
    require(q > 0.0 && std::isfinite(q), ErrorCode::domain, "psi needs q > 0");
    return boost::math::lgamma(1.0 - t) + boost::math::lgamma(q + 1.0) -
           boost::math::lgamma(q + 1.0 - t);
}

double tagged_moment(double t, double q)
{
    require_time(t);
    require(q > 0.0 && std::isfinite(q), ErrorCode::domain, "tagged moment needs q > 0");
    // Gamma(q+1-t) / Gamma(q+1) / Gamma(1-t)
    return boost::math::tgamma_delta_ratio(q + 1.0 - t, t) / boost::math::tgamma(1.0 - t);
}

double time_changed_rate(double u, const SetPartition& pi, double beta_value,
                         double beta_derivative)
{
    require(std::isfinite(u), ErrorCode::domain, "time must be finite");
    require(open_unit(beta_value), ErrorCode::domain, "time change must map into (0,1)");
    require(beta_derivative > 0.0 && std::isfinite(beta_derivative), ErrorCode::domain,
            "time change derivative must be positive");
    return beta_derivative * jump_rate(beta_value, pi);
}

}  // namespace rpcfrag
