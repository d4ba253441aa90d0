#include "rpcfrag/random.hpp"

#include "rpcfrag/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace rpcfrag {

namespace {

std::uint64_t mix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Hashing (seed, stream_id) into the engine's integer seed is several times
// cheaper than a seed_seq, which matters at one stream per replica.
std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream_id)
{
    return std::mt19937_64(mix(seed ^ mix(stream_id ^ 0x5250434652414731ull)));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(seeded_engine(seed, stream_id))
{
}

std::uint64_t RandomStream::below(std::uint64_t n)
{
    require(n > 0, ErrorCode::argument, "empty range");
    // Rejection keeps the draw exactly uniform.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

double RandomStream::exponential()
{
    return -std::log(uniform_open());
}

double RandomStream::gamma(double shape)
{
    require(shape > 0.0, ErrorCode::domain, "gamma shape must be positive");
    std::gamma_distribution<double> dist(shape, 1.0);
    return dist(engine_);
}

double RandomStream::log_gamma(double shape)
{
    require(shape > 0.0, ErrorCode::domain, "gamma shape must be positive");
    if (shape >= 1.0) return std::log(gamma(shape));
    // G(a) = G(a+1) U^(1/a)
    const double g = gamma(shape + 1.0);
    return std::log(g) + std::log(uniform_open()) / shape;
}

std::pair<double, double> RandomStream::beta_pair(double a, double b)
{
    require(a > 0.0 && b > 0.0, ErrorCode::domain, "beta parameters must be positive");
    const double la = log_gamma(a);
    const double lb = log_gamma(b);
    // x = 1/(1+exp(lb-la)), 1-x = 1/(1+exp(la-lb))
    const double d = lb - la;
    if (d > 0.0) {
        const double e = std::exp(-d);
        return {e / (1.0 + e), 1.0 / (1.0 + e)};
    }
    const double e = std::exp(d);
    return {1.0 / (1.0 + e), e / (1.0 + e)};
}

double RandomStream::log_beta(double a, double b)
{
    require(a > 0.0 && b > 0.0, ErrorCode::domain, "beta parameters must be positive");
    const double la = log_gamma(a);
    const double lb = log_gamma(b);
    // log x = -log(1 + exp(lb - la))
    const double d = lb - la;
    if (d > 0.0) return -d - std::log1p(std::exp(-d));
    return -std::log1p(std::exp(d));
}

std::uint64_t RandomStream::poisson(double mean)
{
    require(mean >= 0.0 && std::isfinite(mean), ErrorCode::domain, "invalid Poisson mean");
    if (mean == 0.0) return 0;
    std::poisson_distribution<std::uint64_t> dist(mean);
    return dist(engine_);
}

double RandomStream::positive_stable(double alpha)
{
    require(alpha > 0.0 && alpha < 1.0, ErrorCode::domain, "stable index must lie in (0,1)");
    // Kanter's representation.
    const double u = std::numbers::pi * uniform_open();
    const double e = exponential();
    const double a = std::sin(alpha * u) / std::pow(std::sin(u), 1.0 / alpha);
    const double b = std::pow(std::sin((1.0 - alpha) * u) / e, (1.0 - alpha) / alpha);
    return a * b;
}

}  // namespace rpcfrag
