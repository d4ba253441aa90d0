#pragma once

#include <cstdint>
#include <random>
#include <utility>

namespace rpcfrag {

// Reproducible generator addressed by (seed, stream_id). Replica r of a run
// uses stream_id = r. The engine is mt19937_64 seeded with a 64-bit hash of
// the pair; both are fully specified, so integer output is platform
// independent.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() { return engine_(); }
    // [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    // (0,1)
    double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }
    // Uniform integer in {0, ..., n-1}.
    std::uint64_t below(std::uint64_t n);

    double exponential();
    double gamma(double shape);
    // log of a Gamma(shape) variate; stays finite for tiny shapes.
    double log_gamma(double shape);
    // Beta(a,b) draw returned with its complement, both computed without
    // cancellation.
    std::pair<double, double> beta_pair(double a, double b);
    double beta(double a, double b) { return beta_pair(a, b).first; }
    double log_beta(double a, double b);
    std::uint64_t poisson(double mean);
    // Positive stable variable with Laplace transform exp(-lambda^alpha).
    double positive_stable(double alpha);

    std::mt19937_64& engine() { return engine_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

}  // namespace rpcfrag
