#pragma once

#include "rpcfrag/laws.hpp"
#include "rpcfrag/partition.hpp"
#include "rpcfrag/random.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace rpcfrag {

inline constexpr double default_truncation_tol = 1e-6;
// Stick count at which stick-breaking gives up on the tolerance; the unspent
// mass stays in dust_bound.
inline constexpr std::size_t default_max_sticks = 1000000;

struct SizeBiasedSequence {
    std::vector<double> sticks;
    double dust_bound = 0.0;
};

// Incremental GEM(alpha, theta) stick-breaking.
class StickBreaker {
public:
    explicit StickBreaker(const PdParams& p);

    // Next size-biased mass (1-Y_1)...(1-Y_{m-1}) Y_m.
    double next(RandomStream& rng);
    double remaining() const { return remaining_; }
    std::size_t count() const { return count_; }

private:
    double alpha_;
    double theta_;
    double remaining_ = 1.0;
    std::size_t count_ = 0;
};

SizeBiasedSequence sample_gem(const PdParams& p, double stop_tol, RandomStream& rng,
                              std::size_t max_sticks = default_max_sticks);

MassPartition sample_pd_ranked(const PdParams& p, double trunc_tol, RandomStream& rng,
                               std::size_t max_sticks = default_max_sticks);

// Block labels of a Chinese restaurant draw, in order of table creation.
std::vector<int> sample_crp_labels(const PdParams& p, int n, RandomStream& rng);
SetPartition sample_crp(const PdParams& p, int n, RandomStream& rng);

SetPartition paint_box(const MassPartition& s, int n, RandomStream& rng);

SizeBiasedSequence size_biased_permutation(const MassPartition& s, RandomStream& rng);

// Total mass of nu_t on {first size-biased coordinate <= cap}, i.e.
// int_0^cap (1-y)^(-1) y^(-t) dy.
double nu_restricted_mass(double t, double cap);

struct FirstCoordinate {
    double x;
    double one_minus_x;
};

// Draws from nu_t restricted to {first size-biased coordinate <= cap},
// normalized to a probability. Building the sampler tabulates the first
// coordinate's distribution once; draws then reuse the table.
class NuSizeBiasedSampler {
public:
    NuSizeBiasedSampler(double t, double cap);

    double t() const { return t_; }
    double cap() const { return cap_; }
    // Mass of the restricted measure (tabulated; agrees with
    // nu_restricted_mass to quadrature accuracy).
    double total_mass() const { return cumulative_.back(); }
    // Unnormalized mass of {first coordinate <= x}, for x in (0, cap].
    double mass_below(double x) const;

    FirstCoordinate quantile(double u) const;
    FirstCoordinate draw_first(RandomStream& rng) const;
    SizeBiasedSequence draw(RandomStream& rng, double stop_tol = default_truncation_tol,
                            std::size_t max_sticks = default_max_sticks) const;

private:
    double integrand(double z) const;
    double segment(double lo, double hi) const;
    FirstCoordinate from_z(double z) const;

    double t_;
    double cap_;
    double a_;  // 1/(1-t)
    double z_cap_;
    std::vector<double> nodes_;
    std::vector<double> cumulative_;
};

SizeBiasedSequence sample_nu_sizebiased(double t, double cap, RandomStream& rng,
                                        double stop_tol = default_truncation_tol);

}  // namespace rpcfrag
