#pragma once

#include "rpcfrag/laws.hpp"
#include "rpcfrag/partition.hpp"
#include "rpcfrag/random.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace rpcfrag {

inline constexpr int max_enumeration_n = 12;

std::uint64_t bell_number(int n);

// All partitions of [n] in restricted-growth-string order.
std::vector<SetPartition> enumerate_partitions(int n);

// Position of a partition of [n] in the enumeration order.
class PartitionIndex {
public:
    explicit PartitionIndex(int n);
    int n() const { return n_; }
    std::size_t size() const { return support_.size(); }
    const std::vector<SetPartition>& support() const { return support_; }
    std::size_t operator()(const SetPartition& pi) const;

private:
    int n_;
    std::vector<SetPartition> support_;
    std::map<std::vector<int>, std::size_t> index_;
};

struct ExactLaw {
    int n = 0;
    std::vector<SetPartition> support;
    std::vector<double> probs;
    // Sum of the raw EPPF values before normalization (1 for probability
    // EPPFs evaluated without normalization).
    double normalizer = 1.0;

    double total() const;
};

using Eppf = std::function<double(const Composition&)>;

// Materializes eppf on every partition of [n]. With nontrivial_only the
// one-block partition is left out and the values are normalized, the raw
// total being kept in normalizer.
ExactLaw exact_law(const Eppf& eppf, int n, bool nontrivial_only = false);
ExactLaw exact_law_ruelle(double t, int n);
ExactLaw exact_law_pd(const PdParams& p, int n);
ExactLaw exact_law_dislocation(double t, int n);

struct TestReport {
    std::string name;
    std::string statistic;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::uint64_t replicas = 0;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, double>> extras;
    std::string note;
};

enum class CompareMode { chi_square, total_variation };

// Chi-square mode passes when the p-value exceeds threshold; total-variation
// mode when the distance is below it. Both numbers are always reported.
TestReport compare_distributions(const std::vector<std::uint64_t>& observed,
                                 const ExactLaw& expected, CompareMode mode, double threshold);

double total_variation(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);
double total_variation(const std::vector<std::uint64_t>& observed, const std::vector<double>& probs);

// Pearson statistic with cells of expected count below 5 pooled together.
std::pair<double, int> chi_square_statistic(const std::vector<std::uint64_t>& observed,
                                            const std::vector<double>& probs);
double chi_square_pvalue(double statistic, int dof);

// P(sqrt(n) D_n > x) in the limit, with the usual small-sample correction.
double kolmogorov_pvalue(double d, std::uint64_t n);
// One-sample statistic against a continuous cdf; samples are sorted in place.
double ks_statistic(std::vector<double>& samples, const std::function<double(double)>& cdf);

struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t count = 0;
};

// Compensated two-pass mean and standard error, summed in index order.
MeanEstimate estimate_mean(const std::vector<double>& values);

double diversity_stat(const SetPartition& pi, double alpha);
double tail_index_stat(const MassPartition& s, double alpha, std::size_t rank);

struct RunOptions {
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

// Event given as a list of partitions of [k], k <= 6.
TestReport abs_continuity_check(double alpha, const std::vector<SetPartition>& event, int n_freq,
                                std::uint64_t replicas, const RunOptions& opt,
                                bool escalate = true);

enum class TestFunction { exp_neg, exp_neg2, min_one, one };

TestFunction parse_test_function(const std::string& id);
const char* test_function_name(TestFunction f);
double apply_test_function(TestFunction f, double y);
// Integral of f against e^(-y) dy on (0, infinity).
double test_function_limit(TestFunction f);

TestReport empirical_measure_test(double t, TestFunction f, std::uint64_t replicas,
                                  const RunOptions& opt, double slack = 0.05);

struct MartingaleResult {
    std::vector<TestReport> reports;
    // (t, median of M(t,p)) along nested semigroup paths.
    std::vector<std::pair<double, double>> decay;
    bool decay_monotone = false;
};

// Checks E[M(t,p)] = 1 at each grid time from Beta(1-t,t) draws and, for
// integer p, from semigroup partitions of [n].
MartingaleResult martingale_test(const std::vector<double>& t_grid, double p, int n,
                                 std::uint64_t replicas, const RunOptions& opt,
                                 const std::vector<double>& decay_grid = {});

// Draw-level check: does a nu_u draw restricted to {first coordinate <= 1-eps}
// have two masses >= eps? Stops as soon as the answer is known.
enum class SecondMass { yes, no, unresolved };

struct HazardEstimate {
    double t = 0.0;
    double eps = 0.0;
    double value = 0.0;
    double error = 0.0;  // 3 sigma + quadrature + unresolved draws
    double mc_sigma = 0.0;
    double quadrature_error = 0.0;
    double unresolved_bound = 0.0;
    double prob_record_below = 0.0;  // P(R(t) <= eps) = exp(-value)
    double upper_bound = 0.0;
    double lower_bound = 0.0;
};

// Constants of the hazard-integral bounds for t <= 1/2.
double hazard_upper_bound(double t, double eps);
double hazard_lower_bound(double t, double eps);

HazardEstimate record_hazard_integral(double t, double eps, int quad_points,
                                      std::uint64_t mc_per_point, const RunOptions& opt,
                                      std::size_t max_sticks = 200000);

}  // namespace rpcfrag
