#pragma once

#include "rpcfrag/partition.hpp"

#include <vector>

namespace rpcfrag {

// Poisson-Dirichlet parameters. Proper laws need 0 <= alpha < 1 and
// theta > -alpha; the pair (t, -t) is kept only as the flagged dislocation case.
struct PdParams {
    double alpha = 0.0;
    double theta = 0.0;
    bool dislocation = false;

    static PdParams make(double alpha, double theta);
    static PdParams proper(double alpha, double theta);
    static PdParams dislocation_pair(double alpha);
};

// Block sizes (n_1, ..., n_k), all positive.
using Composition = std::vector<int>;

void validate_composition(const Composition& c);
int composition_total(const Composition& c);

struct SignedLog {
    double log_abs = 0.0;
    int sign = 1;  // 0 encodes an exact zero

    double value() const;
};

SignedLog operator*(SignedLog a, SignedLog b);
SignedLog operator/(SignedLog a, SignedLog b);

// [x]_n = x (x+1) ... (x+n-1)
double rising(double x, int n);
// log [x]_n; every factor must be positive.
double log_rising(double x, int n);
SignedLog signed_log_rising(double x, int n);

double eppf_pd(const PdParams& p, const Composition& c);
SignedLog log_eppf_pd(const PdParams& p, const Composition& c);

double eppf_ruelle(double t, const Composition& c);
SignedLog log_eppf_ruelle(double t, const Composition& c);

// EPPF of the dislocation measure t*nu_t on nontrivial partitions (k >= 2),
// normalized so that p_t(Pi_|2 != 1) = t/(1-t).
double eppf_dislocation(double t, const Composition& c);

// Rate of the jump 1_[n] -> pi, as the ratio q_t(n_1..n_k) / (t (k-1) q_t(n)).
double jump_rate(double t, const SetPartition& pi);
double jump_rate(double t, const Composition& c);
// The same rate computed as p_t(pi) / t from the dislocation EPPF.
double jump_rate_from_dislocation(double t, const SetPartition& pi);

// Total rate at which a block of size m splits: sum_{i=1}^{m-1} 1/(i-t).
double split_rate(double t, int m);
// P(block of size m, intact at t0, is still intact at t).
double survival(double t0, double t, int m);

// Bolthausen-Sznitman rate for one given k-tuple among b blocks.
double coalescent_rate(int b, int k);
// Sum over k of C(b,k) coalescent_rate(b,k).
double coalescent_total_rate(int b);

double phi(double t, double q);
double psi(double t, double q);
double tagged_moment(double t, double q);

double time_changed_rate(double u, const SetPartition& pi, double beta_value,
                         double beta_derivative);

}  // namespace rpcfrag
