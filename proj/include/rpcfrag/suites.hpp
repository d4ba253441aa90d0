#pragma once

#include "rpcfrag/oracle.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rpcfrag {

struct SuiteOptions {
    std::uint64_t seed = 0;
    unsigned threads = 1;
    // Multiplies every Monte Carlo replica count (1 = the acceptance sizes).
    double scale = 1.0;
};

struct SuiteInfo {
    std::string name;
    int criterion;
    std::string summary;
};

using ReportSink = std::function<void(const TestReport&)>;

// E[sum of squared masses] after coagulating ranked PD(alpha, theta) by a
// PD(beta, theta/alpha) paint-box, against (1 - alpha beta)/(1 + theta). The
// mass left unplaced by truncation widens the band on the upper side only.
TestReport duality_check(double alpha, double beta, double theta, std::uint64_t replicas,
                         const RunOptions& opt);

const std::vector<SuiteInfo>& suite_catalog();

// "all", "exact" (the closed-form suites) or one suite name.
std::vector<std::string> resolve_suites(const std::string& selector);

// Streams every report of one suite to sink; true when all of them pass.
bool run_suite(const std::string& name, const SuiteOptions& opt, const ReportSink& sink);

}  // namespace rpcfrag
