#include "rpcfrag/suites.hpp"

#include "rpcfrag/cascade.hpp"
#include "rpcfrag/engines.hpp"
#include "rpcfrag/error.hpp"
#include "rpcfrag/laws.hpp"
#include "rpcfrag/parallel.hpp"
#include "rpcfrag/samplers.hpp"

#include <boost/math/special_functions/binomial.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace rpcfrag {

namespace {

const std::vector<double> t_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Each suite draws from its own seed so suites can run alone or together.
std::uint64_t suite_seed(const SuiteOptions& opt, int criterion)
{
    return splitmix(opt.seed ^ (static_cast<std::uint64_t>(criterion) << 48));
}

std::uint64_t scaled(const SuiteOptions& opt, std::uint64_t base)
{
    return std::max<std::uint64_t>(100, static_cast<std::uint64_t>(std::llround(base * opt.scale)));
}

double binomial(int n, int k)
{
    if (k < 0 || k > n) return 0.0;
    return boost::math::binomial_coefficient<double>(static_cast<unsigned>(n),
                                                      static_cast<unsigned>(k));
}

double relative_gap(double a, double b)
{
    const double m = std::max(std::fabs(a), std::fabs(b));
    return m == 0.0 ? 0.0 : std::fabs(a - b) / m;
}

TestReport make_report(std::string name, std::string statistic, double value, double threshold,
                       bool pass, std::uint64_t replicas, std::uint64_t seed)
{
    TestReport r;
    r.name = std::move(name);
    r.statistic = std::move(statistic);
    r.value = value;
    r.threshold = threshold;
    r.pass = pass;
    r.replicas = replicas;
    r.seed = seed;
    return r;
}

// |mean - target| <= 3 se.
TestReport sigma_report(std::string name, const MeanEstimate& est, double target,
                        std::uint64_t seed)
{
    const double dev = std::fabs(est.mean - target);
    TestReport r = make_report(std::move(name), "abs_deviation", dev, 3.0 * est.std_error,
                               dev <= 3.0 * est.std_error, est.count, seed);
    r.extras = {{"estimate", est.mean}, {"std_error", est.std_error}, {"target", target}};
    return r;
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

using Counts = std::vector<std::uint64_t>;

bool eppf_normalization(const SuiteOptions& opt, const ReportSink& sink)
{
    double worst = 0.0;
    for (double t : t_grid)
        for (int n = 1; n <= 8; ++n) worst = std::max(worst, std::fabs(exact_law_ruelle(t, n).total() - 1.0));
    TestReport r = make_report("eppf_normalization", "max_abs_error", worst, 1e-10, worst <= 1e-10,
                               0, opt.seed);
    r.extras = {{"n_max", 8}};
    sink(r);
    return r.pass;
}

bool rate_identity(const SuiteOptions& opt, const ReportSink& sink)
{
    double worst = 0.0;
    std::uint64_t checked = 0;
    for (int n = 2; n <= 8; ++n) {
        const auto support = enumerate_partitions(n);
        for (double t : t_grid)
            for (const auto& pi : support) {
                if (pi.is_trivial()) continue;
                worst = std::max(worst, relative_gap(jump_rate(t, pi), jump_rate_from_dislocation(t, pi)));
                ++checked;
            }
    }
    TestReport r = make_report("rate_identity", "max_relative_error", worst, 1e-12, worst <= 1e-12,
                               0, opt.seed);
    r.extras = {{"partitions_checked", static_cast<double>(checked)}};
    sink(r);
    return r.pass;
}

bool rate_consistency(const SuiteOptions& opt, const ReportSink& sink)
{
    double worst = 0.0;
    std::uint64_t checked = 0;
    for (int n = 2; n <= 7; ++n) {
        const auto support = enumerate_partitions(n);
        for (double t : t_grid)
            for (const auto& pi : support) {
                if (pi.is_trivial()) continue;
                // Extensions of pi to [n+1]: n+1 joins a block or stands alone.
                auto labels = pi.labels();
                labels.push_back(0);
                double sum = 0.0;
                for (int b = 0; b <= pi.block_count(); ++b) {
                    labels.back() = b;
                    sum += jump_rate(t, SetPartition::from_labels(labels));
                }
                worst = std::max(worst, relative_gap(sum, jump_rate(t, pi)));
                ++checked;
            }
    }
    TestReport r = make_report("rate_consistency", "max_relative_error", worst, 1e-10,
                               worst <= 1e-10, 0, opt.seed);
    r.extras = {{"partitions_checked", static_cast<double>(checked)}};
    sink(r);
    return r.pass;
}

bool erosion(const SuiteOptions& opt, const ReportSink& sink)
{
    double worst = 0.0;
    bool monotone = true;
    double last_rate = 0.0;
    for (double t : t_grid) {
        double prev = std::numeric_limits<double>::infinity();
        for (int n = 2; n <= 1000; ++n) {
            const double rate = jump_rate(t, Composition{1, n - 1});
            worst = std::max(worst, relative_gap(rate, 1.0 / (n - 1 - t)));
            if (!(rate < prev)) monotone = false;
            prev = rate;
        }
        last_rate = std::max(last_rate, prev);
    }
    TestReport r = make_report("erosion", "max_relative_error", worst, 1e-12,
                               worst <= 1e-12 && monotone, 0, opt.seed);
    r.extras = {{"n_max", 1000}, {"monotone", monotone ? 1.0 : 0.0}, {"largest_rate_at_n_max", last_rate}};
    sink(r);
    return r.pass;
}

bool sampler_exactness(const SuiteOptions& opt, const ReportSink& sink)
{
    const std::uint64_t seed = suite_seed(opt, 5);
    const std::uint64_t reps = scaled(opt, 100000);
    const PartitionIndex index(4);
    bool all = true;
    for (double t : {0.3, 0.5, 0.7}) {
        std::vector<std::size_t> cell(reps);
        const PdParams p = PdParams::proper(t, 0.0);
        parallel_for(reps, opt.threads, [&](std::uint64_t r) {
            RandomStream rng(seed, r);
            cell[r] = index(sample_crp(p, 4, rng));
        });
        Counts counts(index.size(), 0);
        for (auto c : cell) ++counts[c];
        TestReport rep = compare_distributions(counts, exact_law_ruelle(t, 4), CompareMode::chi_square, 1e-3);
        rep.name = "sampler_exactness t=" + fmt(t);
        rep.seed = seed;
        rep.extras.emplace_back("t", t);
        all = all && rep.pass;
        sink(rep);
    }
    return all;
}

bool cross_engine(const SuiteOptions& opt, const ReportSink& sink)
{
    const std::uint64_t seed = suite_seed(opt, 6);
    const std::vector<double> ts{0.3, 0.5, 0.7};
    const std::size_t g = ts.size();
    const PartitionIndex index(3);
    const std::uint64_t n_semi = scaled(opt, 100000);
    const std::uint64_t n_chain = scaled(opt, 100000);
    const std::uint64_t n_casc = scaled(opt, 10000);
    const double cascade_eps = 0.0025;

    // Disjoint stream ranges per engine.
    std::vector<std::size_t> semi(n_semi * g), chain(n_chain * g), casc(n_casc * g);
    parallel_for(n_semi, opt.threads, [&](std::uint64_t r) {
        RandomStream rng(seed, r);
        const auto parts = sample_marginal_semigroup(ts, 3, rng);
        for (std::size_t j = 0; j < g; ++j) semi[r * g + j] = index(parts[j]);
    });
    const EngineConfig cfg;
    parallel_for(n_chain, opt.threads, [&](std::uint64_t r) {
        RandomStream rng(seed, n_semi + r);
        const Trajectory traj = simulate_jump_chain(3, ts.back(), cfg, rng);
        for (std::size_t j = 0; j < g; ++j) chain[r * g + j] = index(state_at(traj, ts[j]));
    });
    std::vector<double> bounds(n_casc);
    parallel_for(n_casc, opt.threads, [&](std::uint64_t r) {
        RandomStream rng(seed, n_semi + n_chain + r);
        const CascadeTree tree = build_cascade(ts, cascade_eps, rng);
        const auto parts = cascade_partitions(tree, 3, rng);
        for (std::size_t j = 0; j < g; ++j) casc[r * g + j] = index(parts[j]);
        bounds[r] = tree.truncation_bounds.back();
    });
    const double mean_bound = estimate_mean(bounds).mean;

    auto tally = [&](const std::vector<std::size_t>& cells, std::size_t j) {
        Counts c(index.size(), 0);
        for (std::size_t i = j; i < cells.size(); i += g) ++c[cells[i]];
        return c;
    };
    bool all = true;
    for (std::size_t j = 0; j < g; ++j) {
        const Counts a = tally(semi, j), b = tally(chain, j), c = tally(casc, j);
        const ExactLaw law = exact_law_ruelle(ts[j], 3);
        const std::pair<const char*, double> pairs[] = {
            {"semigroup_vs_jumpchain", total_variation(a, b)},
            {"semigroup_vs_cascade", total_variation(a, c)},
            {"jumpchain_vs_cascade", total_variation(b, c)},
        };
        for (const auto& [label, tv] : pairs) {
            TestReport rep = make_report(std::string("cross_engine ") + label + " t=" + fmt(ts[j]),
                                         "total_variation", tv, 0.03, tv < 0.03,
                                         std::string(label).find("cascade") != std::string::npos ? n_casc : n_chain,
                                         seed);
            rep.extras = {{"t", ts[j]},
                          {"tv_semigroup_exact", total_variation(a, law.probs)},
                          {"tv_jumpchain_exact", total_variation(b, law.probs)},
                          {"tv_cascade_exact", total_variation(c, law.probs)},
                          {"cascade_eps", cascade_eps},
                          {"cascade_mean_truncation_bound", mean_bound}};
            all = all && rep.pass;
            sink(rep);
        }
    }
    return all;
}

bool tagged_fragment(const SuiteOptions& opt, const ReportSink& sink)
{
    const std::uint64_t seed = suite_seed(opt, 7);
    const std::uint64_t reps = scaled(opt, 100000);
    const std::vector<double> ts{0.3, 0.5, 0.7};
    const int n = 200;
    const std::size_t g = ts.size();
    std::vector<int> size_of_one(reps * g);
    parallel_for(reps, opt.threads, [&](std::uint64_t r) {
        RandomStream rng(seed, r);
        const auto parts = sample_marginal_semigroup(ts, n, rng);
        for (std::size_t j = 0; j < g; ++j)
            size_of_one[r * g + j] = static_cast<int>(parts[j].block(0).size());
    });
    bool all = true;
    for (std::size_t j = 0; j < g; ++j)
        for (int k = 1; k <= 3; ++k) {
            // C(b-1,k)/C(n-1,k) is unbiased for the k-th moment of the frequency.
            std::vector<double> v(reps);
            const double denom = binomial(n - 1, k);
            for (std::uint64_t r = 0; r < reps; ++r) v[r] = binomial(size_of_one[r * g + j] - 1, k) / denom;
            double target = 1.0;
            for (int i = 1; i <= k; ++i) target *= (i - ts[j]) / i;
            TestReport rep = sigma_report("tagged_fragment t=" + fmt(ts[j]) + " k=" + std::to_string(k),
                                          estimate_mean(v), target, seed);
            rep.extras.emplace_back("n", n);
            all = all && rep.pass;
            sink(rep);
        }
    return all;
}

bool duality(const SuiteOptions& opt, const ReportSink& sink)
{
    const std::uint64_t seed = suite_seed(opt, 8);
    const TestReport rep = duality_check(0.7, 0.5, 0.2, scaled(opt, 100000), RunOptions{seed, opt.threads});
    sink(rep);
    return rep.pass;
}

std::string sequence_key(const std::vector<SetPartition>& states)
{
    std::string key;
    for (const auto& s : states) {
        for (int l : s.labels()) key.push_back(static_cast<char>('0' + l));
        key.push_back('|');
    }
    return key;
}

bool coalescent(const SuiteOptions& opt, const ReportSink& sink)
{
    const std::uint64_t seed = suite_seed(opt, 9);
    const std::uint64_t reps = scaled(opt, 100000);
    std::vector<double> hold(reps), pair(reps);
    parallel_for(reps, opt.threads, [&](std::uint64_t r) {
        RandomStream rng(seed, r);
        const Trajectory traj = simulate_coalescent(3, 1e6, rng);
        hold[r] = traj.events.at(1).time;
        pair[r] = traj.events[1].partition.block_count() == 2 ? 1.0 : 0.0;
    });
    bool all = true;
    const MeanEstimate h = estimate_mean(hold);
    TestReport rh = sigma_report("coalescent mean first-merge time", h, 0.5, seed);
    rh.extras.emplace_back("total_rate_estimate", 1.0 / h.mean);
    all = all && rh.pass;
    sink(rh);
    TestReport rp = sigma_report("coalescent pair-merge probability", estimate_mean(pair), 0.75, seed);
    all = all && rp.pass;
    sink(rp);

    // Reversed jump chains on s in [0.2, 1] against the coalescent on the
    // same window, compared through the sequence of visited states.
    const double s_lo = 0.2, s_hi = 1.0;
    const EngineConfig cfg;
    std::vector<std::string> rev(reps), fwd(reps);
    parallel_for(reps, opt.threads, [&](std::uint64_t r) {
        RandomStream rng(seed, reps + r);
        const Trajectory frag = simulate_jump_chain(3, std::exp(-s_lo), cfg, rng);
        const Trajectory back = reverse_time(frag, std::exp(-s_hi), std::exp(-s_lo));
        // The window ends come back through exp and log, so take them from
        // the reversed path rather than from s_lo and s_hi.
        rev[r] = sequence_key(states_in_window(back, back.events.front().time, back.horizon));
    });
    parallel_for(reps, opt.threads, [&](std::uint64_t r) {
        RandomStream rng(seed, 2 * reps + r);
        const Trajectory traj = simulate_coalescent(3, s_hi, rng);
        fwd[r] = sequence_key(states_in_window(traj, s_lo, s_hi));
    });
    std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> cells;
    for (const auto& k : rev) ++cells[k].first;
    for (const auto& k : fwd) ++cells[k].second;
    Counts a, b;
    for (const auto& [k, c] : cells) {
        a.push_back(c.first);
        b.push_back(c.second);
    }
    const double tv = total_variation(a, b);
    TestReport rt = make_report("coalescent reversed jump chain vs coalescent", "total_variation", tv,
                                0.03, tv < 0.03, reps, seed);
    rt.extras = {{"s_lo", s_lo}, {"s_hi", s_hi}, {"sequences", static_cast<double>(cells.size())}};
    all = all && rt.pass;
    sink(rt);
    return all;
}

bool martingale(const SuiteOptions& opt, const ReportSink& sink)
{
    const std::uint64_t seed = suite_seed(opt, 10);
    const std::uint64_t reps = scaled(opt, 100000);
    const std::vector<double> ts{0.3, 0.5, 0.7};
    const RunOptions run{seed, opt.threads};
    bool all = true;
    for (double p : {0.5, 1.0, 2.0}) {
        const std::vector<double> decay =
            p == 1.0 ? std::vector<double>{0.5, 0.7, 0.9, 0.95, 0.99} : std::vector<double>{};
        MartingaleResult res = martingale_test(ts, p, 100, reps, run, decay);
        for (auto& rep : res.reports) {
            rep.name += " t=" + fmt(rep.extras.front().second) + " p=" + fmt(p);
            all = all && rep.pass;
            sink(rep);
        }
        if (!res.decay.empty()) {
            double violations = 0.0;
            for (std::size_t j = 1; j < res.decay.size(); ++j)
                if (res.decay[j].second > res.decay[j - 1].second) violations += 1.0;
            TestReport rep = make_report("martingale decay trend p=" + fmt(p), "median_increases",
                                         violations, static_cast<double>(res.decay.size() - 1), true,
                                         std::min<std::uint64_t>(reps, 2000), seed);
            for (const auto& [t, med] : res.decay) rep.extras.emplace_back("median_at_t=" + fmt(t), med);
            rep.note = res.decay_monotone ? "medians decrease along the grid"
                                          : "medians not monotone; trend is reported, not asserted";
            sink(rep);
        }
    }
    return all;
}

bool empirical_measure(const SuiteOptions& opt, const ReportSink& sink)
{
    const std::uint64_t seed = suite_seed(opt, 11);
    const std::uint64_t reps = scaled(opt, 100000);
    bool all = true;
    for (TestFunction f : {TestFunction::exp_neg, TestFunction::exp_neg2}) {
        TestReport rep = empirical_measure_test(0.95, f, reps, RunOptions{seed, opt.threads});
        all = all && rep.pass;
        sink(rep);
    }
    return all;
}

bool record_hazard(const SuiteOptions& opt, const ReportSink& sink)
{
    const std::uint64_t seed = suite_seed(opt, 12);
    const std::uint64_t mc = scaled(opt, 2000);
    const std::vector<double> ts{0.1, 0.3, 0.5};
    const std::vector<double> epss{1e-3, 1e-6, 1e-9};
    bool all = true;
    std::vector<std::vector<HazardEstimate>> grid;
    for (double t : ts) {
        grid.emplace_back();
        for (double e : epss) {
            const HazardEstimate h = record_hazard_integral(t, e, 16, mc, RunOptions{seed, opt.threads});
            grid.back().push_back(h);
            const bool pass = h.value - h.error <= h.upper_bound && h.value + h.error >= h.lower_bound;
            TestReport rep = make_report("record_hazard t=" + fmt(t) + " eps=" + fmt(e),
                                         "estimate_within_bounds", h.value, h.upper_bound, pass,
                                         mc * 16, seed);
            rep.extras = {{"t", t},
                          {"eps", e},
                          {"error", h.error},
                          {"mc_sigma", h.mc_sigma},
                          {"quadrature_error", h.quadrature_error},
                          {"unresolved_bound", h.unresolved_bound},
                          {"lower_bound", h.lower_bound},
                          {"upper_bound", h.upper_bound},
                          {"prob_record_below", h.prob_record_below}};
            rep.note = "pass iff lower - error <= estimate <= upper + error";
            all = all && pass;
            sink(rep);
        }
    }
    // Monotone in t and in eps, allowing for the error bars.
    double worst = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = 0; j < epss.size(); ++j) {
            const auto& h = grid[i][j];
            if (i + 1 < ts.size()) {
                const auto& up = grid[i + 1][j];
                worst = std::max(worst, h.value - up.value - h.error - up.error);
            }
            if (j + 1 < epss.size()) {
                const auto& up = grid[i][j + 1];
                worst = std::max(worst, h.value - up.value - h.error - up.error);
            }
        }
    TestReport mono = make_report("record_hazard monotonicity", "max_violation", worst, 0.0,
                                  worst <= 0.0, mc * 16, seed);
    all = all && mono.pass;
    sink(mono);
    return all;
}

bool abs_continuity(const SuiteOptions& opt, const ReportSink& sink)
{
    const std::uint64_t seed = suite_seed(opt, 13);
    const std::uint64_t reps = scaled(opt, 20000);
    const std::vector<SetPartition> event{SetPartition::singletons(2)};
    bool all = true;
    for (double alpha : {0.3, 0.5}) {
        TestReport rep = abs_continuity_check(alpha, event, 10000, reps, RunOptions{seed, opt.threads});
        rep.name += " alpha=" + fmt(alpha);
        all = all && rep.pass;
        sink(rep);
    }
    return all;
}

using SuiteFn = bool (*)(const SuiteOptions&, const ReportSink&);

struct SuiteEntry {
    SuiteInfo info;
    SuiteFn run;
    bool exact;
};

const std::vector<SuiteEntry>& registry()
{
    static const std::vector<SuiteEntry> entries{
        {{"eppf-normalization", 1, "exact laws sum to one for n <= 8"}, eppf_normalization, true},
        {{"rate-identity", 2, "jump rates equal the dislocation EPPF over t"}, rate_identity, true},
        {{"rate-consistency", 3, "jump rates are consistent under restriction"}, rate_consistency, true},
        {{"erosion", 4, "singleton split rate 1/(n-1-t), vanishing"}, erosion, true},
        {{"sampler-exactness", 5, "CRP draws on P_4 against the exact law"}, sampler_exactness, false},
        {{"cross-engine", 6, "semigroup, jump chain and cascade agree on P_3"}, cross_engine, false},
        {{"tagged-fragment", 7, "moments of the tagged fragment"}, tagged_fragment, false},
        {{"duality", 8, "coagulation of Poisson-Dirichlet masses"}, duality, false},
        {{"coalescent", 9, "coalescent rates and time reversal"}, coalescent, false},
        {{"martingale", 10, "mean-one martingale and its decay"}, martingale, false},
        {{"empirical-measure", 11, "empirical measure near t = 1"}, empirical_measure, false},
        {{"record-hazard", 12, "record hazard integral within its bounds"}, record_hazard, false},
        {{"abs-continuity", 13, "dislocation law through the diversity"}, abs_continuity, false},
    };
    return entries;
}

}  // namespace

TestReport duality_check(double alpha, double beta, double theta, std::uint64_t reps,
                         const RunOptions& opt)
{
    require(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0, ErrorCode::domain,
            "alpha and beta must lie in (0,1)");
    require(theta > -alpha * beta, ErrorCode::domain, "theta must exceed -alpha beta");
    require(reps >= 2, ErrorCode::argument, "at least two replicas are required");
    const std::uint64_t seed = opt.seed;
    const PdParams outer = PdParams::proper(alpha, theta);
    const PdParams coag = PdParams::proper(beta, theta / alpha);
    const double tol_outer = 0.05, tol_coag = 1e-3;
    std::vector<double> value(reps), bound(reps);
    parallel_for(reps, opt.threads, [&](std::uint64_t r) {
        RandomStream rng(seed, r);
        const MassPartition s = sample_pd_ranked(outer, tol_outer, rng);
        const MassPartition q = sample_pd_ranked(coag, tol_coag, rng);
        // Paint-box over q on the atoms of s; an atom falling in q's dust is
        // kept as a singleton.
        std::vector<double> edges(q.masses.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < q.masses.size(); ++i) edges[i] = acc += q.masses[i];
        std::vector<double> merged(q.masses.size(), 0.0);
        double sq = 0.0;
        for (double w : s.masses) {
            const auto it = std::upper_bound(edges.begin(), edges.end(), rng.uniform());
            if (it == edges.end())
                sq += w * w;
            else
                merged[static_cast<std::size_t>(it - edges.begin())] += w;
        }
        // The unsampled mass D of s is split among atoms that each land in
        // block b with probability q_b. Averaged over their throws it adds
        // 2 D sum_b A_b q_b exactly, plus a square term of at least D^2 Q.
        const double d = s.dust_bound, dq = q.dust_bound;
        double cross = 0.0, big_q = 0.0;
        for (std::size_t b = 0; b < merged.size(); ++b) {
            sq += merged[b] * merged[b];
            cross += merged[b] * q.masses[b];
            big_q += q.masses[b] * q.masses[b];
        }
        value[r] = sq + 2.0 * d * cross + d * d * big_q;
        // Left out, in expectation: the rest of the square term (D^2 (1 - Q)),
        // atoms sharing a block of q's dust (dq^2) and D in those blocks
        // (2 D dq + D^2 dq).
        bound[r] = d * d * (1.0 - big_q + dq) + dq * dq + 2.0 * d * dq;
    });
    const MeanEstimate est = estimate_mean(value);
    const double dust = estimate_mean(bound).mean;
    const double target = (1.0 - alpha * beta) / (1.0 + theta);
    const double lo = est.mean - 3.0 * est.std_error;
    const double hi = est.mean + dust + 3.0 * est.std_error;
    const bool pass = target >= lo && target <= hi;
    TestReport rep = make_report("duality", "abs_deviation", std::fabs(est.mean - target),
                                 3.0 * est.std_error + dust, pass, reps, seed);
    rep.extras = {{"estimate", est.mean}, {"std_error", est.std_error}, {"dust_correction", dust},
                  {"target", target},     {"alpha", alpha},           {"beta", beta},
                  {"theta", theta}};
    rep.note = "band [estimate - 3se, estimate + dust_correction + 3se]";
    return rep;
}

const std::vector<SuiteInfo>& suite_catalog()
{
    static const std::vector<SuiteInfo> catalog = [] {
        std::vector<SuiteInfo> out;
        for (const auto& e : registry()) out.push_back(e.info);
        return out;
    }();
    return catalog;
}

std::vector<std::string> resolve_suites(const std::string& selector)
{
    std::vector<std::string> out;
    for (const auto& e : registry())
        if (selector == "all" || (selector == "exact" && e.exact) || selector == e.info.name)
            out.push_back(e.info.name);
    if (out.empty()) fail(ErrorCode::argument, "unknown suite '" + selector + "'");
    return out;
}

bool run_suite(const std::string& name, const SuiteOptions& opt, const ReportSink& sink)
{
    require(opt.scale > 0.0, ErrorCode::argument, "scale must be positive");
    for (const auto& e : registry())
        if (e.info.name == name) return e.run(opt, sink);
    fail(ErrorCode::argument, "unknown suite '" + name + "'");
}

}  // namespace rpcfrag
