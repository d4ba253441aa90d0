#include "rpcfrag.h"

#include "rpcfrag/cascade.hpp"
#include "rpcfrag/engines.hpp"
#include "rpcfrag/error.hpp"
#include "rpcfrag/json_io.hpp"
#include "rpcfrag/laws.hpp"
#include "rpcfrag/oracle.hpp"
#include "rpcfrag/parallel.hpp"
#include "rpcfrag/samplers.hpp"
#include "rpcfrag/suites.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

using namespace rpcfrag;

struct rpcfrag_stream {
    RandomStream rng;
};

struct rpcfrag_partition {
    SetPartition pi;
};

namespace {

thread_local std::string last_error;

rpcfrag_status status_of(ErrorCode code)
{
    switch (code) {
    case ErrorCode::domain: return RPCFRAG_ERR_DOMAIN;
    case ErrorCode::argument: return RPCFRAG_ERR_ARGUMENT;
    case ErrorCode::malformed_partition: return RPCFRAG_ERR_MALFORMED_PARTITION;
    case ErrorCode::configuration: return RPCFRAG_ERR_CONFIGURATION;
    case ErrorCode::numeric: return RPCFRAG_ERR_NUMERIC;
    case ErrorCode::integrity: return RPCFRAG_ERR_INTEGRITY;
    case ErrorCode::construction: return RPCFRAG_ERR_CONSTRUCTION;
    }
    return RPCFRAG_ERR_INTERNAL;
}

template <class F>
rpcfrag_status guarded(F&& body)
{
    try {
        last_error.clear();
        body();
        return RPCFRAG_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        last_error = e.what();
        return RPCFRAG_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown failure";
        return RPCFRAG_ERR_INTERNAL;
    }
}

void require_out(const void* p)
{
    require(p != nullptr, ErrorCode::argument, "null pointer argument");
}

Composition composition(const int* parts, int k)
{
    require(k >= 1 && parts != nullptr, ErrorCode::argument, "empty composition");
    return Composition(parts, parts + k);
}

bool set(double v) { return !std::isnan(v); }

double get(double v, double fallback) { return set(v) ? v : fallback; }

double need(double v, const char* what)
{
    if (!set(v)) fail(ErrorCode::argument, std::string("missing parameter --") + what);
    return v;
}

int need_n(const rpcfrag_params& p)
{
    require(p.n >= 1, ErrorCode::argument, "missing or nonpositive parameter --n");
    return p.n;
}

std::vector<double> times_of(const rpcfrag_params& p)
{
    if (p.time_count > 0) {
        require(p.times != nullptr, ErrorCode::argument, "null times array");
        return std::vector<double>(p.times, p.times + p.time_count);
    }
    if (set(p.t)) return {p.t};
    fail(ErrorCode::argument, "missing parameter --times");
}

std::uint64_t replicas_of(const rpcfrag_params& p, std::uint64_t fallback)
{
    return p.replicas > 0 ? p.replicas : fallback;
}

RunOptions run_options(const rpcfrag_params& p)
{
    return RunOptions{p.seed, resolve_threads(p.threads)};
}

void emit(rpcfrag_sink sink, void* user, const Json& j)
{
    const std::string s = j.dump();
    sink(s.c_str(), user);
}

// Produces per-replica records in parallel and flushes them in replica order,
// a block at a time.
template <class Make>
void stream_replicas(const rpcfrag_params& p, std::uint64_t replicas, rpcfrag_sink sink, void* user,
                     Make&& make)
{
    const unsigned threads = resolve_threads(p.threads);
    const std::uint64_t block = 4096;
    std::vector<std::vector<Json>> out;
    for (std::uint64_t begin = 0; begin < replicas; begin += block) {
        const std::uint64_t count = std::min(block, replicas - begin);
        out.assign(count, {});
        parallel_for(count, threads, [&](std::uint64_t i) {
            RandomStream rng(p.seed, begin + i);
            out[i] = make(begin + i, rng);
        });
        for (const auto& records : out)
            for (const auto& j : records) emit(sink, user, j);
    }
}

PdParams pd_params(const rpcfrag_params& p)
{
    if (set(p.alpha)) return PdParams::make(p.alpha, get(p.theta, 0.0));
    return PdParams::make(need(p.t, "alpha"), get(p.theta, 0.0));
}

Json report_record(const TestReport& r)
{
    Json j = to_json(r);
    j["record"] = "report";
    return j;
}

}  // namespace

extern "C" {

const char* rpcfrag_last_error(void) { return last_error.c_str(); }

const char* rpcfrag_status_name(rpcfrag_status status)
{
    switch (status) {
    case RPCFRAG_OK: return "ok";
    case RPCFRAG_ERR_DOMAIN: return "domain";
    case RPCFRAG_ERR_ARGUMENT: return "argument";
    case RPCFRAG_ERR_MALFORMED_PARTITION: return "malformed_partition";
    case RPCFRAG_ERR_CONFIGURATION: return "configuration";
    case RPCFRAG_ERR_NUMERIC: return "numeric";
    case RPCFRAG_ERR_INTEGRITY: return "integrity";
    case RPCFRAG_ERR_CONSTRUCTION: return "construction";
    case RPCFRAG_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* rpcfrag_version(void) { return "1.0.0"; }

rpcfrag_status rpcfrag_stream_create(uint64_t seed, uint64_t stream_id, rpcfrag_stream** out)
{
    return guarded([&] {
        require_out(out);
        *out = new rpcfrag_stream{RandomStream(seed, stream_id)};
    });
}

void rpcfrag_stream_destroy(rpcfrag_stream* stream) { delete stream; }

rpcfrag_status rpcfrag_stream_uniform(rpcfrag_stream* stream, double* out)
{
    return guarded([&] {
        require_out(stream);
        require_out(out);
        *out = stream->rng.uniform();
    });
}

rpcfrag_status rpcfrag_partition_parse(const char* json, rpcfrag_partition** out)
{
    return guarded([&] {
        require_out(json);
        require_out(out);
        *out = new rpcfrag_partition{parse_partition(json)};
    });
}

rpcfrag_status rpcfrag_partition_from_labels(const int* labels, int n, rpcfrag_partition** out)
{
    return guarded([&] {
        require_out(labels);
        require_out(out);
        require(n >= 1, ErrorCode::argument, "empty ground set");
        *out = new rpcfrag_partition{SetPartition::from_labels(std::vector<int>(labels, labels + n))};
    });
}

void rpcfrag_partition_destroy(rpcfrag_partition* pi) { delete pi; }

int rpcfrag_partition_size(const rpcfrag_partition* pi) { return pi ? pi->pi.n() : 0; }

int rpcfrag_partition_block_count(const rpcfrag_partition* pi)
{
    return pi ? pi->pi.block_count() : 0;
}

rpcfrag_status rpcfrag_partition_labels(const rpcfrag_partition* pi, int* out, int capacity)
{
    return guarded([&] {
        require_out(pi);
        require_out(out);
        require(capacity >= pi->pi.n(), ErrorCode::argument, "label buffer too small");
        const auto labels = pi->pi.labels();
        std::copy(labels.begin(), labels.end(), out);
    });
}

rpcfrag_status rpcfrag_partition_to_json(const rpcfrag_partition* pi, rpcfrag_sink sink, void* user)
{
    return guarded([&] {
        require_out(pi);
        require(sink != nullptr, ErrorCode::argument, "null sink");
        emit(sink, user, to_json(pi->pi));
    });
}

rpcfrag_status rpcfrag_sample_crp(double alpha, double theta, int n, rpcfrag_stream* stream,
                                  rpcfrag_partition** out)
{
    return guarded([&] {
        require_out(stream);
        require_out(out);
        const SetPartition pi = sample_crp(PdParams::make(alpha, theta), n, stream->rng);
        *out = new rpcfrag_partition{pi};
    });
}

rpcfrag_status rpcfrag_eppf_ruelle(double t, const int* parts, int k, double* out)
{
    return guarded([&] {
        require_out(out);
        *out = eppf_ruelle(t, composition(parts, k));
    });
}

rpcfrag_status rpcfrag_eppf_pd(double alpha, double theta, const int* parts, int k, double* out)
{
    return guarded([&] {
        require_out(out);
        *out = eppf_pd(PdParams::make(alpha, theta), composition(parts, k));
    });
}

rpcfrag_status rpcfrag_eppf_dislocation(double t, const int* parts, int k, double* out)
{
    return guarded([&] {
        require_out(out);
        *out = eppf_dislocation(t, composition(parts, k));
    });
}

rpcfrag_status rpcfrag_jump_rate(double t, const rpcfrag_partition* pi, double* out)
{
    return guarded([&] {
        require_out(pi);
        require_out(out);
        *out = jump_rate(t, pi->pi);
    });
}

rpcfrag_status rpcfrag_split_rate(double t, int m, double* out)
{
    return guarded([&] {
        require_out(out);
        *out = split_rate(t, m);
    });
}

rpcfrag_status rpcfrag_survival(double t0, double t, int m, double* out)
{
    return guarded([&] {
        require_out(out);
        *out = survival(t0, t, m);
    });
}

rpcfrag_status rpcfrag_coalescent_rate(int b, int k, double* out)
{
    return guarded([&] {
        require_out(out);
        *out = coalescent_rate(b, k);
    });
}

rpcfrag_status rpcfrag_tagged_moment(double t, double q, double* out)
{
    return guarded([&] {
        require_out(out);
        *out = tagged_moment(t, q);
    });
}

rpcfrag_status rpcfrag_psi(double t, double q, double* out)
{
    return guarded([&] {
        require_out(out);
        *out = psi(t, q);
    });
}

void rpcfrag_params_init(rpcfrag_params* params)
{
    if (!params) return;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    *params = rpcfrag_params{};
    params->t = nan;
    params->eps = nan;
    params->alpha = nan;
    params->beta = nan;
    params->theta = nan;
    params->p = nan;
    params->cap = nan;
    params->horizon = nan;
}

rpcfrag_status rpcfrag_sample(const char* kind, const rpcfrag_params* params, rpcfrag_sink sink,
                              void* user)
{
    return guarded([&] {
        require_out(kind);
        require_out(params);
        require(sink != nullptr, ErrorCode::argument, "null sink");
        const rpcfrag_params& p = *params;
        const std::string k = kind;
        const std::uint64_t reps = replicas_of(p, 1);
        auto tag = [](std::uint64_t r, Json j) {
            j["replica"] = r;
            return std::vector<Json>{std::move(j)};
        };
        if (k == "crp") {
            const PdParams pd = pd_params(p);
            require(!pd.dislocation, ErrorCode::domain, "the CRP needs a proper (alpha, theta) pair");
            const int n = need_n(p);
            stream_replicas(p, reps, sink, user, [&](std::uint64_t r, RandomStream& rng) {
                return tag(r, Json{{"partition", to_json(sample_crp(pd, n, rng))}});
            });
        } else if (k == "pd" || k == "gem") {
            const PdParams pd = pd_params(p);
            require(!pd.dislocation, ErrorCode::domain, "stick-breaking needs a proper (alpha, theta) pair");
            const double tol = get(p.eps, default_truncation_tol);
            require(tol > 0.0 && tol < 1.0, ErrorCode::domain, "eps must lie in (0,1)");
            const bool ranked = k == "pd";
            stream_replicas(p, reps, sink, user, [&](std::uint64_t r, RandomStream& rng) {
                return tag(r, ranked ? to_json(sample_pd_ranked(pd, tol, rng))
                                     : to_json(sample_gem(pd, tol, rng)));
            });
        } else if (k == "cascade") {
            const std::vector<double> xs = times_of(p);
            const double eps = get(p.eps, 0.01);
            RandomStream probe(p.seed, 0);
            build_cascade(xs, eps, probe);  // validates before any output
            stream_replicas(p, reps, sink, user, [&](std::uint64_t r, RandomStream& rng) {
                const CascadeTree tree = build_cascade(xs, eps, rng);
                Json j = to_json(tree);
                if (p.n >= 1) {
                    Json parts = Json::array();
                    for (const auto& pi : cascade_partitions(tree, p.n, rng)) parts.push_back(to_json(pi));
                    j["partitions"] = std::move(parts);
                }
                return tag(r, std::move(j));
            });
        } else if (k == "nu") {
            const double t = need(p.t, "t");
            const double cap = get(p.cap, 1.0 - 1e-6);
            const double tol = get(p.eps, default_truncation_tol);
            const NuSizeBiasedSampler sampler(t, cap);
            require(tol > 0.0 && tol < 1.0, ErrorCode::domain, "eps must lie in (0,1)");
            stream_replicas(p, reps, sink, user, [&](std::uint64_t r, RandomStream& rng) {
                Json j = to_json(sampler.draw(rng, tol));
                j["restricted_mass"] = sampler.total_mass();
                return tag(r, std::move(j));
            });
        } else {
            fail(ErrorCode::argument, "unknown sampler '" + k + "' (crp, pd, gem, cascade, nu)");
        }
    });
}

rpcfrag_status rpcfrag_simulate(const char* engine, const rpcfrag_params* params, rpcfrag_sink sink,
                                void* user)
{
    return guarded([&] {
        require_out(engine);
        require_out(params);
        require(sink != nullptr, ErrorCode::argument, "null sink");
        const rpcfrag_params& p = *params;
        const std::string e = engine;
        const std::uint64_t reps = replicas_of(p, 1);
        const int n = need_n(p);
        auto records = [](std::uint64_t r, const Trajectory& traj) {
            std::vector<Json> out;
            Json h = trajectory_header(traj);
            h["replica"] = r;
            out.push_back(std::move(h));
            for (const auto& ev : traj.events) {
                Json j = to_json(ev);
                j["replica"] = r;
                out.push_back(std::move(j));
            }
            return out;
        };
        if (e == "semigroup") {
            const std::vector<double> ts = times_of(p);
            RandomStream probe(p.seed, 0);
            sample_marginal_semigroup(ts, 1, probe);
            stream_replicas(p, reps, sink, user, [&](std::uint64_t r, RandomStream& rng) {
                const auto parts = sample_marginal_semigroup(ts, n, rng);
                Trajectory traj;
                traj.n = n;
                traj.horizon = ts.back();
                for (std::size_t j = 0; j < ts.size(); ++j) traj.events.push_back({ts[j], parts[j]});
                return records(r, traj);
            });
        } else if (e == "jumpchain") {
            EngineConfig cfg;
            const double t_end = need(p.t, "t");
            require(t_end > 0.0 && t_end < 1.0, ErrorCode::domain, "t must lie in (0,1)");
            validate_config(cfg);
            require(n <= cfg.enumeration_cap, ErrorCode::configuration,
                    "n exceeds the enumeration cap of the jump chain");
            stream_replicas(p, reps, sink, user, [&](std::uint64_t r, RandomStream& rng) {
                return records(r, simulate_jump_chain(n, t_end, cfg, rng));
            });
        } else if (e == "coalescent") {
            const double horizon = get(p.horizon, get(p.t, 1.0));
            require(horizon > 0.0 && std::isfinite(horizon), ErrorCode::domain,
                    "horizon must be positive");
            stream_replicas(p, reps, sink, user, [&](std::uint64_t r, RandomStream& rng) {
                return records(r, simulate_coalescent(n, horizon, rng));
            });
        } else {
            fail(ErrorCode::argument, "unknown engine '" + e + "' (semigroup, jumpchain, coalescent)");
        }
    });
}

rpcfrag_status rpcfrag_verify(const char* selector, const rpcfrag_params* params, double scale,
                              rpcfrag_sink sink, void* user, int* all_pass)
{
    return guarded([&] {
        require_out(selector);
        require_out(params);
        require_out(all_pass);
        require(sink != nullptr, ErrorCode::argument, "null sink");
        const auto names = resolve_suites(selector);
        SuiteOptions opt;
        opt.seed = params->seed;
        opt.threads = resolve_threads(params->threads);
        opt.scale = scale > 0.0 ? scale : 1.0;
        bool all = true;
        for (const auto& name : names) {
            const bool ok = run_suite(name, opt, [&](const TestReport& r) {
                Json j = report_record(r);
                j["suite"] = name;
                emit(sink, user, j);
            });
            emit(sink, user, {{"record", "suite"}, {"suite", name}, {"pass", ok}});
            all = all && ok;
        }
        *all_pass = all ? 1 : 0;
    });
}

rpcfrag_status rpcfrag_experiment(const char* name, const rpcfrag_params* params, rpcfrag_sink sink,
                                  void* user, int* all_pass)
{
    return guarded([&] {
        require_out(name);
        require_out(params);
        require_out(all_pass);
        require(sink != nullptr, ErrorCode::argument, "null sink");
        const rpcfrag_params& p = *params;
        const std::string e = name;
        const RunOptions opt = run_options(p);
        std::vector<TestReport> reports;
        std::vector<Json> extra;
        if (e == "empirical-measure") {
            const TestFunction f = parse_test_function(p.function ? p.function : "exp");
            reports.push_back(empirical_measure_test(get(p.t, 0.95), f, replicas_of(p, 100000), opt));
        } else if (e == "martingale") {
            const std::vector<double> ts =
                p.time_count > 0 || set(p.t) ? times_of(p) : std::vector<double>{0.3, 0.5, 0.7};
            const std::vector<double> decay{0.5, 0.7, 0.9, 0.95, 0.99};
            const MartingaleResult res =
                martingale_test(ts, need(p.p, "p"), p.n >= 1 ? p.n : 100, replicas_of(p, 100000), opt, decay);
            reports = res.reports;
            Json d = Json::array();
            for (const auto& [t, m] : res.decay) d.push_back({{"t", t}, {"median", m}});
            extra.push_back({{"record", "decay"}, {"medians", d}, {"monotone", res.decay_monotone}});
        } else if (e == "record-hazard") {
            const HazardEstimate h = record_hazard_integral(
                need(p.t, "t"), need(p.eps, "eps"), p.quad_points > 0 ? p.quad_points : 16,
                replicas_of(p, 2000), opt);
            extra.push_back({{"record", "hazard"},
                             {"t", h.t},
                             {"eps", h.eps},
                             {"value", h.value},
                             {"error", h.error},
                             {"mc_sigma", h.mc_sigma},
                             {"quadrature_error", h.quadrature_error},
                             {"unresolved_bound", h.unresolved_bound},
                             {"prob_record_below", h.prob_record_below},
                             {"lower_bound", h.lower_bound},
                             {"upper_bound", h.upper_bound},
                             {"within_bounds", h.value - h.error <= h.upper_bound &&
                                                   h.value + h.error >= h.lower_bound}});
        } else if (e == "abs-continuity") {
            std::vector<SetPartition> event;
            if (p.partition)
                event.push_back(parse_partition(p.partition));
            else
                event.push_back(SetPartition::singletons(2));
            reports.push_back(abs_continuity_check(need(p.alpha, "alpha"), event,
                                                   p.n >= 1 ? p.n : 10000, replicas_of(p, 20000), opt));
        } else if (e == "duality") {
            reports.push_back(duality_check(get(p.alpha, 0.7), get(p.beta, 0.5), get(p.theta, 0.2),
                                            replicas_of(p, 100000), opt));
        } else {
            fail(ErrorCode::argument, "unknown experiment '" + e +
                                          "' (empirical-measure, martingale, record-hazard, "
                                          "abs-continuity, duality)");
        }
        bool all = true;
        for (const auto& r : reports) {
            emit(sink, user, report_record(r));
            all = all && r.pass;
        }
        for (const auto& j : extra) {
            emit(sink, user, j);
            if (j.contains("within_bounds")) all = all && j["within_bounds"].get<bool>();
        }
        *all_pass = all ? 1 : 0;
    });
}

rpcfrag_status rpcfrag_suite_list(rpcfrag_sink sink, void* user)
{
    return guarded([&] {
        require(sink != nullptr, ErrorCode::argument, "null sink");
        for (const auto& s : suite_catalog())
            emit(sink, user, {{"suite", s.name}, {"criterion", s.criterion}, {"summary", s.summary}});
    });
}

}  // extern "C"
