#include "rpcfrag.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using Json = nlohmann::json;

namespace {

enum Exit { exit_ok = 0, exit_test_failure = 1, exit_usage = 2, exit_numeric = 3 };

struct Failure {
    int code;
    std::string kind;
    std::string message;
};

int exit_for(rpcfrag_status s)
{
    switch (s) {
    case RPCFRAG_OK: return exit_ok;
    case RPCFRAG_ERR_DOMAIN:
    case RPCFRAG_ERR_ARGUMENT:
    case RPCFRAG_ERR_MALFORMED_PARTITION:
    case RPCFRAG_ERR_CONFIGURATION: return exit_usage;
    default: return exit_numeric;
    }
}

void check(rpcfrag_status s)
{
    if (s != RPCFRAG_OK) throw Failure{exit_for(s), rpcfrag_status_name(s), rpcfrag_last_error()};
}

// Writes records as JSON lines, or as CSV with a header line whenever the
// set of columns changes. Nested values become JSON text in one cell.
class Writer {
public:
    explicit Writer(bool csv) : csv_(csv) {}

    void write(const Json& j)
    {
        if (!csv_) {
            std::cout << j.dump() << '\n';
            return;
        }
        std::vector<std::string> keys;
        for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
        if (keys != columns_) {
            columns_ = keys;
            std::string line;
            for (std::size_t i = 0; i < keys.size(); ++i) line += (i ? "," : "") + keys[i];
            std::cout << line << '\n';
        }
        std::string line;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            const Json& v = j[keys[i]];
            if (i) line += ',';
            line += v.is_string() ? quote(v.get<std::string>()) : v.is_structured() ? quote(v.dump()) : v.dump();
        }
        std::cout << line << '\n';
    }

private:
    static std::string quote(const std::string& s)
    {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += '"';
            out += c;
        }
        return out + "\"";
    }

    bool csv_;
    std::vector<std::string> columns_;
};

void sink(const char* record, void* user)
{
    static_cast<Writer*>(user)->write(Json::parse(record));
}

template <class T>
std::vector<T> parse_list(const std::string& text, const char* flag)
{
    std::vector<T> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::stringstream cell(item);
        T v{};
        cell >> v;
        if (cell.fail() || !(cell >> std::ws).eof())
            throw Failure{exit_usage, "argument", std::string("bad list for --") + flag + ": " + text};
        out.push_back(v);
    }
    if (out.empty()) throw Failure{exit_usage, "argument", std::string("empty list for --") + flag};
    return out;
}

struct Args {
    std::string what;
    std::uint64_t seed = 0;
    int threads = 0;
    std::uint64_t replicas = 0;
    std::string output = "json";
    int n = 0;
    std::optional<double> t, eps, alpha, beta, theta, p, cap, horizon;
    std::string times, parts, partition, function;
    int quad = 0;
    double scale = 1.0;
};

double nan_or(const std::optional<double>& v)
{
    return v ? *v : std::numeric_limits<double>::quiet_NaN();
}

double need(const std::optional<double>& v, const char* flag)
{
    if (!v) throw Failure{exit_usage, "argument", std::string("missing --") + flag};
    return *v;
}

class Partition {
public:
    explicit Partition(const std::string& text) { check(rpcfrag_partition_parse(text.c_str(), &pi_)); }
    ~Partition() { rpcfrag_partition_destroy(pi_); }
    Partition(const Partition&) = delete;
    Partition& operator=(const Partition&) = delete;
    const rpcfrag_partition* get() const { return pi_; }

private:
    rpcfrag_partition* pi_ = nullptr;
};

Json run_exact(const Args& a)
{
    double value = 0.0;
    Json out{{"kind", a.what}};
    if (a.what == "eppf") {
        const auto parts = parse_list<int>(a.parts.empty() ? "" : a.parts, "parts");
        const int k = static_cast<int>(parts.size());
        if (a.alpha) {
            check(rpcfrag_eppf_pd(*a.alpha, a.theta.value_or(0.0), parts.data(), k, &value));
            out["alpha"] = *a.alpha;
            out["theta"] = a.theta.value_or(0.0);
        } else {
            check(rpcfrag_eppf_ruelle(need(a.t, "t"), parts.data(), k, &value));
            out["t"] = *a.t;
        }
        out["parts"] = parts;
    } else if (a.what == "dislocation") {
        const auto parts = parse_list<int>(a.parts, "parts");
        check(rpcfrag_eppf_dislocation(need(a.t, "t"), parts.data(), static_cast<int>(parts.size()), &value));
        out["t"] = *a.t;
        out["parts"] = parts;
    } else if (a.what == "rate") {
        const double t = need(a.t, "t");
        if (a.partition.empty()) throw Failure{exit_usage, "argument", "missing --partition"};
        const Partition pi(a.partition);
        check(rpcfrag_jump_rate(t, pi.get(), &value));
        out["t"] = t;
        out["partition"] = Json::parse(a.partition);
    } else if (a.what == "moment") {
        const double t = need(a.t, "t");
        const double q = need(a.p, "p");
        check(rpcfrag_tagged_moment(t, q, &value));
        double psi = 0.0;
        check(rpcfrag_psi(t, q, &psi));
        out["t"] = t;
        out["p"] = q;
        out["psi"] = psi;
    } else if (a.what == "coalescent") {
        int k = static_cast<int>(need(a.p, "p"));
        check(rpcfrag_coalescent_rate(a.n, k, &value));
        out["b"] = a.n;
        out["k"] = k;
    } else {
        throw Failure{exit_usage, "argument",
                      "unknown exact quantity '" + a.what + "' (eppf, dislocation, rate, moment, coalescent)"};
    }
    out["value"] = value;
    return out;
}

rpcfrag_params params_of(const Args& a, std::vector<double>& times)
{
    rpcfrag_params p;
    rpcfrag_params_init(&p);
    p.seed = a.seed;
    p.threads = a.threads;
    p.replicas = a.replicas;
    p.n = a.n;
    p.t = nan_or(a.t);
    p.eps = nan_or(a.eps);
    p.alpha = nan_or(a.alpha);
    p.beta = nan_or(a.beta);
    p.theta = nan_or(a.theta);
    p.p = nan_or(a.p);
    p.cap = nan_or(a.cap);
    p.horizon = nan_or(a.horizon);
    p.quad_points = a.quad;
    if (!a.times.empty()) times = parse_list<double>(a.times, "times");
    p.times = times.empty() ? nullptr : times.data();
    p.time_count = static_cast<int>(times.size());
    p.function = a.function.empty() ? nullptr : a.function.c_str();
    p.partition = a.partition.empty() ? nullptr : a.partition.c_str();
    return p;
}

void add_common(CLI::App* cmd, Args& a)
{
    cmd->add_option("--seed", a.seed, "64-bit seed; replica r uses stream r");
    cmd->add_option("--threads", a.threads, "worker threads (default RPCFRAG_THREADS or all cores)");
    cmd->add_option("--replicas", a.replicas, "number of replicas");
    cmd->add_option("--output", a.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--n", a.n, "ground set size");
    cmd->add_option("--t", a.t, "time in (0,1)");
    cmd->add_option("--times", a.times, "increasing times a,b,c");
    cmd->add_option("--eps", a.eps, "truncation tolerance or threshold");
    cmd->add_option("--alpha", a.alpha, "Poisson-Dirichlet alpha");
    cmd->add_option("--beta", a.beta, "coagulating alpha for duality");
    cmd->add_option("--theta", a.theta, "Poisson-Dirichlet theta");
    cmd->add_option("--p", a.p, "moment order");
    cmd->add_option("--cap", a.cap, "upper cut of the first coordinate");
    cmd->add_option("--horizon", a.horizon, "coalescent time horizon");
    cmd->add_option("--parts", a.parts, "block sizes a,b,c");
    cmd->add_option("--partition", a.partition, "partition as JSON, e.g. [[1],[2,3]]");
    cmd->add_option("--function", a.function, "test function: exp, exp2, min1, one");
    cmd->add_option("--quad", a.quad, "quadrature points");
}

void print_error(const std::string& kind, const std::string& message)
{
    std::cout << Json{{"record", "error"}, {"error", kind}, {"message", message}}.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Ruelle cascade fragmentation toolkit"};
    app.require_subcommand(1);
    Args a;
    CLI::App* exact = app.add_subcommand("exact", "closed-form values");
    CLI::App* sample = app.add_subcommand("sample", "draws as JSON lines");
    CLI::App* simulate = app.add_subcommand("simulate", "trajectories as JSON lines");
    CLI::App* verify = app.add_subcommand("verify", "acceptance suites");
    CLI::App* experiment = app.add_subcommand("experiment", "experiment reports");
    CLI::App* suites = app.add_subcommand("suites", "list the verification suites");
    exact->add_option("quantity", a.what, "eppf | dislocation | rate | moment | coalescent")->required();
    sample->add_option("kind", a.what, "crp | pd | gem | cascade | nu")->required();
    simulate->add_option("engine", a.what, "semigroup | jumpchain | coalescent")->required();
    verify->add_option("suite", a.what, "all | exact | suite name")->required();
    verify->add_option("--scale", a.scale, "replica multiplier");
    experiment->add_option("name", a.what,
                           "empirical-measure | martingale | record-hazard | abs-continuity | duality")
        ->required();
    for (CLI::App* cmd : {exact, sample, simulate, verify, experiment}) add_common(cmd, a);
    CLI::Option* seed_in_verify = verify->get_option("--seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("usage", e.what());
        return exit_usage;
    }

    Writer writer(a.output == "csv");
    try {
        std::vector<double> times;
        if (exact->parsed()) {
            writer.write(run_exact(a));
            return exit_ok;
        }
        if (suites->parsed()) {
            check(rpcfrag_suite_list(sink, &writer));
            return exit_ok;
        }
        const rpcfrag_params p = params_of(a, times);
        int all_pass = 1;
        if (sample->parsed()) {
            check(rpcfrag_sample(a.what.c_str(), &p, sink, &writer));
        } else if (simulate->parsed()) {
            check(rpcfrag_simulate(a.what.c_str(), &p, sink, &writer));
        } else if (verify->parsed()) {
            if (seed_in_verify->count() == 0)
                throw Failure{exit_usage, "argument", "verify needs an explicit --seed"};
            check(rpcfrag_verify(a.what.c_str(), &p, a.scale, sink, &writer, &all_pass));
        } else if (experiment->parsed()) {
            check(rpcfrag_experiment(a.what.c_str(), &p, sink, &writer, &all_pass));
        }
        std::cout.flush();
        return all_pass ? exit_ok : exit_test_failure;
    } catch (const Failure& f) {
        std::cout.flush();
        print_error(f.kind, f.message);
        return f.code;
    } catch (const std::exception& e) {
        std::cout.flush();
        print_error("internal", e.what());
        return exit_numeric;
    }
}
