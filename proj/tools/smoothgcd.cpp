// smoothgcd: command-line front end for the randomized smooth-reduction GCD,
// the smooth-number censuses and the benchmark harness.

#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "smoothgcd/cost_model.hpp"
#include "smoothgcd/errors.hpp"
#include "smoothgcd/gcd_engine.hpp"
#include "smoothgcd/harness.hpp"
#include "smoothgcd/report.hpp"
#include "smoothgcd/smooth_analysis.hpp"

using namespace sgcd;
using json = nlohmann::ordered_json;

namespace {

unsigned default_workers()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t fresh_seed()
{
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct GcdArgs {
    std::string u, v;
    std::size_t bits = 0;
    bool random = false;
    std::optional<std::uint64_t> bound, trials, cap, seed;
    double c_w = 0.5;
    unsigned workers = default_workers();
    std::string format = "text";
    bool timings = false;
};

int cmd_gcd(const GcdArgs& a)
{
    Natural u, v;
    if (a.random) {
        if (a.bits < 1)
            throw ParameterError("--random needs --bits n");
        if (!a.u.empty() || !a.v.empty())
            throw ParameterError("--random takes no positional inputs");
    } else {
        if (a.u.empty() || a.v.empty())
            throw ParameterError("gcd needs two inputs, or --bits n --random");
        u = Natural::parse(a.u);
        v = Natural::parse(a.v);
    }

    GcdConfig cfg;
    cfg.bound = a.bound;
    cfg.trials = a.trials;
    cfg.rounds_cap = a.cap;
    cfg.c_w = a.c_w;
    cfg.workers = a.workers;
    if (a.seed) {
        cfg.seed = *a.seed;
    } else {
        cfg.seed = fresh_seed();
        std::cerr << "seed: " << cfg.seed << "\n";
    }
    if (a.random)
        std::tie(u, v) = random_pair(a.bits, cfg.seed);

    const RunReport report = run_gcd(u, v, cfg, a.timings);
    if (a.format == "json")
        std::cout << to_json(report).dump(2) << "\n";
    else if (a.format == "csv")
        std::cout << to_csv(report);
    else
        std::cout << to_text(report);
    return report.result.ok() ? kExitOk : kExitFailure;
}

int cmd_psi(std::uint64_t x, std::uint64_t y, unsigned workers, const std::string& format)
{
    const auto census = psi_census(x, y, workers);
    const double est = y >= 2 ? psi_estimate(x, y) : 0.0;
    const double u = y >= 2 ? std::log2(static_cast<double>(x)) / std::log2(static_cast<double>(y)) : 0.0;
    if (format == "json") {
        std::cout << json{{"x", x}, {"y", y}, {"psi", census.psi}, {"u", u}, {"psi_estimate", est}}.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << "x,y,psi,u,psi_estimate\n"
                  << x << ',' << y << ',' << census.psi << ',' << json(u).dump() << ',' << json(est).dump() << "\n";
    } else {
        std::cout << census.psi << "\n"
                  << fmt::format("u = log x / log y: {:.6f}\nestimate x*u^-u: {:.6g}\n", u, est);
    }
    return kExitOk;
}

int cmd_fcount(std::uint64_t x, std::uint64_t bound, double c, double eps, bool natural_log, unsigned workers,
               const std::string& format)
{
    const auto census = count_F(x, bound, c, natural_log ? LogBase::Natural : LogBase::Binary, workers);
    const double thm = theorem2_bound(x, bound, c, eps);
    const double per_b = static_cast<double>(x) / static_cast<double>(bound);
    if (format == "json") {
        std::cout << json{{"x", x},
                          {"bound", bound},
                          {"c", c},
                          {"log_base", natural_log ? "e" : "2"},
                          {"W", census.W},
                          {"f_count", census.f_count},
                          {"epsilon", eps},
                          {"theorem2_bound", thm},
                          {"x_over_B", per_b}}
                         .dump(2)
                  << "\n";
    } else if (format == "csv") {
        std::cout << "x,bound,c,log_base,W,f_count,epsilon,theorem2_bound,x_over_B\n"
                  << x << ',' << bound << ',' << json(c).dump() << ',' << (natural_log ? "e" : "2") << ','
                  << json(census.W).dump() << ',' << census.f_count << ',' << json(eps).dump() << ','
                  << json(thm).dump() << ',' << json(per_b).dump() << "\n";
    } else {
        std::cout << census.f_count << "\n"
                  << fmt::format("W: {:.6f}\nbound x/B^(c(1+eps)) [eps={}]: {:.6g}\nbound x/B: {:.6g}\n", census.W,
                                 eps, thm, per_b);
    }
    return kExitOk;
}

struct BenchArgs {
    std::vector<std::size_t> grid{256};
    std::string policy = "paper";
    std::size_t runs = 1;
    std::optional<std::uint64_t> seed, trials, cap;
    double c_w = 0.5;
    std::size_t samples = 2000;
    unsigned workers = default_workers();
    std::string format = "csv";
};

int cmd_bench(const BenchArgs& a)
{
    BenchConfig cfg;
    cfg.grid = a.grid;
    cfg.policy = BoundPolicy::parse(a.policy);
    cfg.runs = a.runs;
    cfg.trials = a.trials;
    cfg.rounds_cap = a.cap;
    cfg.c_w = a.c_w;
    cfg.workers = a.workers;
    cfg.trial_samples = a.samples;
    if (a.seed) {
        cfg.seed = *a.seed;
    } else {
        cfg.seed = fresh_seed();
        std::cerr << "seed: " << cfg.seed << "\n";
    }
    const BenchTable table = run_bench(cfg);
    if (a.format == "json")
        std::cout << to_json(table).dump(2) << "\n";
    else
        std::cout << to_csv(table);
    return kExitOk;
}

int cmd_validate(const std::string& fault, std::uint64_t seed, unsigned workers)
{
    ValidateOptions opts;
    opts.fault = parse_fault(fault);
    opts.seed = seed;
    opts.workers = workers;
    bool all = true;
    for (const auto& s : run_validation(opts)) {
        std::cout << fmt::format("[{}] {:<24} {}\n", s.passed ? "PASS" : "FAIL", s.name, s.detail);
        all = all && s.passed;
    }
    std::cout << (all ? "all suites passed\n" : "validation FAILED\n");
    return all ? kExitOk : kExitValidation;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Randomized smooth-reduction GCD (Las Vegas) with smooth-number analytics"};
    app.require_subcommand(1);

    GcdArgs ga;
    auto* gcd = app.add_subcommand("gcd", "gcd of two naturals (decimal or 0x hex)");
    gcd->add_option("u", ga.u, "first input");
    gcd->add_option("v", ga.v, "second input");
    gcd->add_option("--bits", ga.bits, "operand size for --random");
    gcd->add_flag("--random", ga.random, "draw two random --bits operands from the seed");
    gcd->add_option("--B", ga.bound, "small prime bound (default n^2)");
    gcd->add_option("--trials", ga.trials, "trials per round (default 2 B ceil(log2 n))");
    gcd->add_option("--cap", ga.cap, "round cap");
    gcd->add_option("--seed", ga.seed, "64-bit seed (fresh if absent; printed on stderr)");
    gcd->add_option("--c-w", ga.c_w, "constant in W");
    gcd->add_option("--workers", ga.workers, "threads per trial batch");
    gcd->add_option("--format", ga.format)->check(CLI::IsMember({"json", "csv", "text"}));
    gcd->add_flag("--timings", ga.timings, "add wall-clock phase timings to the report");

    std::uint64_t px = 0, py = 0;
    std::string pformat = "text";
    unsigned pworkers = default_workers();
    auto* psi_cmd = app.add_subcommand("psi", "count y-smooth integers <= x");
    psi_cmd->add_option("x", px)->required();
    psi_cmd->add_option("y", py)->required();
    psi_cmd->add_option("--format", pformat)->check(CLI::IsMember({"json", "csv", "text"}));
    psi_cmd->add_option("--workers", pworkers);

    std::uint64_t fx = 0, fb = 0;
    double fc = 0.5, feps = 0.5;
    bool fnat = false;
    std::string fformat = "text";
    unsigned fworkers = default_workers();
    auto* fcount = app.add_subcommand("fcount", "count n <= x whose B-smooth part is >= 2^W");
    fcount->add_option("x", fx)->required();
    fcount->add_option("B", fb)->required();
    fcount->add_option("c", fc)->required();
    fcount->add_option("--eps", feps, "epsilon in the x / B^(c(1+eps)) column");
    fcount->add_flag("--natural-log", fnat, "use ln and e^W instead of log2 and 2^W");
    fcount->add_option("--format", fformat)->check(CLI::IsMember({"json", "csv", "text"}));
    fcount->add_option("--workers", fworkers);

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "round-count and bit-decay experiments");
    bench->add_option("--grid", ba.grid, "operand sizes in bits")->delimiter(',');
    bench->add_option("--B-policy", ba.policy, "paper | fixed:k");
    bench->add_option("--runs", ba.runs);
    bench->add_option("--seed", ba.seed);
    bench->add_option("--trials", ba.trials);
    bench->add_option("--cap", ba.cap);
    bench->add_option("--c-w", ba.c_w);
    bench->add_option("--samples", ba.samples, "draws for the per-trial W-success estimate");
    bench->add_option("--workers", ba.workers);
    bench->add_option("--format", ba.format)->check(CLI::IsMember({"json", "csv"}));

    std::string vfault = "none";
    std::uint64_t vseed = 1;
    unsigned vworkers = 4;
    auto* validate = app.add_subcommand("validate", "run the invariant suites");
    validate->add_option("--fault", vfault, "none | adversarial-a | drop-prime");
    validate->add_option("--seed", vseed);
    validate->add_option("--workers", vworkers);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*gcd)
            return cmd_gcd(ga);
        if (*psi_cmd)
            return cmd_psi(px, py, pworkers, pformat);
        if (*fcount)
            return cmd_fcount(fx, fb, fc, feps, fnat, fworkers, fformat);
        if (*bench)
            return cmd_bench(ba);
        if (*validate)
            return cmd_validate(vfault, vseed, vworkers);
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
