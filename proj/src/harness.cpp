#include "smoothgcd/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "smoothgcd/cost_model.hpp"
#include "smoothgcd/errors.hpp"
#include "smoothgcd/smooth_analysis.hpp"

namespace sgcd {

using json = nlohmann::ordered_json;

Natural random_natural_bits(std::size_t bits, PhiloxStream& stream)
{
    if (bits < 1)
        throw ParameterError("random_natural_bits: need at least one bit");
    const std::size_t words = (bits + 63) / 64;
    std::vector<std::uint64_t> buf(words);
    for (auto& w : buf)
        w = stream.next();
    const unsigned top = static_cast<unsigned>(bits - 64 * (words - 1));
    if (top < 64)
        buf.back() &= (1ULL << top) - 1;
    buf.back() |= 1ULL << (top - 1);
    return Natural::from_words(buf);
}

std::pair<Natural, Natural> random_pair(std::size_t bits, std::uint64_t seed)
{
    PhiloxStream stream(seed, stream_tag::bench_input, bits, 0);
    Natural u = random_natural_bits(bits, stream);
    Natural v = random_natural_bits(bits, stream);
    return {std::move(u), std::move(v)};
}

RunReport run_gcd(const Natural& u, const Natural& v, const GcdConfig& cfg, bool with_timings)
{
    using clock = std::chrono::steady_clock;
    if (u.is_zero() && v.is_zero())
        throw ParameterError("gcd(0, 0) is undefined");

    RunReport report;
    report.u = u;
    report.v = v;
    report.config = resolve(cfg, input_bits(u, v));

    const auto t0 = clock::now();
    GcdEngine engine(report.config, cfg.workers, cfg.multiplier_hook);
    const auto t1 = clock::now();
    report.result = engine.run(u, v);
    const auto t2 = clock::now();

    if (report.config.input_bits >= 4 && report.config.bound >= 4)
        report.ledger = attach_observation(predict(report.config.input_bits, report.config.bound), report.result);
    if (with_timings) {
        auto ms = [](auto d) { return std::chrono::duration<double, std::milli>(d).count(); };
        report.timings = PhaseTimings{ms(t1 - t0), ms(t2 - t1)};
    }
    return report;
}

// ---------------------------------------------------------------------------
// bench

BoundPolicy BoundPolicy::parse(std::string_view text)
{
    if (text == "paper")
        return {};
    constexpr std::string_view prefix = "fixed:";
    if (text.starts_with(prefix)) {
        const auto n = Natural::parse(text.substr(prefix.size()));
        if (!n.fits_u64() || n < Natural(2))
            throw ParameterError("B policy: fixed bound must be an integer >= 2");
        return BoundPolicy{n.to_u64()};
    }
    throw ParameterError("B policy must be 'paper' or 'fixed:k'");
}

std::uint64_t BoundPolicy::bound_for(std::size_t input_bits) const
{
    return fixed.value_or(default_bound(input_bits));
}

std::string BoundPolicy::to_string() const
{
    return fixed ? fmt::format("fixed:{}", *fixed) : std::string("paper");
}

namespace {

double median(std::vector<double> xs)
{
    if (xs.empty())
        return 0.0;
    std::sort(xs.begin(), xs.end());
    const std::size_t m = xs.size() / 2;
    return xs.size() % 2 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

} // namespace

BenchTable run_bench(const BenchConfig& cfg)
{
    if (cfg.grid.empty())
        throw ParameterError("bench: empty grid");
    if (cfg.runs < 1)
        throw ParameterError("bench: runs must be >= 1");

    BenchTable table;
    for (std::size_t n : cfg.grid) {
        if (n < 2)
            throw ParameterError("bench: grid sizes must be >= 2 bits");
        const std::size_t bits = 2 * n;
        GcdConfig gc;
        gc.bound = cfg.policy.bound_for(bits);
        gc.trials = cfg.trials;
        gc.rounds_cap = cfg.rounds_cap;
        gc.c_w = cfg.c_w;
        const ResolvedConfig base = resolve(gc, bits);
        const double w = W_of(base.bound, cfg.c_w);

        BenchAggregate agg;
        agg.n = n;
        agg.input_bits = bits;
        agg.bound = base.bound;
        agg.trials = base.trials;
        agg.W = w;
        agg.runs = cfg.runs;
        if (bits >= 4 && base.bound >= 4)
            agg.predicted_rounds = predict(bits, base.bound).predicted_rounds;

        // One engine per grid point; only the seed changes between runs, and
        // it does not touch the prime table.
        const GcdEngine proto(base, cfg.workers);
        std::vector<double> round_counts;
        for (std::size_t run = 0; run < cfg.runs; ++run) {
            PhiloxStream stream(cfg.seed, stream_tag::bench_input, n, run);
            Natural u = random_natural_bits(n, stream);
            Natural v = random_natural_bits(n, stream);
            // Operands are exactly n bits each, so `base` matches every run.
            const GcdEngine engine = proto.with_seed(stream.next());
            const ResolvedConfig& rc = engine.config();
            GcdResult res = engine.run(u, v);

            BenchRow row;
            row.n = n;
            row.run = run;
            row.seed = rc.seed;
            row.bound = rc.bound;
            row.trials = rc.trials;
            row.rounds = res.rounds.size();
            double sum = 0.0;
            for (const auto& rec : res.rounds) {
                sum += static_cast<double>(rec.bits_removed);
                if (static_cast<double>(rec.bits_removed) >= w)
                    ++row.rounds_meeting_w;
            }
            row.mean_bits_removed = res.rounds.empty() ? 0.0 : sum / static_cast<double>(res.rounds.size());
            row.failed = !res.ok();
            if (row.failed)
                row.failure_reason = to_string(*res.failure_reason);
            else
                row.correct = res.gcd == euclid_gcd(u, v);

            agg.failures += row.failed;
            agg.wrong += !row.correct;
            agg.total_rounds += row.rounds;
            agg.rounds_meeting_w += row.rounds_meeting_w;
            round_counts.push_back(static_cast<double>(row.rounds));
            table.rows.push_back(std::move(row));
        }
        agg.median_rounds = median(round_counts);
        agg.ratio = agg.predicted_rounds > 0.0 ? agg.median_rounds / agg.predicted_rounds : 0.0;
        agg.frac_rounds_meeting_w =
            agg.total_rounds ? static_cast<double>(agg.rounds_meeting_w) / static_cast<double>(agg.total_rounds) : 0.0;

        std::size_t hits = 0;
        for (std::size_t k = 0; k < cfg.trial_samples; ++k) {
            PhiloxStream stream(cfg.seed, stream_tag::sampling, n, k);
            Natural v = random_natural_bits(n, stream);
            if (v < Natural(2))
                continue;
            Natural r = uniform_multiplier(v, stream);
            Natural s = rough_part(r, proto.table());
            const auto removed = static_cast<double>(r.bit_length() - s.bit_length());
            hits += removed >= w;
        }
        agg.trial_samples = cfg.trial_samples;
        if (cfg.trial_samples > 0) {
            const double p = static_cast<double>(hits) / static_cast<double>(cfg.trial_samples);
            agg.trial_w_success = p;
            agg.trial_w_sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.trial_samples));
        }
        table.aggregates.push_back(agg);
    }
    return table;
}

json to_json(const BenchTable& t)
{
    json rows = json::array();
    for (const auto& r : t.rows) {
        rows.push_back({{"n", r.n},
                        {"run", r.run},
                        {"seed", r.seed},
                        {"bound", r.bound},
                        {"trials", r.trials},
                        {"rounds", r.rounds},
                        {"mean_bits_removed", r.mean_bits_removed},
                        {"rounds_meeting_w", r.rounds_meeting_w},
                        {"failed", r.failed},
                        {"failure_reason", r.failure_reason},
                        {"correct", r.correct}});
    }
    json aggs = json::array();
    for (const auto& a : t.aggregates) {
        aggs.push_back({{"n", a.n},
                        {"input_bits", a.input_bits},
                        {"bound", a.bound},
                        {"trials", a.trials},
                        {"W", a.W},
                        {"runs", a.runs},
                        {"failures", a.failures},
                        {"wrong", a.wrong},
                        {"median_rounds", a.median_rounds},
                        {"predicted_rounds", a.predicted_rounds},
                        {"ratio", a.ratio},
                        {"total_rounds", a.total_rounds},
                        {"rounds_meeting_w", a.rounds_meeting_w},
                        {"frac_rounds_meeting_w", a.frac_rounds_meeting_w},
                        {"trial_w_success", a.trial_w_success},
                        {"trial_w_sigma", a.trial_w_sigma},
                        {"trial_samples", a.trial_samples}});
    }
    return {{"schema_version", kSchemaVersion}, {"rows", std::move(rows)}, {"aggregates", std::move(aggs)}};
}

std::string to_csv(const BenchTable& t)
{
    // Same number formatting as the JSON encoding.
    auto num = [](const auto& v) { return json(v).dump(); };
    std::ostringstream os;
    os << "n,run,seed,bound,trials,rounds,mean_bits_removed,rounds_meeting_w,failed,failure_reason,correct\n";
    for (const auto& r : t.rows)
        os << r.n << ',' << r.run << ',' << r.seed << ',' << r.bound << ',' << r.trials << ',' << r.rounds << ','
           << num(r.mean_bits_removed) << ',' << r.rounds_meeting_w << ',' << num(r.failed) << ','
           << r.failure_reason << ',' << num(r.correct) << '\n';
    os << '\n';
    os << "n,input_bits,bound,trials,W,runs,failures,wrong,median_rounds,predicted_rounds,ratio,total_rounds,"
          "rounds_meeting_w,frac_rounds_meeting_w,trial_w_success,trial_w_sigma,trial_samples\n";
    for (const auto& a : t.aggregates)
        os << a.n << ',' << a.input_bits << ',' << a.bound << ',' << a.trials << ',' << num(a.W) << ',' << a.runs
           << ',' << a.failures << ',' << a.wrong << ',' << num(a.median_rounds) << ',' << num(a.predicted_rounds)
           << ',' << num(a.ratio) << ',' << a.total_rounds << ',' << a.rounds_meeting_w << ','
           << num(a.frac_rounds_meeting_w) << ',' << num(a.trial_w_success) << ',' << num(a.trial_w_sigma) << ','
           << a.trial_samples << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// validate

Fault parse_fault(std::string_view text)
{
    if (text.empty() || text == "none")
        return Fault::None;
    if (text == "adversarial-a")
        return Fault::AdversarialMultiplier;
    if (text == "drop-prime")
        return Fault::DropPrime;
    throw ParameterError("unknown fault '" + std::string(text) + "' (none, adversarial-a, drop-prime)");
}

MultiplierHook adversarial_multiplier_hook(std::uint64_t bound)
{
    return [bound](std::size_t, const Natural& u, const Natural& v) -> std::optional<Natural> {
        Natural a = v / euclid_gcd(u, v);
        if (a >= v || a <= Natural(bound))
            return std::nullopt;
        return a;
    };
}

namespace {

bool is_prime_td(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

Natural next_prime_above(const Natural& n)
{
    mpz_class out;
    mpz_nextprime(out.get_mpz_t(), n.mpz().get_mpz_t());
    return Natural(out);
}

SuiteResult sieve_suite()
{
    constexpr std::uint64_t kLimit = 20000;
    const auto table = sieve_primes(kLimit);
    std::vector<std::uint64_t> expect;
    for (std::uint64_t n = 2; n <= kLimit; ++n)
        if (is_prime_td(n))
            expect.push_back(n);
    const bool ok = std::equal(expect.begin(), expect.end(), table.primes().begin(), table.primes().end());
    return {"sieve_oracle", ok, fmt::format("{} primes <= {}", table.primes().size(), kLimit)};
}

SuiteResult smooth_part_suite(const ValidateOptions& opts)
{
    constexpr std::uint64_t kBound = 97;
    PrimeTable base = sieve_primes(kBound);
    if (opts.fault == Fault::DropPrime) {
        std::vector<std::uint64_t> ps(base.primes().begin(), base.primes().end());
        ps.erase(std::find(ps.begin(), ps.end(), 13));
        base = PrimeTable(kBound, std::move(ps));
    }
    const PrimeTable table = build_prime_powers(base, 64);

    PhiloxStream stream(opts.seed, stream_tag::validation, 1, 0);
    std::size_t bad = 0;
    std::string first;
    constexpr int kSamples = 2000;
    for (int i = 0; i < kSamples; ++i) {
        // A random small-prime product times a random cofactor.
        std::uint64_t m = 1;
        for (int k = 0; k < 6; ++k) {
            std::uint64_t p = 2 + stream.next() % (kBound - 1);
            if (is_prime_td(p) && m <= (1ULL << 40) / p)
                m *= p;
        }
        m *= 1 + stream.next() % (1ULL << 20);
        const Natural mn(m);
        const auto split = smooth_part(mn, table);
        bool ok = factor_vector_product(split.smooth) * split.rough == mn;
        const std::uint64_t rough = split.rough.to_u64();
        for (std::uint64_t d = 2; d <= kBound && ok; ++d)
            if (is_prime_td(d) && rough % d == 0)
                ok = false;
        if (!ok && bad++ == 0)
            first = fmt::format("m = {} left rough part {}", m, rough);
    }
    return {"smooth_part_invariants", bad == 0,
            bad == 0 ? fmt::format("{} samples", kSamples) : fmt::format("{} violations; first: {}", bad, first)};
}

SuiteResult oracle_suite(const ValidateOptions& opts)
{
    constexpr std::uint64_t kBound = 64;
    PhiloxStream stream(opts.seed, stream_tag::validation, 2, 0);
    std::size_t ok = 0, failures = 0, verification_failures = 0, wrong = 0;
    constexpr int kPairs = 300;
    for (int i = 0; i < kPairs; ++i) {
        const std::size_t bits = 8 + stream.next() % 121;
        Natural g = random_natural_bits(1 + stream.next() % 40, stream);
        Natural u = random_natural_bits(bits, stream) * g;
        Natural v = random_natural_bits(8 + stream.next() % 121, stream) * g;
        GcdConfig cfg;
        cfg.bound = kBound;
        cfg.trials = 64;
        cfg.seed = stream.next();
        cfg.workers = opts.workers;
        if (opts.fault == Fault::AdversarialMultiplier)
            cfg.multiplier_hook = adversarial_multiplier_hook(kBound);
        const GcdResult res = smooth_gcd(u, v, cfg);
        if (res.ok()) {
            ++ok;
            wrong += res.gcd != euclid_gcd(u, v);
        } else {
            ++failures;
            verification_failures += res.failure_reason == FailureReason::VerificationFailed;
        }
    }
    bool passed = wrong == 0;
    if (opts.fault == Fault::AdversarialMultiplier)
        passed = passed && verification_failures > 0;
    return {"oracle_equivalence", passed,
            fmt::format("{} ok, {} failures ({} verification), {} wrong", ok, failures, verification_failures, wrong)};
}

SuiteResult adversarial_suite(const ValidateOptions& opts)
{
    constexpr std::uint64_t kBound = 64;
    PhiloxStream stream(opts.seed, stream_tag::validation, 3, 0);
    std::size_t caught = 0;
    constexpr int kCases = 20;
    for (int i = 0; i < kCases; ++i) {
        Natural g = next_prime_above(random_natural_bits(16 + stream.next() % 48, stream));
        Natural p = next_prime_above(random_natural_bits(8 + stream.next() % 40, stream));
        Natural q = next_prime_above(p + random_natural_bits(8, stream));
        GcdConfig cfg;
        cfg.bound = kBound;
        cfg.trials = 16;
        cfg.seed = stream.next();
        cfg.multiplier_hook = adversarial_multiplier_hook(kBound);
        const GcdResult res = smooth_gcd(g * p, g * q, cfg);
        caught += !res.ok() && res.failure_reason == FailureReason::VerificationFailed;
    }
    return {"adversarial_injection", caught == kCases, fmt::format("{}/{} cases rejected", caught, kCases)};
}

SuiteResult census_suite()
{
    constexpr std::uint64_t kMax = 3000;
    std::vector<std::uint64_t> lpf(kMax + 1, 1);
    for (std::uint64_t n = 2; n <= kMax; ++n) {
        std::uint64_t m = n, big = 1;
        for (std::uint64_t d = 2; d * d <= m; ++d)
            while (m % d == 0) {
                big = d;
                m /= d;
            }
        lpf[n] = std::max(big, m);
    }
    std::size_t checks = 0, bad = 0;
    for (std::uint64_t x : {1ULL, 100ULL, 999ULL, 3000ULL})
        for (std::uint64_t y : {1ULL, 2ULL, 5ULL, 31ULL, 100ULL, 3000ULL}) {
            std::uint64_t expect = 0;
            for (std::uint64_t n = 1; n <= x; ++n)
                expect += lpf[n] <= y;
            ++checks;
            bad += psi(x, y) != expect;
        }
    for (std::uint64_t b : {3ULL, 16ULL, 100ULL}) {
        const auto census = count_F(kMax, b, 0.5);
        const double threshold = std::exp2(census.W);
        std::vector<bool> hit(kMax + 1, false);
        for (std::uint64_t m = 1; m <= kMax; ++m) {
            if (lpf[m] > b || static_cast<double>(m) < threshold)
                continue;
            for (std::uint64_t y = 1; m * y <= kMax; ++y)
                hit[m * y] = true;
        }
        ++checks;
        bad += census.f_count != static_cast<std::uint64_t>(std::count(hit.begin(), hit.end(), true));
    }
    return {"census_oracle", bad == 0, fmt::format("{} checks, {} mismatches", checks, bad)};
}

SuiteResult determinism_suite(const ValidateOptions& opts)
{
    auto [u, v] = random_pair(256, opts.seed);
    GcdConfig cfg;
    cfg.bound = 64;
    cfg.trials = 128;
    cfg.seed = opts.seed;
    cfg.workers = 1;
    const std::string one = to_json(run_gcd(u, v, cfg)).dump();
    cfg.workers = 4;
    const std::string many = to_json(run_gcd(u, v, cfg)).dump();
    return {"determinism", one == many, fmt::format("{} bytes compared", one.size())};
}

} // namespace

std::vector<SuiteResult> run_validation(const ValidateOptions& opts)
{
    return {sieve_suite(),         smooth_part_suite(opts), oracle_suite(opts),
            adversarial_suite(opts), census_suite(),       determinism_suite(opts)};
}

} // namespace sgcd
