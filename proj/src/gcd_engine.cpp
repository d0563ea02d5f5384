#include "smoothgcd/gcd_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <utility>

#include <omp.h>

#include "smoothgcd/errors.hpp"

namespace sgcd {

std::uint64_t default_bound(std::size_t input_bits)
{
    return std::max<std::uint64_t>(2, static_cast<std::uint64_t>(input_bits) * input_bits);
}

std::uint64_t default_trials(std::uint64_t bound, std::size_t input_bits)
{
    std::uint64_t log_factor = input_bits <= 1 ? 1 : std::bit_width(input_bits - 1);
    return 2 * bound * log_factor;
}

std::uint64_t default_rounds_cap(std::size_t input_bits, std::uint64_t bound)
{
    const double lb = std::log2(static_cast<double>(bound));
    const double llb = lb > 1.0 ? std::log2(lb) : 0.0;
    return static_cast<std::uint64_t>(std::ceil(4.0 * static_cast<double>(input_bits) * llb / (lb * lb))) + 16;
}

ResolvedConfig resolve(const GcdConfig& cfg, std::size_t input_bits)
{
    ResolvedConfig r;
    r.input_bits = input_bits;
    r.bound = cfg.bound.value_or(default_bound(input_bits));
    r.trials = cfg.trials.value_or(default_trials(r.bound, input_bits));
    r.rounds_cap = cfg.rounds_cap.value_or(default_rounds_cap(input_bits, r.bound));
    r.seed = cfg.seed;
    r.c_w = cfg.c_w;
    if (r.bound < 2)
        throw ParameterError("bound B must be >= 2");
    if (r.trials < 1)
        throw ParameterError("trials per round must be >= 1");
    if (r.rounds_cap < 1)
        throw ParameterError("rounds cap must be >= 1");
    return r;
}

RoundTrial round_trial(const Natural& u, const Natural& v, const Natural& a, const PrimeTable& table)
{
    if (v < Natural(2))
        throw ParameterError("round_trial: v must be >= 2");
    if (a.is_zero() || a >= v)
        throw ParameterError("round_trial: multiplier out of [1, v-1]");
    RoundTrial t;
    t.a = a;
    t.r = (a * u) % v;
    t.s = rough_part(t.r, table);
    return t;
}

Natural uniform_multiplier(const Natural& v, PhiloxStream& stream)
{
    if (v < Natural(2))
        throw ParameterError("uniform_multiplier: v must be >= 2");
    const Natural span = v - Natural(2); // draw x in [0, v-2], return x + 1
    const std::size_t bits = span.bit_length();
    if (bits == 0)
        return Natural(1);
    const std::size_t words = (bits + 63) / 64;
    const unsigned top_bits = static_cast<unsigned>(bits - 64 * (words - 1));
    const std::uint64_t top_mask = top_bits == 64 ? ~0ULL : ((1ULL << top_bits) - 1);
    std::vector<std::uint64_t> buf(words);
    for (;;) {
        for (auto& w : buf)
            w = stream.next();
        buf.back() &= top_mask;
        Natural x = Natural::from_words(buf);
        if (x <= span)
            return x + Natural(1);
    }
}

const char* to_string(GcdStatus s)
{
    return s == GcdStatus::Ok ? "ok" : "failure";
}

const char* to_string(FailureReason r)
{
    return r == FailureReason::RoundsExceeded ? "rounds_exceeded" : "verification_failed";
}

GcdEngine::GcdEngine(const ResolvedConfig& cfg, unsigned workers, MultiplierHook hook)
    : cfg_(cfg), workers_(std::max(1u, workers)), hook_(std::move(hook)),
      table_(std::make_shared<const PrimeTable>(
          build_prime_powers(sieve_primes(cfg.bound), std::max<std::size_t>(1, cfg.input_bits))))
{
}

GcdEngine GcdEngine::with_seed(std::uint64_t seed) const
{
    GcdEngine copy = *this;
    copy.cfg_.seed = seed;
    return copy;
}

namespace {

struct Best {
    bool set = false;
    std::uint64_t j = 0;
    Natural a;
    Natural s;

    bool beats(const Best& other) const
    {
        if (!set)
            return false;
        if (!other.set)
            return true;
        if (s != other.s)
            return s < other.s;
        return j < other.j;
    }
};

} // namespace

RoundRecord GcdEngine::run_round(const Natural& u, const Natural& v, std::size_t round) const
{
    if (v < Natural(2) || u < v)
        throw ParameterError("run_round: requires u >= v >= 2");

    std::optional<Natural> forced;
    if (hook_)
        forced = hook_(round, u, v);
    if (forced && (forced->is_zero() || *forced >= v))
        throw ParameterError("run_round: injected multiplier out of [1, v-1]");

    const Natural u_red = u % v;
    const std::uint64_t trials = cfg_.trials;
    const int threads = static_cast<int>(std::min<std::uint64_t>(workers_, trials));
    std::vector<Best> best(static_cast<std::size_t>(threads));

#pragma omp parallel num_threads(threads)
    {
        const auto t = static_cast<std::uint64_t>(omp_get_thread_num());
        const auto nt = static_cast<std::uint64_t>(omp_get_num_threads());
        const std::uint64_t begin = trials * t / nt;
        const std::uint64_t end = trials * (t + 1) / nt;
        Best& mine = best[t];
        for (std::uint64_t j = begin; j < end; ++j) {
            Natural a;
            if (forced) {
                a = *forced;
            } else {
                PhiloxStream stream(cfg_.seed, stream_tag::multiplier, round, j);
                a = uniform_multiplier(v, stream);
            }
            Natural s = rough_part((a * u_red) % v, *table_);
            if (!mine.set || s < mine.s) {
                mine = Best{true, j, std::move(a), std::move(s)};
                if (mine.s.is_zero())
                    break; // nothing later in this chunk can win
            }
        }
    }

    Best winner;
    for (auto& b : best)
        if (b.beats(winner))
            winner = std::move(b);

    RoundRecord rec;
    rec.index = round;
    rec.u = u;
    rec.v = v;
    rec.chosen_j = winner.j;
    rec.a = std::move(winner.a);
    rec.s = std::move(winner.s);
    rec.bits_removed = static_cast<std::int64_t>(v.bit_length()) - static_cast<std::int64_t>(rec.s.bit_length());
    return rec;
}

GcdResult GcdEngine::run(const Natural& u, const Natural& v) const
{
    if (u.is_zero() && v.is_zero())
        throw ParameterError("gcd(0, 0) is undefined");

    GcdResult result;
    if (u.is_zero() || v.is_zero()) {
        result.gcd = u.is_zero() ? v : u;
        result.candidate = result.gcd;
        return result;
    }

    // Step 2: strip and remember the shared small prime powers.
    CommonSmallPart csp = common_small_part(u, v, *table_);
    result.g_small = std::move(csp.g_small);
    const Natural& u0 = csp.u0;
    const Natural& v0 = csp.v0;

    // gcd(u0, v0) has no prime <= B left, so dropping the unshared small
    // primes too leaves it intact. Without this an r = 0 trial in round 0 can
    // smuggle a small spurious factor of v0 into the candidate.
    Natural ui = rough_part(u0, *table_);
    Natural vi = rough_part(v0, *table_);
    if (ui < vi)
        std::swap(ui, vi);

    // Step 3: (u_i, v_i) -> (v_i, s_i) while u_i * v_i != 0.
    while (!ui.is_zero() && !vi.is_zero()) {
        if (vi.is_one()) {
            // Empty multiplier range; a*u mod 1 = 0 for every a.
            ui = Natural(1);
            vi = Natural(0);
            break;
        }
        if (result.rounds.size() >= cfg_.rounds_cap) {
            result.status = GcdStatus::Failure;
            result.failure_reason = FailureReason::RoundsExceeded;
            return result;
        }
        RoundRecord rec = run_round(ui, vi, result.rounds.size());
        ui = std::move(vi);
        vi = rec.s;
        result.rounds.push_back(std::move(rec));
    }

    // Step 4: the candidate can only carry extra factors, so dividing both
    // inputs proves it is the gcd.
    result.candidate = ui + vi;
    if (!u0.divisible_by(result.candidate) || !v0.divisible_by(result.candidate)) {
        result.status = GcdStatus::Failure;
        result.failure_reason = FailureReason::VerificationFailed;
        return result;
    }
    result.gcd = result.candidate * factor_vector_product(result.g_small);
    return result;
}

GcdResult smooth_gcd(const Natural& u, const Natural& v, const GcdConfig& cfg)
{
    if (u.is_zero() && v.is_zero())
        throw ParameterError("gcd(0, 0) is undefined");
    GcdEngine engine(resolve(cfg, input_bits(u, v)), cfg.workers, cfg.multiplier_hook);
    return engine.run(u, v);
}

Natural euclid_gcd(Natural u, Natural v)
{
    if (u.is_zero() && v.is_zero())
        throw ParameterError("gcd(0, 0) is undefined");
    while (!v.is_zero()) {
        Natural r = u % v;
        u = std::move(v);
        v = std::move(r);
    }
    return u;
}

} // namespace sgcd
