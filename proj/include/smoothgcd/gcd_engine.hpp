#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "smoothgcd/natural.hpp"
#include "smoothgcd/philox.hpp"
#include "smoothgcd/primes.hpp"

namespace sgcd {

/// Replaces the random multiplier for every trial of a round when it returns
/// a value. Used for fault injection; the returned a must lie in [1, v-1].
using MultiplierHook =
    std::function<std::optional<Natural>(std::size_t round, const Natural& u, const Natural& v)>;

/// User-facing knobs. Unset fields take the defaults derived from the total
/// input length n (bits of u plus bits of v):
///   B   = n^2
///   T   = 2 * B * ceil(log2 n)
///   cap = ceil(4 * n * log2(log2 B) / (log2 B)^2) + 16
struct GcdConfig {
    std::optional<std::uint64_t> bound;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> rounds_cap;
    std::uint64_t seed = 0;
    double c_w = 0.5;
    /// Threads used for the trials of one round. Never changes the result.
    unsigned workers = 1;
    MultiplierHook multiplier_hook;
};

/// Concrete parameters of one run.
struct ResolvedConfig {
    std::size_t input_bits = 0;
    std::uint64_t bound = 0;
    std::uint64_t trials = 0;
    std::uint64_t rounds_cap = 0;
    std::uint64_t seed = 0;
    double c_w = 0.5;

    friend bool operator==(const ResolvedConfig&, const ResolvedConfig&) = default;
};

std::uint64_t default_bound(std::size_t input_bits);
std::uint64_t default_trials(std::uint64_t bound, std::size_t input_bits);
std::uint64_t default_rounds_cap(std::size_t input_bits, std::uint64_t bound);

/// Fills unset fields of cfg from the defaults above. ParameterError when the
/// result violates B >= 2, T >= 1 or cap >= 1.
ResolvedConfig resolve(const GcdConfig& cfg, std::size_t input_bits);

/// Total length n of the pair in binary.
inline std::size_t input_bits(const Natural& u, const Natural& v) { return u.bit_length() + v.bit_length(); }

struct RoundTrial {
    std::uint64_t j = 0;
    Natural a;
    Natural r;
    Natural s;
};

/// One trial: r = a*u mod v, s = r with all primes <= B removed.
/// Requires v >= 2 and 1 <= a <= v-1.
RoundTrial round_trial(const Natural& u, const Natural& v, const Natural& a, const PrimeTable& table);

/// Uniform draw from [1, v-1] by rejection on bit_length(v-2)-bit words.
/// Requires v >= 2.
Natural uniform_multiplier(const Natural& v, PhiloxStream& stream);

struct RoundRecord {
    std::size_t index = 0;
    Natural u;
    Natural v;
    std::uint64_t chosen_j = 0;
    Natural a;
    Natural s;
    /// bit_length(v) - bit_length(s)
    std::int64_t bits_removed = 0;

    friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

enum class GcdStatus { Ok, Failure };
enum class FailureReason { RoundsExceeded, VerificationFailed };

struct GcdResult {
    GcdStatus status = GcdStatus::Ok;
    /// Meaningful only when status is Ok.
    Natural gcd;
    /// u_i + v_i at loop exit (before re-inserting g_small); zero when the
    /// round cap stopped the loop.
    Natural candidate;
    std::vector<RoundRecord> rounds;
    FactorVector g_small;
    std::optional<FailureReason> failure_reason;

    bool ok() const { return status == GcdStatus::Ok; }
    friend bool operator==(const GcdResult&, const GcdResult&) = default;
};

const char* to_string(GcdStatus s);
const char* to_string(FailureReason r);

/// Randomized smooth-reduction GCD with a fixed parameter set.
///
/// The prime table is built once at construction, so one engine can serve
/// many inputs of similar size. Trials draw from Philox streams keyed by
/// (seed, round, trial), which makes every result independent of `workers`.
class GcdEngine {
public:
    GcdEngine(const ResolvedConfig& cfg, unsigned workers = 1, MultiplierHook hook = {});

    const ResolvedConfig& config() const { return cfg_; }
    const PrimeTable& table() const { return *table_; }

    /// Same parameters and prime table, different seed.
    GcdEngine with_seed(std::uint64_t seed) const;

    /// Full Las Vegas run. ParameterError when u = v = 0.
    GcdResult run(const Natural& u, const Natural& v) const;

    /// One main-loop round on (u, v), u >= v >= 2: T trials, minimum s wins,
    /// ties go to the smallest trial index.
    RoundRecord run_round(const Natural& u, const Natural& v, std::size_t round) const;

private:
    ResolvedConfig cfg_;
    unsigned workers_;
    MultiplierHook hook_;
    std::shared_ptr<const PrimeTable> table_;
};

/// Convenience wrapper: resolve cfg against the inputs and run once.
GcdResult smooth_gcd(const Natural& u, const Natural& v, const GcdConfig& cfg);

/// Classical Euclidean algorithm; the reference oracle.
Natural euclid_gcd(Natural u, Natural v);

} // namespace sgcd
