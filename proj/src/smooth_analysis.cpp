#include "smoothgcd/smooth_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "smoothgcd/errors.hpp"
#include "smoothgcd/primes.hpp"

namespace sgcd {

namespace {

constexpr std::uint64_t kBlock = 1 << 16;

void check_budget(std::uint64_t x, std::uint64_t budget)
{
    if (x > budget)
        throw BudgetError("census of " + std::to_string(x) + " integers exceeds enumeration budget " +
                          std::to_string(budget));
}

} // namespace

std::uint64_t enumeration_budget()
{
    const char* env = std::getenv(kBudgetEnvVar);
    if (env == nullptr || *env == '\0')
        return kDefaultEnumerationBudget;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0)
        return kDefaultEnumerationBudget;
    return v;
}

std::uint64_t psi(std::uint64_t x, std::uint64_t y, unsigned workers, std::uint64_t budget)
{
    if (x < 1 || y < 1)
        throw ParameterError("psi: x and y must be >= 1");
    check_budget(x, budget);
    if (y >= x)
        return x;
    if (y == 1)
        return 1;

    const PrimeTable table = sieve_primes(y);
    const auto primes = table.primes();
    const std::uint64_t blocks = (x + kBlock - 1) / kBlock;
    std::uint64_t count = 0;

    // Each block holds n in [lo, hi]; after dividing out every p <= y the
    // y-smooth entries are exactly the ones left at 1.
#pragma omp parallel for schedule(dynamic) reduction(+ : count) num_threads(std::max(1u, workers))
    for (std::uint64_t b = 0; b < blocks; ++b) {
        const std::uint64_t lo = 1 + b * kBlock;
        const std::uint64_t hi = std::min(x, lo + kBlock - 1);
        std::vector<std::uint64_t> rem(hi - lo + 1);
        for (std::uint64_t n = lo; n <= hi; ++n)
            rem[n - lo] = n;
        for (std::uint64_t p : primes) {
            if (p > hi)
                break;
            for (std::uint64_t m = (lo + p - 1) / p * p; m <= hi; m += p) {
                auto& r = rem[m - lo];
                do
                    r /= p;
                while (r % p == 0);
            }
        }
        for (std::uint64_t r : rem)
            count += (r == 1);
    }
    return count;
}

SmoothCensus psi_census(std::uint64_t x, std::uint64_t y, unsigned workers, std::uint64_t budget)
{
    return {x, y, psi(x, y, workers, budget)};
}

double psi_estimate(std::uint64_t x, std::uint64_t y)
{
    if (x < 1 || y < 2)
        throw ParameterError("psi_estimate: requires x >= 1 and y >= 2");
    const double u = std::log2(static_cast<double>(x)) / std::log2(static_cast<double>(y));
    if (u <= 0.0)
        return static_cast<double>(x);
    return static_cast<double>(x) * std::exp(-u * std::log(u));
}

double harmonic(std::uint64_t k)
{
    if (k < 1)
        throw ParameterError("harmonic: k must be >= 1");
    // Smallest terms first.
    long double sum = 0.0L;
    for (std::uint64_t i = k; i >= 1; --i)
        sum += 1.0L / static_cast<long double>(i);
    return static_cast<double>(sum);
}

double W_of(std::uint64_t bound, double c, LogBase base)
{
    const double b = static_cast<double>(bound);
    const double lb = base == LogBase::Binary ? std::log2(b) : std::log(b);
    const double llb = lb > 0.0 ? (base == LogBase::Binary ? std::log2(lb) : std::log(lb)) : 0.0;
    if (!(llb > 0.0))
        throw ParameterError("W_of: log log B must be positive (B = " + std::to_string(bound) + ")");
    return c * lb * lb / llb;
}

FCensus count_F(std::uint64_t x, std::uint64_t bound, double c, LogBase base, unsigned workers,
                std::uint64_t budget)
{
    if (x < 1)
        throw ParameterError("count_F: x must be >= 1");
    check_budget(x, budget);

    FCensus out;
    out.x = x;
    out.bound = bound;
    out.c = c;
    out.base = base;
    out.W = W_of(bound, c, base);
    const double threshold = base == LogBase::Binary ? std::exp2(out.W) : std::exp(out.W);

    const PrimeTable table = sieve_primes(bound);
    const std::uint64_t blocks = (x + kBlock - 1) / kBlock;
    std::uint64_t count = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : count) num_threads(std::max(1u, workers))
    for (std::uint64_t b = 0; b < blocks; ++b) {
        const std::uint64_t lo = 1 + b * kBlock;
        const std::uint64_t hi = std::min(x, lo + kBlock - 1);
        for (std::uint64_t n = lo; n <= hi; ++n)
            count += static_cast<double>(smooth_part(n, table).smooth) >= threshold;
    }
    out.f_count = count;
    return out;
}

double theorem2_bound(std::uint64_t x, std::uint64_t bound, double c, double eps)
{
    return static_cast<double>(x) / std::pow(static_cast<double>(bound), c * (1.0 + eps));
}

} // namespace sgcd
