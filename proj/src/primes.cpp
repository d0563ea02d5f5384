#include "smoothgcd/primes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "smoothgcd/errors.hpp"

namespace sgcd {

namespace {

std::uint64_t isqrt(std::uint64_t n)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r)
        --r;
    while ((r + 1) <= n / (r + 1))
        ++r;
    return r;
}

std::vector<PrimeTable::Group> make_groups(std::span<const std::uint64_t> primes)
{
    std::vector<PrimeTable::Group> groups;
    std::size_t i = 0;
    while (i < primes.size()) {
        PrimeTable::Group g{primes[i], i, i + 1};
        while (g.end < primes.size() && primes[g.end] <= std::numeric_limits<std::uint64_t>::max() / g.product)
            g.product *= primes[g.end++];
        groups.push_back(g);
        i = g.end;
    }
    return groups;
}

// Divides the largest power of p out of x and returns its exponent. The caller
// has already seen p | x. The exponent is located by binary search over the
// stored powers (p^e | x is monotone in e); repeated division covers values
// wider than the table's bit budget.
unsigned remove_prime(mpz_class& x, std::uint64_t p, std::span<const Natural> powers)
{
    std::size_t lo = 0;
    if (!powers.empty()) {
        lo = 1;
        std::size_t hi = powers.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi + 1) / 2;
            if (mpz_divisible_p(x.get_mpz_t(), powers[mid - 1].mpz().get_mpz_t()))
                lo = mid;
            else
                hi = mid - 1;
        }
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), powers[lo - 1].mpz().get_mpz_t());
    }
    auto e = static_cast<unsigned>(lo);
    if (lo == powers.size()) {
        while (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
            mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
            ++e;
        }
    }
    return e;
}

mpz_class strip_small(const Natural& m, const PrimeTable& table, FactorVector* record)
{
    if (!table.has_powers())
        throw ParameterError("smooth_part: prime powers not built");
    mpz_class x = m.mpz();
    if (sgn(x) == 0)
        return x;
    auto primes = table.primes();
    for (const auto& g : table.groups()) {
        if (x == 1)
            break;
        std::uint64_t rem = mpz_fdiv_ui(x.get_mpz_t(), g.product);
        for (std::size_t i = g.begin; i < g.end; ++i) {
            std::uint64_t p = primes[i];
            if (rem % p != 0)
                continue;
            unsigned e = remove_prime(x, p, table.powers(i));
            if (record)
                record->entries.push_back({p, e});
        }
    }
    return x;
}

} // namespace

PrimeTable::PrimeTable(std::uint64_t bound, std::vector<std::uint64_t> primes)
    : bound_(bound), primes_(std::move(primes)), groups_(make_groups(primes_))
{
}

PrimeTable sieve_primes(std::uint64_t bound)
{
    if (bound < 2)
        throw ParameterError("sieve_primes: bound must be >= 2");

    const std::uint64_t root = isqrt(bound);
    std::vector<std::uint64_t> base;
    {
        std::vector<bool> composite(root + 1, false);
        for (std::uint64_t i = 2; i <= root; ++i) {
            if (composite[i])
                continue;
            base.push_back(i);
            for (std::uint64_t j = i * i; j <= root; j += i)
                composite[j] = true;
        }
    }

    constexpr std::uint64_t kSegment = 1 << 16;
    std::vector<std::uint64_t> primes;
    std::vector<char> seg(kSegment);
    for (std::uint64_t lo = 2; lo <= bound; lo += kSegment) {
        const std::uint64_t hi = std::min(bound, lo + kSegment - 1);
        std::fill(seg.begin(), seg.end(), 1);
        for (std::uint64_t p : base) {
            if (p * p > hi)
                break;
            std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
            for (std::uint64_t m = start; m <= hi; m += p)
                seg[m - lo] = 0;
        }
        for (std::uint64_t n = lo; n <= hi; ++n)
            if (seg[n - lo])
                primes.push_back(n);
        if (hi == bound)
            break;
    }
    return PrimeTable(bound, std::move(primes));
}

PrimeTable build_prime_powers(const PrimeTable& table, std::size_t bit_budget)
{
    if (bit_budget < 1)
        throw ParameterError("build_prime_powers: bit budget must be >= 1");
    PrimeTable out = table;
    out.bit_budget_ = bit_budget;
    out.powers_.clear();
    out.powers_.reserve(table.primes_.size());

    mpz_class limit;
    mpz_ui_pow_ui(limit.get_mpz_t(), 2, bit_budget);
    for (std::uint64_t p : table.primes_) {
        std::vector<Natural> list;
        Natural pw(p);
        while (cmp(pw.mpz(), limit) <= 0) {
            list.push_back(pw);
            pw *= Natural(p);
        }
        out.powers_.push_back(std::move(list));
    }
    return out;
}

SmoothSplit smooth_part(const Natural& m, const PrimeTable& table)
{
    SmoothSplit out;
    out.rough = Natural(strip_small(m, table, &out.smooth));
    return out;
}

Natural rough_part(const Natural& m, const PrimeTable& table)
{
    return Natural(strip_small(m, table, nullptr));
}

SmoothSplit64 smooth_part(std::uint64_t m, const PrimeTable& table)
{
    if (m == 0)
        return {1, 0};
    std::uint64_t rough = m;
    for (std::uint64_t p : table.primes()) {
        if (rough == 1)
            break;
        while (rough % p == 0)
            rough /= p;
    }
    return {m / rough, rough};
}

CommonSmallPart common_small_part(const Natural& u, const Natural& v, const PrimeTable& table)
{
    if (u.is_zero() || v.is_zero())
        throw ParameterError("common_small_part: inputs must be nonzero");
    auto su = smooth_part(u, table).smooth.entries;
    auto sv = smooth_part(v, table).smooth.entries;

    CommonSmallPart out;
    auto a = su.begin();
    auto b = sv.begin();
    while (a != su.end() && b != sv.end()) {
        if (a->prime < b->prime) {
            ++a;
        } else if (b->prime < a->prime) {
            ++b;
        } else {
            out.g_small.entries.push_back({a->prime, std::min(a->exponent, b->exponent)});
            ++a;
            ++b;
        }
    }
    Natural g = factor_vector_product(out.g_small);
    out.u0 = u.divexact(g);
    out.v0 = v.divexact(g);
    return out;
}

Natural factor_vector_product(const FactorVector& fv)
{
    // Balanced product tree keeps operand sizes even.
    std::vector<Natural> level;
    level.reserve(fv.entries.size());
    for (const auto& pp : fv.entries)
        level.push_back(pow(Natural(pp.prime), pp.exponent));
    if (level.empty())
        return Natural(1);
    while (level.size() > 1) {
        std::vector<Natural> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2)
            next.push_back(level[i] * level[i + 1]);
        if (level.size() % 2)
            next.push_back(level.back());
        level = std::move(next);
    }
    return level.front();
}

} // namespace sgcd
