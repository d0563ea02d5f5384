#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "smoothgcd/errors.hpp"
#include "smoothgcd/philox.hpp"
#include "smoothgcd/primes.hpp"

using namespace sgcd;

namespace {

std::vector<std::uint64_t> as_vector(std::span<const std::uint64_t> s) { return {s.begin(), s.end()}; }

FactorVector fv(std::initializer_list<PrimePower> entries) { return FactorVector{entries}; }

PrimeTable table_for(std::uint64_t bound, std::size_t bits = 64)
{
    return build_prime_powers(sieve_primes(bound), bits);
}

} // namespace

TEST_CASE("sieve_primes small cases")
{
    CHECK(as_vector(sieve_primes(10).primes()) == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(as_vector(sieve_primes(2).primes()) == std::vector<std::uint64_t>{2});
    auto t100 = sieve_primes(100);
    CHECK(t100.primes().size() == 25);
    CHECK(t100.primes().back() == 97);
    CHECK(t100.bound() == 100);
    CHECK_THROWS_AS(sieve_primes(1), ParameterError);
    CHECK_THROWS_AS(sieve_primes(0), ParameterError);
}

TEST_CASE("sieve_primes matches trial division up to 10^6")
{
    constexpr std::uint64_t kLimit = 1'000'000;
    std::vector<std::uint64_t> expect;
    for (std::uint64_t n = 2; n <= kLimit; ++n)
        if (oracle::is_prime(n))
            expect.push_back(n);
    CHECK(expect.size() == 78498);
    CHECK(as_vector(sieve_primes(kLimit).primes()) == expect);

    // Other bounds, including ones straddling segment edges, give prefixes.
    for (std::uint64_t b : {3ULL, 4ULL, 65535ULL, 65536ULL, 65537ULL, 131071ULL, 200003ULL, 999983ULL}) {
        auto got = as_vector(sieve_primes(b).primes());
        auto end = std::upper_bound(expect.begin(), expect.end(), b);
        CHECK(got == std::vector<std::uint64_t>(expect.begin(), end));
    }
}

TEST_CASE("build_prime_powers lists p^1..p^floor(n/log2 p)")
{
    SUBCASE("p = 2, n = 8")
    {
        auto t = build_prime_powers(sieve_primes(2), 8);
        auto pw = t.powers(0);
        REQUIRE(pw.size() == 8);
        for (std::size_t e = 1; e <= 8; ++e)
            CHECK(pw[e - 1] == Natural(1ULL << e));
    }
    SUBCASE("p = 3, n = 8")
    {
        auto t = build_prime_powers(sieve_primes(3), 8);
        auto pw = t.powers(1);
        REQUIRE(pw.size() == 5);
        CHECK(pw.back() == Natural(243));
    }
    SUBCASE("p = 7, n = 2 has no powers")
    {
        auto t = build_prime_powers(sieve_primes(7), 2);
        CHECK(t.powers(3).empty());
    }
    SUBCASE("counts agree with floor(n / log2 p) everywhere")
    {
        for (std::size_t n : {1u, 7u, 64u, 100u}) {
            auto t = build_prime_powers(sieve_primes(200), n);
            auto primes = t.primes();
            for (std::size_t i = 0; i < primes.size(); ++i) {
                auto expect = static_cast<std::size_t>(std::floor(n / std::log2(static_cast<double>(primes[i]))));
                CHECK(t.powers(i).size() == expect);
                for (std::size_t e = 0; e < t.powers(i).size(); ++e)
                    CHECK(t.powers(i)[e] == pow(Natural(primes[i]), e + 1));
            }
        }
    }
    CHECK_THROWS_AS(build_prime_powers(sieve_primes(7), 0), ParameterError);
}

TEST_CASE("smooth_part examples")
{
    auto t5 = table_for(5);
    auto s = smooth_part(Natural(720), t5);
    CHECK(s.smooth == fv({{2, 4}, {3, 2}, {5, 1}}));
    CHECK(s.rough == Natural(1));

    s = smooth_part(Natural(7), t5);
    CHECK(s.smooth.empty());
    CHECK(s.rough == Natural(7));

    s = smooth_part(Natural(176), table_for(10));
    CHECK(s.smooth == fv({{2, 4}}));
    CHECK(s.rough == Natural(11));

    s = smooth_part(Natural(0), t5);
    CHECK(s.smooth.empty());
    CHECK(s.rough.is_zero());

    s = smooth_part(Natural(1), t5);
    CHECK(s.smooth.empty());
    CHECK(s.rough == Natural(1));

    CHECK_THROWS_AS(smooth_part(Natural(12), sieve_primes(5)), ParameterError);
}

TEST_CASE("smooth_part beyond the bit budget still strips every power")
{
    // 2^100 * 3^70 * 1009 against a table built for 16 bits.
    auto t = table_for(100, 16);
    Natural m = pow(Natural(2), 100) * pow(Natural(3), 70) * Natural(1009);
    auto s = smooth_part(m, t);
    CHECK(s.smooth == fv({{2, 100}, {3, 70}}));
    CHECK(s.rough == Natural(1009));
}

TEST_CASE("smooth_part reconstructs m and leaves a rough cofactor")
{
    const std::uint64_t bounds[] = {2, 5, 97, 1000};
    PhiloxStream rng(3, 0, 0, 0);
    for (std::uint64_t bound : bounds) {
        auto t = table_for(bound);
        for (int i = 0; i < 400; ++i) {
            // Mix of raw 64-bit values and values loaded with small factors.
            std::uint64_t m = rng.next();
            if (i % 2) {
                m = 1 + (rng.next() >> 40);
                for (int k = 0; k < 8; ++k) {
                    std::uint64_t p = 2 + rng.next() % 30;
                    if (m <= (~0ULL) / p)
                        m *= p;
                }
            }
            const Natural mn(m);
            auto s = smooth_part(mn, t);
            CHECK(factor_vector_product(s.smooth) * s.rough == mn);
            CHECK(rough_part(mn, t) == s.rough);
            const std::uint64_t rough = s.rough.to_u64();
            for (std::uint64_t p : t.primes())
                CHECK(rough % p != 0);
            for (std::size_t k = 1; k < s.smooth.entries.size(); ++k)
                CHECK(s.smooth.entries[k - 1].prime < s.smooth.entries[k].prime);
            if (m < (1ULL << 40))
                CHECK(factor_vector_product(s.smooth) == Natural(oracle::smooth_part(m, bound)));
        }
    }
}

TEST_CASE("word-sized smooth_part agrees with the big-integer one")
{
    auto t = table_for(100);
    for (std::uint64_t m = 1; m <= 20000; ++m) {
        auto w = smooth_part(m, t);
        auto b = smooth_part(Natural(m), t);
        REQUIRE(Natural(w.rough) == b.rough);
        REQUIRE(Natural(w.smooth) == factor_vector_product(b.smooth));
    }
}

TEST_CASE("common_small_part examples")
{
    auto t5 = table_for(5);
    auto c = common_small_part(Natural(168), Natural(630), t5);
    CHECK(c.g_small == fv({{2, 1}, {3, 1}}));
    CHECK(c.u0 == Natural(28));
    CHECK(c.v0 == Natural(105));

    c = common_small_part(Natural(7), Natural(11), t5);
    CHECK(c.g_small.empty());
    CHECK(c.u0 == Natural(7));
    CHECK(c.v0 == Natural(11));

    c = common_small_part(Natural(64), Natural(64), t5);
    CHECK(c.g_small == fv({{2, 6}}));
    CHECK(c.u0 == Natural(1));
    CHECK(c.v0 == Natural(1));

    CHECK_THROWS_AS(common_small_part(Natural(0), Natural(5), t5), ParameterError);
    CHECK_THROWS_AS(common_small_part(Natural(5), Natural(0), t5), ParameterError);
}

TEST_CASE("common_small_part against known factorisations")
{
    // Inputs are built from explicit prime multisets so their full
    // factorisation is known without factoring 64-bit numbers.
    const std::uint64_t pool[] = {2, 3, 5, 7, 11, 13, 31, 61, 67, 101, 251, 257, 65537};
    constexpr std::uint64_t kBound = 64;
    auto t = table_for(kBound);
    PhiloxStream rng(9, 0, 0, 0);
    for (int i = 0; i < 500; ++i) {
        std::map<std::uint64_t, unsigned> fu, fvv;
        Natural u(1), v(1);
        for (int k = 0; k < 10; ++k) {
            std::uint64_t p = pool[rng.next() % std::size(pool)];
            if (u.bit_length() + 17 < 64) {
                u *= Natural(p);
                ++fu[p];
            }
            p = pool[rng.next() % std::size(pool)];
            if (v.bit_length() + 17 < 64) {
                v *= Natural(p);
                ++fvv[p];
            }
        }
        auto c = common_small_part(u, v, t);
        Natural g_small(1), g_rough(1);
        for (auto [p, e] : fu) {
            auto it = fvv.find(p);
            if (it == fvv.end())
                continue;
            unsigned m = std::min(e, it->second);
            (p <= kBound ? g_small : g_rough) *= pow(Natural(p), m);
        }
        CHECK(factor_vector_product(c.g_small) == g_small);
        CHECK(c.u0 * g_small == u);
        CHECK(c.v0 * g_small == v);
        // What is left of the gcd is exactly the part built from primes > B.
        CHECK(Natural(oracle::gcd(c.u0.to_u64(), c.v0.to_u64())) == g_rough);
        CHECK(g_small * g_rough == Natural(oracle::gcd(u.to_u64(), v.to_u64())));
    }
}

TEST_CASE("factor_vector_product examples")
{
    CHECK(factor_vector_product(fv({})) == Natural(1));
    CHECK(factor_vector_product(fv({{2, 4}, {3, 2}, {5, 1}})) == Natural(720));
    CHECK(factor_vector_product(fv({{97, 2}})) == Natural(9409));
    CHECK(factor_vector_product(fv({{2, 1}, {3, 1}, {5, 1}, {7, 1}, {11, 1}})) == Natural(2310));
}
