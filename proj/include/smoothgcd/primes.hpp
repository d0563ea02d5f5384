#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "smoothgcd/natural.hpp"

namespace sgcd {

struct PrimePower {
    std::uint64_t prime = 0;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Small-prime factorisation p1^e1 * p2^e2 * ... with strictly ascending primes.
struct FactorVector {
    std::vector<PrimePower> entries;

    bool empty() const { return entries.empty(); }
    friend bool operator==(const FactorVector&, const FactorVector&) = default;
};

/// Primes up to a bound B, optionally with the prime powers p^1..p^E where
/// E = floor(n / log2 p) for a bit budget n (equivalently the largest E with
/// p^E <= 2^n).
///
/// Immutable once built; share freely between threads.
class PrimeTable {
public:
    /// Takes the prime list as given. Completeness is not checked here so that
    /// fault-injection code can build deliberately broken tables; use
    /// sieve_primes() for a real one.
    PrimeTable(std::uint64_t bound, std::vector<std::uint64_t> primes);

    std::uint64_t bound() const { return bound_; }
    std::span<const std::uint64_t> primes() const { return primes_; }

    bool has_powers() const { return bit_budget_ > 0; }
    std::size_t bit_budget() const { return bit_budget_; }

    /// p^1..p^E for the prime at position `index`.
    std::span<const Natural> powers(std::size_t index) const { return powers_.at(index); }

    struct Group {
        std::uint64_t product;
        std::size_t begin;
        std::size_t end;
    };
    /// Consecutive primes batched so that each batch product fits in 64 bits.
    std::span<const Group> groups() const { return groups_; }

private:
    friend PrimeTable build_prime_powers(const PrimeTable& table, std::size_t bit_budget);

    std::uint64_t bound_;
    std::vector<std::uint64_t> primes_;
    std::vector<Group> groups_;
    std::size_t bit_budget_ = 0;
    std::vector<std::vector<Natural>> powers_;
};

/// Segmented Eratosthenes sieve; B >= 2 else ParameterError.
PrimeTable sieve_primes(std::uint64_t bound);

/// Copy of `table` with the prime-power lists filled for bit budget n >= 1.
PrimeTable build_prime_powers(const PrimeTable& table, std::size_t bit_budget);

struct SmoothSplit {
    FactorVector smooth;
    Natural rough;
};

/// Splits m into its B-smooth part and the cofactor free of primes <= B.
/// smooth_part(0) = ({}, 0); smooth_part(1) = ({}, 1). Requires powers.
SmoothSplit smooth_part(const Natural& m, const PrimeTable& table);

/// The rough cofactor alone; same result as smooth_part(m, table).rough.
Natural rough_part(const Natural& m, const PrimeTable& table);

struct SmoothSplit64 {
    std::uint64_t smooth;
    std::uint64_t rough;
};

/// Word-sized variant used by the censuses. Only the prime list is needed.
SmoothSplit64 smooth_part(std::uint64_t m, const PrimeTable& table);

struct CommonSmallPart {
    FactorVector g_small;
    Natural u0;
    Natural v0;
};

/// Removes the shared prime powers p <= B (minimum exponent) from u and v.
/// Both inputs must be nonzero.
CommonSmallPart common_small_part(const Natural& u, const Natural& v, const PrimeTable& table);

Natural factor_vector_product(const FactorVector& fv);

} // namespace sgcd
