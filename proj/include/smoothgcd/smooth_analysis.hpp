#pragma once

#include <cstdint>

namespace sgcd {

/// Default cap on integers a census may enumerate.
inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

/// Environment variable that overrides the enumeration budget.
inline constexpr const char* kBudgetEnvVar = "SMOOTHGCD_ENUM_BUDGET";

/// kDefaultEnumerationBudget unless SMOOTHGCD_ENUM_BUDGET holds a positive
/// integer.
std::uint64_t enumeration_budget();

/// Which logarithm W and the F threshold use. Binary reads W as bits and the
/// threshold as 2^W; Natural uses ln and e^W.
enum class LogBase { Binary, Natural };

struct SmoothCensus {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    std::uint64_t psi = 0;
};

struct FCensus {
    std::uint64_t x = 0;
    std::uint64_t bound = 0;
    double c = 0.5;
    double W = 0.0;
    LogBase base = LogBase::Binary;
    std::uint64_t f_count = 0;
};

/// Psi(x, y): how many n <= x have no prime factor above y. Exact, by a
/// segmented sieve. BudgetError when x exceeds `budget`.
std::uint64_t psi(std::uint64_t x, std::uint64_t y, unsigned workers = 1,
                  std::uint64_t budget = enumeration_budget());

SmoothCensus psi_census(std::uint64_t x, std::uint64_t y, unsigned workers = 1,
                        std::uint64_t budget = enumeration_budget());

/// x * u^(-u) with u = log2 x / log2 y; the leading shape of Psi(x, y) with
/// the (1 + o(1)) factor in the exponent dropped.
double psi_estimate(std::uint64_t x, std::uint64_t y);

/// H_k = 1 + 1/2 + ... + 1/k.
double harmonic(std::uint64_t k);

/// W = c * (log B)^2 / log log B. ParameterError unless log log B > 0.
double W_of(std::uint64_t bound, double c, LogBase base = LogBase::Binary);

/// F(x): how many n <= x have a B-smooth part of at least 2^W (or e^W in
/// natural mode). BudgetError when x exceeds `budget`.
FCensus count_F(std::uint64_t x, std::uint64_t bound, double c, LogBase base = LogBase::Binary,
                unsigned workers = 1, std::uint64_t budget = enumeration_budget());

/// Lower bound x / B^(c (1 + eps)).
double theorem2_bound(std::uint64_t x, std::uint64_t bound, double c, double eps);

} // namespace sgcd
