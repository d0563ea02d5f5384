#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace sgcd {

/// Arbitrary-precision nonnegative integer.
///
/// Thin value wrapper over a GMP integer that keeps the value >= 0. Any
/// operation that would leave the naturals (subtraction below zero, division
/// by zero) throws ParameterError instead.
class Natural {
public:
    Natural() = default;
    Natural(std::uint64_t v); // NOLINT(google-explicit-constructor)
    explicit Natural(const mpz_class& v);

    /// Parses decimal, or hex with a 0x/0X prefix. Throws ParameterError on
    /// anything else (signs, empty strings, stray characters).
    static Natural parse(std::string_view text);

    /// Builds a value from little-endian 64-bit limbs.
    static Natural from_words(std::span<const std::uint64_t> words);

    std::string to_string() const;
    std::string to_hex() const;

    /// 0 for zero, floor(log2 v) + 1 otherwise.
    std::size_t bit_length() const;

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    bool fits_u64() const;
    std::uint64_t to_u64() const;
    double to_double() const { return value_.get_d(); }

    bool divisible_by(const Natural& d) const;
    bool divisible_by(std::uint64_t d) const;
    std::uint64_t mod_u64(std::uint64_t m) const;

    /// Exact quotient; the caller guarantees d divides *this.
    Natural divexact(const Natural& d) const;

    const mpz_class& mpz() const { return value_; }

    Natural& operator+=(const Natural& rhs);
    Natural& operator-=(const Natural& rhs);
    Natural& operator*=(const Natural& rhs);
    Natural& operator/=(const Natural& rhs);
    Natural& operator%=(const Natural& rhs);

    friend Natural operator+(Natural a, const Natural& b) { return a += b; }
    friend Natural operator-(Natural a, const Natural& b) { return a -= b; }
    friend Natural operator*(Natural a, const Natural& b) { return a *= b; }
    friend Natural operator/(Natural a, const Natural& b) { return a /= b; }
    friend Natural operator%(Natural a, const Natural& b) { return a %= b; }

    friend bool operator==(const Natural& a, const Natural& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Natural& a, const Natural& b)
    {
        return cmp(a.value_, b.value_) <=> 0;
    }

private:
    mpz_class value_;
};

Natural pow(const Natural& base, unsigned long exponent);

} // namespace sgcd
