#include "smoothgcd/natural.hpp"

#include <cctype>
#include <climits>

#include "smoothgcd/errors.hpp"

namespace sgcd {

Natural::Natural(std::uint64_t v)
{
    mpz_import(value_.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
}

Natural::Natural(const mpz_class& v) : value_(v)
{
    if (sgn(value_) < 0)
        throw ParameterError("Natural: negative value");
}

Natural Natural::parse(std::string_view text)
{
    int base = 10;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        base = 16;
        text.remove_prefix(2);
    }
    if (text.empty())
        throw ParameterError("Natural: empty number");
    for (char ch : text) {
        auto c = static_cast<unsigned char>(ch);
        bool ok = base == 16 ? std::isxdigit(c) != 0 : std::isdigit(c) != 0;
        if (!ok)
            throw ParameterError("Natural: cannot parse '" + std::string(text) + "'");
    }
    Natural n;
    n.value_.set_str(std::string(text), base);
    return n;
}

Natural Natural::from_words(std::span<const std::uint64_t> words)
{
    Natural n;
    if (!words.empty())
        mpz_import(n.value_.get_mpz_t(), words.size(), -1, sizeof(std::uint64_t), 0, 0, words.data());
    return n;
}

std::string Natural::to_string() const { return value_.get_str(10); }

std::string Natural::to_hex() const { return "0x" + value_.get_str(16); }

std::size_t Natural::bit_length() const
{
    return is_zero() ? 0 : mpz_sizeinbase(value_.get_mpz_t(), 2);
}

bool Natural::fits_u64() const { return bit_length() <= 64; }

std::uint64_t Natural::to_u64() const
{
    if (!fits_u64())
        throw ParameterError("Natural: value does not fit in 64 bits");
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof out, 0, 0, value_.get_mpz_t());
    return out;
}

bool Natural::divisible_by(const Natural& d) const
{
    return mpz_divisible_p(value_.get_mpz_t(), d.value_.get_mpz_t()) != 0;
}

bool Natural::divisible_by(std::uint64_t d) const
{
    if (d <= ULONG_MAX)
        return mpz_divisible_ui_p(value_.get_mpz_t(), static_cast<unsigned long>(d)) != 0;
    return divisible_by(Natural(d));
}

std::uint64_t Natural::mod_u64(std::uint64_t m) const
{
    if (m == 0)
        throw ParameterError("Natural: modulus is zero");
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    return mpz_fdiv_ui(value_.get_mpz_t(), static_cast<unsigned long>(m));
}

Natural Natural::divexact(const Natural& d) const
{
    Natural q;
    mpz_divexact(q.value_.get_mpz_t(), value_.get_mpz_t(), d.value_.get_mpz_t());
    return q;
}

Natural& Natural::operator+=(const Natural& rhs)
{
    value_ += rhs.value_;
    return *this;
}

Natural& Natural::operator-=(const Natural& rhs)
{
    if (value_ < rhs.value_)
        throw ParameterError("Natural: subtraction below zero");
    value_ -= rhs.value_;
    return *this;
}

Natural& Natural::operator*=(const Natural& rhs)
{
    value_ *= rhs.value_;
    return *this;
}

Natural& Natural::operator/=(const Natural& rhs)
{
    if (rhs.is_zero())
        throw ParameterError("Natural: division by zero");
    mpz_fdiv_q(value_.get_mpz_t(), value_.get_mpz_t(), rhs.value_.get_mpz_t());
    return *this;
}

Natural& Natural::operator%=(const Natural& rhs)
{
    if (rhs.is_zero())
        throw ParameterError("Natural: division by zero");
    mpz_fdiv_r(value_.get_mpz_t(), value_.get_mpz_t(), rhs.value_.get_mpz_t());
    return *this;
}

Natural pow(const Natural& base, unsigned long exponent)
{
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), base.mpz().get_mpz_t(), exponent);
    return Natural(out);
}

} // namespace sgcd
