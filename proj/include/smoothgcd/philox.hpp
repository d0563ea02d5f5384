#pragma once

#include <array>
#include <cstdint>

namespace sgcd {

// Philox4x64-10 counter-based generator (Salmon et al., SC 2011).
//
// A block of four 64-bit outputs is a pure function of (key, counter), so any
// trial can regenerate its own random words without touching shared state.
using PhiloxKey = std::array<std::uint64_t, 2>;
using PhiloxCounter = std::array<std::uint64_t, 4>;

namespace detail {

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo)
{
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

} // namespace detail

constexpr int kPhiloxRounds = 10;

inline PhiloxCounter philox4x64(PhiloxCounter ctr, PhiloxKey key)
{
    constexpr std::uint64_t M0 = 0xD2E7470EE14C6C93ULL;
    constexpr std::uint64_t M1 = 0xCA5A826395121157ULL;
    constexpr std::uint64_t W0 = 0x9E3779B97F4A7C15ULL;
    constexpr std::uint64_t W1 = 0xBB67AE8584CAA73BULL;
    for (int round = 0; round < kPhiloxRounds; ++round) {
        if (round > 0) {
            key[0] += W0;
            key[1] += W1;
        }
        std::uint64_t hi0, lo0, hi1, lo1;
        detail::mulhilo(M0, ctr[0], hi0, lo0);
        detail::mulhilo(M1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

/// Sequential 64-bit words from one Philox stream.
///
/// The stream is identified by (seed, tag, a, b); word k of the stream is
/// element k%4 of philox4x64({k/4, a, b, 0}, {seed, tag}).
class PhiloxStream {
public:
    PhiloxStream(std::uint64_t seed, std::uint64_t tag, std::uint64_t a, std::uint64_t b)
        : key_{seed, tag}, a_(a), b_(b)
    {
    }

    std::uint64_t next()
    {
        if (pos_ == 4) {
            buf_ = philox4x64({block_++, a_, b_, 0}, key_);
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    /// Uniform double in [0, 1) from the top 53 bits of one word.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    PhiloxKey key_;
    std::uint64_t a_;
    std::uint64_t b_;
    std::uint64_t block_ = 0;
    PhiloxCounter buf_{};
    int pos_ = 4;
};

// Stream tags keep independent consumers of one seed apart.
namespace stream_tag {
inline constexpr std::uint64_t multiplier = 1;
inline constexpr std::uint64_t bench_input = 2;
inline constexpr std::uint64_t sampling = 3;
inline constexpr std::uint64_t validation = 4;
} // namespace stream_tag

} // namespace sgcd
