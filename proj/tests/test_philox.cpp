#include <doctest.h>

#include <set>

#include "smoothgcd/philox.hpp"

using namespace sgcd;

// Known answers cross-checked against numpy.random.Philox (same 4x64-10
// construction; numpy bumps the counter before its first block).
TEST_CASE("philox4x64-10 known answers")
{
    auto zero = philox4x64({0, 0, 0, 0}, {0, 0});
    CHECK(zero[0] == 0x16554d9eca36314cULL);
    CHECK(zero[1] == 0xdb20fe9d672d0fdcULL);
    CHECK(zero[2] == 0xd7e772cee186176bULL);
    CHECK(zero[3] == 0x7e68b68aec7ba23bULL);

    auto one = philox4x64({1, 0, 0, 0}, {0, 0});
    CHECK(one[0] == 0x02f4ba6408e4d89bULL);
    CHECK(one[3] == 0x907d7a052fd5b4dcULL);

    auto keyed = philox4x64({6, 7, 9, 11}, {0x1234, 0x5678});
    CHECK(keyed[0] == 0xbdf8c90413f6c054ULL);
    CHECK(keyed[1] == 0x863aae5a0df287e3ULL);
    CHECK(keyed[2] == 0x04da426bdad1c0f5ULL);
    CHECK(keyed[3] == 0xfad8766e8f90ad95ULL);
}

TEST_CASE("streams are pure functions of their identity")
{
    PhiloxStream a(5, 1, 2, 3), b(5, 1, 2, 3);
    for (int i = 0; i < 10; ++i)
        CHECK(a.next() == b.next());

    // Word k is lane k%4 of block k/4.
    PhiloxStream c(5, 1, 2, 3);
    auto block1 = philox4x64({1, 2, 3, 0}, {5, 1});
    for (int i = 0; i < 4; ++i)
        c.next();
    CHECK(c.next() == block1[0]);

    std::set<std::uint64_t> firsts;
    for (std::uint64_t j = 0; j < 100; ++j)
        firsts.insert(PhiloxStream(5, 1, 0, j).next());
    CHECK(firsts.size() == 100);
}

TEST_CASE("next_unit lies in [0, 1)")
{
    PhiloxStream s(1, 2, 3, 4);
    double sum = 0;
    for (int i = 0; i < 10000; ++i) {
        double u = s.next_unit();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / 10000 == doctest::Approx(0.5).epsilon(0.02));
}
