#include <doctest.h>

#include <string>
#include <vector>

#include "smoothgcd/errors.hpp"
#include "smoothgcd/harness.hpp"
#include "smoothgcd/report.hpp"

using namespace sgcd;
using json = nlohmann::ordered_json;

namespace {

// Minimal RFC 4180 reader for two-column files.
std::vector<std::pair<std::string, std::string>> read_csv(const std::string& text)
{
    std::vector<std::pair<std::string, std::string>> rows;
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (quoted) {
            if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (ch == '\n') {
            fields.push_back(std::move(cur));
            cur.clear();
            REQUIRE(fields.size() == 2);
            rows.emplace_back(fields[0], fields[1]);
            fields.clear();
        } else {
            cur += ch;
        }
    }
    return rows;
}

RunReport sample(std::size_t bits, std::uint64_t seed, std::optional<std::uint64_t> cap = std::nullopt)
{
    auto [u, v] = random_pair(bits, seed);
    GcdConfig cfg;
    cfg.seed = seed;
    cfg.bound = 256;
    cfg.trials = 200;
    cfg.rounds_cap = cap;
    return run_gcd(u, v, cfg);
}

} // namespace

TEST_CASE("json round-trips")
{
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        RunReport r = sample(64 + 32 * seed, seed);
        REQUIRE(r.ledger.has_value());
        CHECK(r.ledger->observed);
        CHECK(report_from_json(to_json(r)) == r);
        CHECK(report_from_json(json::parse(to_json(r).dump())) == r);
    }
    RunReport capped = sample(512, 3, 1);
    CHECK(!capped.result.ok());
    CHECK(report_from_json(to_json(capped)) == capped);

    RunReport tiny = run_gcd(Natural(1), Natural(2), GcdConfig{});
    CHECK(!tiny.ledger.has_value());
    CHECK(report_from_json(to_json(tiny)) == tiny);

    RunReport timed = run_gcd(Natural(168), Natural(630), GcdConfig{}, true);
    REQUIRE(timed.timings.has_value());
    CHECK(report_from_json(to_json(timed)) == timed);
}

TEST_CASE("json layout")
{
    RunReport r = run_gcd(Natural(168), Natural(630), [] {
        GcdConfig c;
        c.bound = 5;
        c.seed = 1;
        return c;
    }());
    json j = to_json(r);
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["input"]["u"] == "168");
    CHECK(j["input"]["u_bits"] == 8);
    CHECK(j["result"]["status"] == "ok");
    CHECK(j["result"]["gcd"] == "42");
    CHECK(j["result"]["failure_reason"].is_null());
    CHECK(j["timings"].is_null());
    CHECK(j["config"]["bound"] == 5);
}

TEST_CASE("csv carries exactly the json leaves")
{
    for (std::uint64_t seed : {2ULL, 5ULL}) {
        RunReport r = sample(200, seed);
        const auto rows = read_csv(to_csv(r));
        REQUIRE(!rows.empty());
        CHECK(rows.front() == std::pair<std::string, std::string>{"field", "value"});
        const auto leaves = flatten(to_json(r));
        CHECK(std::vector(rows.begin() + 1, rows.end()) == leaves);
    }
}

TEST_CASE("flatten and csv quoting")
{
    json j = {{"a", {{"b", 1}, {"c", "x,y"}}}, {"d", json::array({true, nullptr})}, {"e", "say \"hi\""}};
    auto f = flatten(j);
    REQUIRE(f.size() == 5);
    CHECK(f[0] == std::pair<std::string, std::string>{"a.b", "1"});
    CHECK(f[1] == std::pair<std::string, std::string>{"a.c", "x,y"});
    CHECK(f[2] == std::pair<std::string, std::string>{"d.0", "true"});
    CHECK(f[3] == std::pair<std::string, std::string>{"d.1", ""});
    CHECK(f[4] == std::pair<std::string, std::string>{"e", "say \"hi\""});
}

TEST_CASE("text report starts with the answer")
{
    GcdConfig c;
    c.bound = 5;
    c.seed = 1;
    auto text = to_text(run_gcd(Natural(168), Natural(630), c));
    CHECK(text.rfind("42\n", 0) == 0);
    auto fail = to_text(sample(512, 3, 1));
    CHECK(fail.rfind("FAILURE: rounds_exceeded\n", 0) == 0);
}

TEST_CASE("malformed documents are rejected")
{
    json good = to_json(sample(100, 1));
    CHECK_NOTHROW(report_from_json(good));

    json j = good;
    j["schema_version"] = 99;
    CHECK_THROWS_AS(report_from_json(j), ParameterError);
    j = good;
    j.erase("result");
    CHECK_THROWS_AS(report_from_json(j), ParameterError);
    j = good;
    j["input"]["u"] = "not a number";
    CHECK_THROWS_AS(report_from_json(j), ParameterError);
    j = good;
    j["result"]["status"] = "maybe";
    CHECK_THROWS_AS(report_from_json(j), ParameterError);
    j = good;
    j["config"]["bound"] = "x";
    CHECK_THROWS_AS(report_from_json(j), ParameterError);
    CHECK_THROWS_AS(report_from_json(json::array()), ParameterError);
}
