#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "smoothgcd/gcd_engine.hpp"
#include "smoothgcd/report.hpp"

namespace sgcd {

/// Process exit codes, one per outcome class.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitFailure = 2,
    kExitBudget = 3,
    kExitValidation = 4,
};

/// Uniform n-bit natural (top bit set); n >= 1.
Natural random_natural_bits(std::size_t bits, PhiloxStream& stream);

/// The (u, v) pair `gcd --bits n --random --seed s` runs on.
std::pair<Natural, Natural> random_pair(std::size_t bits, std::uint64_t seed);

/// Runs smooth_gcd and packages the result with its cost ledger.
RunReport run_gcd(const Natural& u, const Natural& v, const GcdConfig& cfg, bool with_timings = false);

/// B = n^2 from the run's total input length, or a fixed value.
struct BoundPolicy {
    std::optional<std::uint64_t> fixed;

    /// "paper" or "fixed:k". ParameterError otherwise.
    static BoundPolicy parse(std::string_view text);
    std::uint64_t bound_for(std::size_t input_bits) const;
    std::string to_string() const;
};

struct BenchConfig {
    /// Operand sizes in bits; each run draws two operands of this size.
    std::vector<std::size_t> grid;
    BoundPolicy policy;
    std::size_t runs = 1;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> rounds_cap;
    double c_w = 0.5;
    unsigned workers = 1;
    /// Draws for the per-trial W-success estimate, per grid point.
    std::size_t trial_samples = 2000;
};

struct BenchRow {
    std::size_t n = 0;
    std::size_t run = 0;
    std::uint64_t seed = 0;
    std::uint64_t bound = 0;
    std::uint64_t trials = 0;
    std::size_t rounds = 0;
    double mean_bits_removed = 0.0;
    std::size_t rounds_meeting_w = 0;
    bool failed = false;
    std::string failure_reason;
    /// False only for an Ok result that disagrees with Euclid.
    bool correct = true;
};

struct BenchAggregate {
    std::size_t n = 0;
    std::size_t input_bits = 0;
    std::uint64_t bound = 0;
    std::uint64_t trials = 0;
    double W = 0.0;
    std::size_t runs = 0;
    std::size_t failures = 0;
    std::size_t wrong = 0;
    double median_rounds = 0.0;
    double predicted_rounds = 0.0;
    /// median_rounds / predicted_rounds
    double ratio = 0.0;
    std::size_t total_rounds = 0;
    std::size_t rounds_meeting_w = 0;
    double frac_rounds_meeting_w = 0.0;
    /// Fraction of uniform r in [1, v-1] (random n-bit v) whose B-smooth
    /// part has at least W bits, with its sampling standard error.
    double trial_w_success = 0.0;
    double trial_w_sigma = 0.0;
    std::size_t trial_samples = 0;
};

struct BenchTable {
    std::vector<BenchRow> rows;
    std::vector<BenchAggregate> aggregates;
};

BenchTable run_bench(const BenchConfig& cfg);

nlohmann::ordered_json to_json(const BenchTable& table);
std::string to_csv(const BenchTable& table);

/// Faults cmd_validate can inject to show the suites notice them.
enum class Fault { None, AdversarialMultiplier, DropPrime };

Fault parse_fault(std::string_view text);

/// a = v / gcd(u, v) whenever that is a proper multiplier sharing a factor
/// above B with v; forces r = 0 and a candidate carrying spurious factors.
MultiplierHook adversarial_multiplier_hook(std::uint64_t bound);

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidateOptions {
    Fault fault = Fault::None;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

std::vector<SuiteResult> run_validation(const ValidateOptions& opts);

} // namespace sgcd
