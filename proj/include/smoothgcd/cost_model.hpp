#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smoothgcd/gcd_engine.hpp"

namespace sgcd {

/// One line of the per-step EREW PRAM accounting, in model units (all
/// asymptotic constants set to 1, logs base 2).
struct StepCost {
    std::string step;
    std::string description;
    std::string time_formula;
    std::string processors_formula;
    double model_time = 0.0;
    double model_processors = 0.0;

    double model_work() const { return model_time * model_processors; }
    friend bool operator==(const StepCost&, const StepCost&) = default;
};

/// Predicted and observed cost of one run, up to constants.
struct CostLedger {
    std::size_t n = 0;
    std::uint64_t bound = 0;
    double epsilon = 0.1;

    std::uint64_t predicted_trials_per_round = 0; // 2 B ceil(log2 n)
    double predicted_rounds = 0.0;                // n log log B / (log B)^2
    double per_round_depth = 0.0;                 // log B
    double predicted_depth = 0.0;                 // rounds * log B
    double predicted_processors = 0.0;            // n^(2+eps) log n B^2 / log B
    std::vector<StepCost> step_costs;

    bool observed = false;
    std::size_t observed_rounds = 0;
    std::vector<std::int64_t> observed_bits_per_round;

    /// observed_rounds / predicted_rounds; 0 before an observation is attached.
    double observed_to_predicted() const;

    friend bool operator==(const CostLedger&, const CostLedger&) = default;
};

/// Step labels, in the order predict() emits them.
const std::vector<std::string>& cost_step_labels();

/// Fills the prediction side of a ledger. Requires n >= 4 and B >= 4.
CostLedger predict(std::size_t n, std::uint64_t bound, double epsilon = 0.1);

/// Copies the round trace of a finished run into the ledger.
CostLedger attach_observation(CostLedger ledger, const GcdResult& result);

} // namespace sgcd
