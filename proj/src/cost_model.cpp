#include "smoothgcd/cost_model.hpp"

#include <cmath>

#include "smoothgcd/errors.hpp"

namespace sgcd {

const std::vector<std::string>& cost_step_labels()
{
    static const std::vector<std::string> labels = {
        "Step 1",      "Step 2",       "Step 3",      "Step 3(a)i", "Step 3(a)ii",
        "Step 3(a)iii", "Step 3(a)",   "Step 3(b)",   "Step 3(c)",  "Step 4",
    };
    return labels;
}

double CostLedger::observed_to_predicted() const
{
    if (!observed || predicted_rounds <= 0.0)
        return 0.0;
    return static_cast<double>(observed_rounds) / predicted_rounds;
}

CostLedger predict(std::size_t n, std::uint64_t bound, double epsilon)
{
    if (n < 4 || bound < 4)
        throw ParameterError("predict: requires n >= 4 and B >= 4");

    const double nd = static_cast<double>(n);
    const double bd = static_cast<double>(bound);
    const double logn = std::log2(nd);
    const double logb = std::log2(bd);
    const double loglogb = std::log2(logb);
    if (!(loglogb > 0.0))
        throw ParameterError("predict: log log B must be positive");

    CostLedger l;
    l.n = n;
    l.bound = bound;
    l.epsilon = epsilon;
    l.predicted_trials_per_round = default_trials(bound, n);
    l.predicted_rounds = nd * loglogb / (logb * logb);
    l.per_round_depth = logb;
    l.predicted_depth = l.predicted_rounds * l.per_round_depth;

    const double n1e = std::pow(nd, 1.0 + epsilon);
    const double n2e = std::pow(nd, 2.0 + epsilon);
    const double per_trial_strip = n2e * bd / logb;
    l.predicted_processors = n2e * logn * bd * bd / logb;

    l.step_costs = {
        {"Step 1", "sieve primes <= B and tabulate p^e", "log n log B", "n B^2", logn * logb, nd * bd * bd},
        {"Step 2", "strip shared small prime powers", "log n", "n^(2+e) B / log B", logn, per_trial_strip},
        {"Step 3", "zero test of u_i v_i", "log n", "n", logn, nd},
        {"Step 3(a)i", "draw a_ij and reduce mod v_i", "log n", "n^(1+e)", logn, n1e},
        {"Step 3(a)ii", "r_ij = a_ij u_i mod v_i", "log n", "n^(1+e)", logn, n1e},
        {"Step 3(a)iii", "remove primes <= B from r_ij (per trial)", "log n", "n^(2+e) B / log B", logn,
         per_trial_strip},
        {"Step 3(a)", "all 2 B log n trials in parallel", "log B", "n^(2+e) log n B^2 / log B", logb,
         l.predicted_processors},
        {"Step 3(b)", "minimum over trials", "log B", "B log n", logb, bd * logn},
        {"Step 3(c)", "(u_i, v_i) <- (v_i, s_i)", "1", "n", 1.0, nd},
        {"Step 4", "verify divisibility, restore small factors", "log n", "n^(1+e)", logn, n1e},
    };
    return l;
}

CostLedger attach_observation(CostLedger ledger, const GcdResult& result)
{
    ledger.observed = true;
    ledger.observed_rounds = result.rounds.size();
    ledger.observed_bits_per_round.clear();
    ledger.observed_bits_per_round.reserve(result.rounds.size());
    for (const auto& r : result.rounds)
        ledger.observed_bits_per_round.push_back(r.bits_removed);
    return ledger;
}

} // namespace sgcd
