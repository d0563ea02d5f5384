#include "smoothgcd/report.hpp"

#include <sstream>

#include <fmt/format.h>

#include "smoothgcd/errors.hpp"

namespace sgcd {

using json = nlohmann::ordered_json;

namespace {

json factors_to_json(const FactorVector& fv)
{
    json arr = json::array();
    for (const auto& pp : fv.entries)
        arr.push_back({{"prime", pp.prime}, {"exponent", pp.exponent}});
    return arr;
}

FactorVector factors_from_json(const json& j)
{
    FactorVector fv;
    for (const auto& e : j)
        fv.entries.push_back({e.at("prime").get<std::uint64_t>(), e.at("exponent").get<unsigned>()});
    return fv;
}

json config_to_json(const ResolvedConfig& c)
{
    return {{"input_bits", c.input_bits}, {"bound", c.bound},   {"trials", c.trials},
            {"rounds_cap", c.rounds_cap}, {"seed", c.seed},      {"c_w", c.c_w}};
}

ResolvedConfig config_from_json(const json& j)
{
    ResolvedConfig c;
    c.input_bits = j.at("input_bits").get<std::size_t>();
    c.bound = j.at("bound").get<std::uint64_t>();
    c.trials = j.at("trials").get<std::uint64_t>();
    c.rounds_cap = j.at("rounds_cap").get<std::uint64_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.c_w = j.at("c_w").get<double>();
    return c;
}

json result_to_json(const GcdResult& r)
{
    json rounds = json::array();
    for (const auto& rec : r.rounds) {
        rounds.push_back({{"index", rec.index},
                          {"u", rec.u.to_string()},
                          {"v", rec.v.to_string()},
                          {"chosen_j", rec.chosen_j},
                          {"a", rec.a.to_string()},
                          {"s", rec.s.to_string()},
                          {"bits_removed", rec.bits_removed}});
    }
    json j;
    j["status"] = to_string(r.status);
    j["gcd"] = r.gcd.to_string();
    j["candidate"] = r.candidate.to_string();
    j["failure_reason"] = r.failure_reason ? json(to_string(*r.failure_reason)) : json(nullptr);
    j["g_small"] = factors_to_json(r.g_small);
    j["round_count"] = r.rounds.size();
    j["rounds"] = std::move(rounds);
    return j;
}

GcdResult result_from_json(const json& j)
{
    GcdResult r;
    const auto status = j.at("status").get<std::string>();
    if (status == "ok")
        r.status = GcdStatus::Ok;
    else if (status == "failure")
        r.status = GcdStatus::Failure;
    else
        throw ParameterError("report: unknown status '" + status + "'");
    r.gcd = Natural::parse(j.at("gcd").get<std::string>());
    r.candidate = Natural::parse(j.at("candidate").get<std::string>());
    const auto& fr = j.at("failure_reason");
    if (!fr.is_null()) {
        const auto s = fr.get<std::string>();
        if (s == "rounds_exceeded")
            r.failure_reason = FailureReason::RoundsExceeded;
        else if (s == "verification_failed")
            r.failure_reason = FailureReason::VerificationFailed;
        else
            throw ParameterError("report: unknown failure reason '" + s + "'");
    }
    r.g_small = factors_from_json(j.at("g_small"));
    for (const auto& e : j.at("rounds")) {
        RoundRecord rec;
        rec.index = e.at("index").get<std::size_t>();
        rec.u = Natural::parse(e.at("u").get<std::string>());
        rec.v = Natural::parse(e.at("v").get<std::string>());
        rec.chosen_j = e.at("chosen_j").get<std::uint64_t>();
        rec.a = Natural::parse(e.at("a").get<std::string>());
        rec.s = Natural::parse(e.at("s").get<std::string>());
        rec.bits_removed = e.at("bits_removed").get<std::int64_t>();
        r.rounds.push_back(std::move(rec));
    }
    if (j.at("round_count").get<std::size_t>() != r.rounds.size())
        throw ParameterError("report: round_count does not match rounds");
    return r;
}

json ledger_to_json(const CostLedger& l)
{
    json steps = json::array();
    for (const auto& s : l.step_costs) {
        steps.push_back({{"step", s.step},
                         {"description", s.description},
                         {"time_formula", s.time_formula},
                         {"processors_formula", s.processors_formula},
                         {"model_time", s.model_time},
                         {"model_processors", s.model_processors},
                         {"model_work", s.model_work()}});
    }
    json j;
    j["units"] = "model units (constants = 1, log base 2)";
    j["n"] = l.n;
    j["bound"] = l.bound;
    j["epsilon"] = l.epsilon;
    j["predicted_trials_per_round"] = l.predicted_trials_per_round;
    j["predicted_rounds"] = l.predicted_rounds;
    j["per_round_depth"] = l.per_round_depth;
    j["predicted_depth"] = l.predicted_depth;
    j["predicted_processors"] = l.predicted_processors;
    j["step_costs"] = std::move(steps);
    j["observed"] = l.observed;
    j["observed_rounds"] = l.observed_rounds;
    j["observed_bits_per_round"] = l.observed_bits_per_round;
    j["observed_to_predicted"] = l.observed_to_predicted();
    return j;
}

CostLedger ledger_from_json(const json& j)
{
    CostLedger l;
    l.n = j.at("n").get<std::size_t>();
    l.bound = j.at("bound").get<std::uint64_t>();
    l.epsilon = j.at("epsilon").get<double>();
    l.predicted_trials_per_round = j.at("predicted_trials_per_round").get<std::uint64_t>();
    l.predicted_rounds = j.at("predicted_rounds").get<double>();
    l.per_round_depth = j.at("per_round_depth").get<double>();
    l.predicted_depth = j.at("predicted_depth").get<double>();
    l.predicted_processors = j.at("predicted_processors").get<double>();
    for (const auto& s : j.at("step_costs")) {
        l.step_costs.push_back({s.at("step").get<std::string>(), s.at("description").get<std::string>(),
                                s.at("time_formula").get<std::string>(),
                                s.at("processors_formula").get<std::string>(), s.at("model_time").get<double>(),
                                s.at("model_processors").get<double>()});
    }
    l.observed = j.at("observed").get<bool>();
    l.observed_rounds = j.at("observed_rounds").get<std::size_t>();
    l.observed_bits_per_round = j.at("observed_bits_per_round").get<std::vector<std::int64_t>>();
    return l;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

void flatten_into(const json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out)
{
    auto child = [&](const std::string& key) { return path.empty() ? key : path + "." + key; };
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten_into(v, child(k), out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten_into(j[i], child(std::to_string(i)), out);
    } else if (j.is_string()) {
        out.emplace_back(path, j.get<std::string>());
    } else if (j.is_null()) {
        out.emplace_back(path, "");
    } else {
        out.emplace_back(path, j.dump());
    }
}

} // namespace

json to_json(const RunReport& report)
{
    json j;
    j["schema_version"] = report.schema_version;
    j["input"] = {{"u", report.u.to_string()},
                  {"v", report.v.to_string()},
                  {"u_bits", report.u.bit_length()},
                  {"v_bits", report.v.bit_length()},
                  {"seed", report.config.seed}};
    j["config"] = config_to_json(report.config);
    j["result"] = result_to_json(report.result);
    j["ledger"] = report.ledger ? ledger_to_json(*report.ledger) : json(nullptr);
    j["timings"] = report.timings
                       ? json{{"table_ms", report.timings->table_ms}, {"main_loop_ms", report.timings->main_loop_ms}}
                       : json(nullptr);
    return j;
}

RunReport report_from_json(const json& j)
{
    try {
        RunReport r;
        r.schema_version = j.at("schema_version").get<int>();
        if (r.schema_version != kSchemaVersion)
            throw ParameterError("report: unsupported schema_version " + std::to_string(r.schema_version));
        r.u = Natural::parse(j.at("input").at("u").get<std::string>());
        r.v = Natural::parse(j.at("input").at("v").get<std::string>());
        r.config = config_from_json(j.at("config"));
        r.result = result_from_json(j.at("result"));
        if (!j.at("ledger").is_null())
            r.ledger = ledger_from_json(j.at("ledger"));
        if (!j.at("timings").is_null())
            r.timings = PhaseTimings{j.at("timings").at("table_ms").get<double>(),
                                     j.at("timings").at("main_loop_ms").get<double>()};
        return r;
    } catch (const json::exception& e) {
        throw ParameterError(std::string("report: malformed JSON: ") + e.what());
    }
}

std::vector<std::pair<std::string, std::string>> flatten(const json& j)
{
    std::vector<std::pair<std::string, std::string>> out;
    flatten_into(j, "", out);
    return out;
}

std::string to_csv(const RunReport& report)
{
    std::string out = "field,value\n";
    for (const auto& [k, v] : flatten(to_json(report)))
        out += csv_field(k) + "," + csv_field(v) + "\n";
    return out;
}

std::string to_text(const RunReport& report)
{
    const auto& r = report.result;
    std::ostringstream os;
    if (r.ok())
        os << r.gcd.to_string() << "\n";
    else
        os << "FAILURE: " << to_string(*r.failure_reason) << "\n";
    os << fmt::format("rounds: {}  B: {}  T: {}  cap: {}  seed: {}\n", r.rounds.size(), report.config.bound,
                      report.config.trials, report.config.rounds_cap, report.config.seed);
    for (const auto& rec : r.rounds)
        os << fmt::format("  round {:>3}: v {:>5} bits -> s {:>5} bits (removed {}, j={})\n", rec.index,
                          rec.v.bit_length(), rec.s.bit_length(), rec.bits_removed, rec.chosen_j);
    if (report.ledger && report.ledger->predicted_rounds > 0.0)
        os << fmt::format("predicted rounds (model units): {:.3f}  observed/predicted: {:.3f}\n",
                          report.ledger->predicted_rounds, report.ledger->observed_to_predicted());
    return os.str();
}

} // namespace sgcd
