#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpa/model.hpp"
#include "dpa/prob_tree.hpp"
#include "dpa/simulate.hpp"

namespace dpa {

using Json = nlohmann::ordered_json;

/// FNV-1a 64-bit digest of the model document, as 16 hex characters.
std::string model_digest(const std::string& text);

struct AnalyzeOptions {
    Rational prune_eps = Rational(0);
    bool histories = true;
    /// nullopt: report the makespan iff the model carries the absolute-time
    /// clock; true: require it (error otherwise); false: skip.
    std::optional<bool> makespan_query;
    std::vector<std::pair<Event, Event>> precedes;
    int cdf_grid = 101;
};

Json analyze_report(const DpaModel& m, const std::string& digest, const ProbTree& tree,
                    const AnalyzeOptions& opt);

Json simulate_report(const DpaModel& m, const std::string& digest, const EstimateReport& est);

/// Joins exact and sampled results; z-scores use the exact-probability
/// standard error sqrt(p(1-p)/N). pass iff every |z| <= 4.
struct CompareResult {
    Json doc;
    bool pass = true;
};
CompareResult compare_report(const DpaModel& m, const std::string& digest, const ProbTree& tree,
                             const EstimateReport& est,
                             const std::map<std::string, Rational>& exact_overrides = {});

}  // namespace dpa
