#include "dpa/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>

#include "dpa/errors.hpp"

namespace dpa {

namespace {

Json model_block(const DpaModel& m, const std::string& digest) {
    Json j;
    j["digest"] = digest;
    j["processes"] = m.process_count();
    j["events"] = m.total_events();
    j["scheduler"] = m.scheduler.policy == SchedulerPolicy::Liberal ? "liberal" : "priority";
    j["absolute_time_clock"] = m.absolute_time_clock;
    return j;
}

std::map<std::string, Rational> complete_history_probabilities(const DpaModel& m,
                                                               const ProbTree& tree) {
    std::map<std::string, Rational> out;
    for (const auto& node : tree.nodes)
        if (node.complete) out.emplace(m.history_label(node.h), node.prob);
    return out;
}

void put_z(Json& row, double z) {
    if (std::isfinite(z))
        row["z"] = z;
    else
        row["z"] = "inf";
}

}  // namespace

std::string model_digest(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

Json analyze_report(const DpaModel& m, const std::string& digest, const ProbTree& tree,
                    const AnalyzeOptions& opt) {
    Json j;
    j["model"] = model_block(m, digest);
    j["prune_eps"] = to_string(opt.prune_eps);

    int complete_leaves = 0;
    for (const auto& node : tree.nodes) complete_leaves += node.complete ? 1 : 0;
    Json stats;
    stats["nodes"] = tree.nodes.size();
    stats["complete_leaves"] = complete_leaves;
    stats["max_density_pieces"] = tree.max_pieces;
    stats["max_polynomial_degree"] = tree.max_degree;
    j["tree"] = stats;

    if (opt.histories) {
        Json rows = Json::array();
        for (const auto& [label, p] : complete_history_probabilities(m, tree)) {
            Json row;
            row["history"] = label;
            row["probability"] = to_string(p);
            row["probability_float"] = to_double(p);
            rows.push_back(std::move(row));
        }
        j["histories"] = std::move(rows);
    }
    j["discarded_mass"] = to_string(tree.discarded_mass);

    if (!opt.precedes.empty()) {
        Json rows = Json::array();
        for (const auto& [a, b] : opt.precedes) {
            const Rational p = event_precedes(tree, m, a, b);
            Json row;
            row["a"] = m.event_label(a);
            row["b"] = m.event_label(b);
            row["probability"] = to_string(p);
            row["probability_float"] = to_double(p);
            rows.push_back(std::move(row));
        }
        j["precedes"] = std::move(rows);
    }

    const bool want_makespan = opt.makespan_query.value_or(m.absolute_time_clock);
    if (want_makespan) {
        const MakespanResult mk = makespan(tree, m);  // throws if clock disabled
        Json block;
        block["expectation"] = to_string(mk.expectation);
        block["expectation_float"] = to_double(mk.expectation);
        block["support"] = Json::array({to_string(mk.lo), to_string(mk.hi)});
        block["total_mass"] = to_string(mk.total_mass);
        Json grid = Json::array();
        const int n = std::max(2, opt.cdf_grid);
        for (int g = 0; g < n; ++g) {
            const Rational t = mk.lo + (mk.hi - mk.lo) * Rational(g) / Rational(n - 1);
            grid.push_back(Json::array({to_double(t), to_double(mk.cdf_at(t))}));
        }
        block["cdf"] = std::move(grid);
        j["makespan"] = std::move(block);
    }
    return j;
}

Json simulate_report(const DpaModel& m, const std::string& digest, const EstimateReport& est) {
    Json j;
    j["model"] = model_block(m, digest);
    j["samples"] = est.samples;
    j["seed"] = est.seed;
    Json rows = Json::array();
    const double n = static_cast<double>(est.samples);
    for (const auto& [label, count] : est.history_counts) {
        const double p = static_cast<double>(count) / n;
        Json row;
        row["history"] = label;
        row["count"] = count;
        row["estimate"] = p;
        row["std_error"] = std::sqrt(p * (1.0 - p) / n);
        rows.push_back(std::move(row));
    }
    j["histories"] = std::move(rows);
    Json mk;
    mk["mean"] = est.makespan_mean;
    mk["variance"] = est.makespan_variance;
    mk["min"] = est.makespan_min;
    mk["max"] = est.makespan_max;
    j["makespan"] = std::move(mk);
    j["ties"] = est.ties;
    return j;
}

CompareResult compare_report(const DpaModel& m, const std::string& digest, const ProbTree& tree,
                             const EstimateReport& est,
                             const std::map<std::string, Rational>& exact_overrides) {
    CompareResult res;
    Json& j = res.doc;
    j["model"] = model_block(m, digest);
    j["samples"] = est.samples;
    j["seed"] = est.seed;

    std::map<std::string, Rational> exact = complete_history_probabilities(m, tree);
    for (const auto& [label, p] : exact_overrides) {
        if (!exact.contains(label))
            throw AnalysisError("override for unknown history: " + label);
        exact[label] = p;
    }
    std::map<std::string, std::uint64_t> sampled(est.history_counts.begin(),
                                                 est.history_counts.end());
    std::map<std::string, std::pair<Rational, std::uint64_t>> joined;
    for (const auto& [label, p] : exact) joined[label] = {p, 0};
    for (const auto& [label, c] : sampled) {
        auto it = joined.find(label);
        if (it == joined.end())
            joined[label] = {Rational(0), c};  // sampled but impossible per engine
        else
            it->second.second = c;
    }

    const double n = static_cast<double>(est.samples);
    double max_abs_z = 0;
    Json rows = Json::array();
    for (const auto& [label, pc] : joined) {
        const double p = to_double(pc.first);
        const double phat = static_cast<double>(pc.second) / n;
        const double se = std::sqrt(p * (1.0 - p) / n);
        double z = 0;
        if (se > 0)
            z = (phat - p) / se;
        else
            z = (phat == p) ? 0 : std::numeric_limits<double>::infinity();
        max_abs_z = std::max(max_abs_z, std::fabs(z));
        Json row;
        row["history"] = label;
        row["exact"] = to_string(pc.first);
        row["exact_float"] = p;
        row["count"] = pc.second;
        row["estimate"] = phat;
        row["std_error"] = se;
        put_z(row, z);
        rows.push_back(std::move(row));
    }
    j["histories"] = std::move(rows);

    if (m.absolute_time_clock) {
        const MakespanResult mk = makespan(tree, m);
        const double expect = to_double(mk.expectation);
        const double se = std::sqrt(est.makespan_variance / n);
        double z = 0;
        if (se > 0)
            z = (est.makespan_mean - expect) / se;
        else
            z = (est.makespan_mean == expect) ? 0 : std::numeric_limits<double>::infinity();
        max_abs_z = std::max(max_abs_z, std::fabs(z));
        Json block;
        block["expectation"] = to_string(mk.expectation);
        block["expectation_float"] = expect;
        block["mean"] = est.makespan_mean;
        block["std_error"] = se;
        put_z(block, z);
        j["makespan"] = std::move(block);
    }

    res.pass = std::isfinite(max_abs_z) && max_abs_z <= 4.0;
    if (std::isfinite(max_abs_z))
        j["max_abs_z"] = max_abs_z;
    else
        j["max_abs_z"] = "inf";
    j["verdict"] = res.pass ? "pass" : "fail";
    return res;
}

}  // namespace dpa
