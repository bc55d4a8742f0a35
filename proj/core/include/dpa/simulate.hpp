#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dpa/model.hpp"

namespace dpa {

/// One sampled run: the event order, realized durations and total time.
struct RunRecord {
    History history;
    double makespan = 0;
    std::vector<std::vector<double>> durations;  // [process-1][step-1]
    int ties = 0;  // double-precision completion ties, broken by priority
};

/// Aggregated estimates. Counts sum to the sample count; the standard error
/// of a history estimate is sqrt(p*(1-p)/N) at p = count/N.
struct EstimateReport {
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::uint64_t>> history_counts;  // sorted by label
    double makespan_mean = 0;
    double makespan_variance = 0;  // unbiased sample variance
    double makespan_min = 0;
    double makespan_max = 0;
    std::uint64_t ties = 0;
};

/// Deterministic: (model, seed, run_index) fully determine the record.
/// Durations are drawn uniformly on [lo, hi).
RunRecord sample_run(const DpaModel& m, std::uint64_t seed, std::uint64_t run_index);

/// Aggregates sample_run over run indices 0..samples-1. Work is split into
/// fixed chunks merged in index order, so the report is byte-identical for
/// any thread count (threads <= 0 picks a default).
EstimateReport estimate(const DpaModel& m, std::uint64_t samples, std::uint64_t seed,
                        int threads = 0);

}  // namespace dpa
