#include "dpa/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include "dpa/errors.hpp"

namespace dpa {

namespace {

// splitmix64: tiny, portable, deterministic; one independent stream per run.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform on [0, 1)
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t run_index) {
    SplitMix64 s{seed ^ (0x632be59bd9b4e019ULL + run_index * 0x9e3779b97f4a7c15ULL)};
    s.next();
    return s.next();
}

struct ChunkStats {
    std::map<std::string, std::uint64_t> counts;
    double sum = 0;
    double sumsq = 0;
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
    std::uint64_t ties = 0;
};

}  // namespace

RunRecord sample_run(const DpaModel& m, std::uint64_t seed, std::uint64_t run_index) {
    SplitMix64 rng{mix_seed(seed, run_index)};
    RunRecord rec;
    rec.durations.resize(static_cast<std::size_t>(m.process_count()));
    for (int i = 1; i <= m.process_count(); ++i)
        rec.durations[static_cast<std::size_t>(i - 1)].assign(
            static_cast<std::size_t>(m.step_count(i)), 0.0);

    GlobalState q = m.initial_state();
    std::vector<double> completion(static_cast<std::size_t>(m.process_count()), 0.0);
    double now = 0;
    while (true) {
        const std::vector<Event> starts = scheduler_decision(m, q);
        if (!starts.empty()) {
            for (const auto& e : starts) {
                const Step& s = m.step(e.process, e.step);
                const double lo = to_double(s.lo), hi = to_double(s.hi);
                const double y = lo + rng.uniform01() * (hi - lo);
                rec.durations[static_cast<std::size_t>(e.process - 1)]
                             [static_cast<std::size_t>(e.step - 1)] = y;
                completion[static_cast<std::size_t>(e.process - 1)] = now + y;
                rec.history.push_back(e);
            }
            q = apply_start(m, q, starts);
            continue;
        }
        const std::vector<int> active = q.active_processes();
        if (active.empty()) break;  // global final state
        int winner = 0;
        double best = std::numeric_limits<double>::infinity();
        for (int i : m.scheduler.order) {
            if (!q.procs[static_cast<std::size_t>(i - 1)].active) continue;
            const double c = completion[static_cast<std::size_t>(i - 1)];
            if (c < best) {
                best = c;
                winner = i;
            } else if (c == best) {
                ++rec.ties;  // keep the earlier process in priority order
            }
        }
        now = best;
        rec.history.push_back(
            Event{winner, q.procs[static_cast<std::size_t>(winner - 1)].done + 1, false});
        q = apply_end(m, q, winner);
    }
    rec.makespan = now;
    return rec;
}

EstimateReport estimate(const DpaModel& m, std::uint64_t samples, std::uint64_t seed,
                        int threads) {
    if (samples < 1) throw AnalysisError("estimate: samples must be at least 1");
    if (threads <= 0) {
        const unsigned hc = std::thread::hardware_concurrency();
        threads = static_cast<int>(std::clamp<unsigned>(hc, 1, 8));
    }

    // Fixed chunking: partials are merged in chunk order, so results do not
    // depend on how many workers ran.
    const std::uint64_t chunk_count = std::min<std::uint64_t>(samples, 256);
    std::vector<ChunkStats> partials(chunk_count);
    std::atomic<std::uint64_t> next_chunk{0};
    auto worker = [&] {
        while (true) {
            const std::uint64_t c = next_chunk.fetch_add(1);
            if (c >= chunk_count) return;
            const std::uint64_t begin = samples * c / chunk_count;
            const std::uint64_t end = samples * (c + 1) / chunk_count;
            ChunkStats& st = partials[c];
            for (std::uint64_t r = begin; r < end; ++r) {
                const RunRecord rec = sample_run(m, seed, r);
                st.counts[m.history_label(rec.history)] += 1;
                st.sum += rec.makespan;
                st.sumsq += rec.makespan * rec.makespan;
                st.min = std::min(st.min, rec.makespan);
                st.max = std::max(st.max, rec.makespan);
                st.ties += static_cast<std::uint64_t>(rec.ties);
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    EstimateReport rep;
    rep.samples = samples;
    rep.seed = seed;
    std::map<std::string, std::uint64_t> counts;
    double sum = 0, sumsq = 0;
    double mn = std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    for (const auto& st : partials) {
        for (const auto& [label, c] : st.counts) counts[label] += c;
        sum += st.sum;
        sumsq += st.sumsq;
        mn = std::min(mn, st.min);
        mx = std::max(mx, st.max);
        rep.ties += st.ties;
    }
    rep.history_counts.assign(counts.begin(), counts.end());
    const double n = static_cast<double>(samples);
    rep.makespan_mean = sum / n;
    rep.makespan_variance =
        samples > 1 ? std::max(0.0, (sumsq - sum * sum / n) / (n - 1)) : 0.0;
    rep.makespan_min = mn;
    rep.makespan_max = mx;
    return rep;
}

}  // namespace dpa
