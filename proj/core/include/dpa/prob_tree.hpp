#pragma once

#include <vector>

#include "dpa/density.hpp"
#include "dpa/model.hpp"

namespace dpa {

/// Probabilistic symbolic state (q, h, Z, psi). Z is the support of psi,
/// tracked as a single convex polytope over the active (x, y) pairs plus the
/// absolute-time clock; prob is the exact mass of psi.
struct ProbNode {
    GlobalState q;
    History h;
    Polytope support;
    PiecewiseDensity psi;
    Rational prob;
    int parent = -1;
    std::vector<Event> label;
    std::vector<int> children;
    bool complete = false;  // q is the global final state
};

struct ProbTree {
    std::vector<ProbNode> nodes;  // breadth-first order, root at 0
    Rational discarded_mass;      // total mass of pruned branches
    int max_pieces = 0;
    int max_degree = 0;
};

/// Start transformer: pins the started clocks to zero and multiplies in the
/// uniform duration factors. Mass preserved.
PiecewiseDensity dt_start(const DpaModel& m, const PiecewiseDensity& psi,
                          const std::vector<Event>& starts);

/// Race transformer: the clock density at the moment process `winner` ends,
/// given entry density psi in state q. The returned mass is the probability
/// that `winner` wins the race.
PiecewiseDensity dt_race(const DpaModel& m, const GlobalState& q, const PiecewiseDensity& psi,
                         int winner);

/// Deactivation transformer: drops the (x, y) pair of the finished step.
/// Mass preserved.
PiecewiseDensity dt_deactivate(const PiecewiseDensity& psi, int process, int step);

/// The probabilistic reachability tree. Children whose mass falls below
/// prune_eps are discarded and accounted in discarded_mass; with
/// prune_eps = 0 the complete-leaf masses sum to exactly 1.
ProbTree build_prob_tree(const DpaModel& m, const Rational& prune_eps = Rational(0));

/// Exact probability of the (possibly partial) history h.
Rational history_probability(const ProbTree& tree, const DpaModel& m, const History& h);

/// Probability that event a occurs before b over complete histories.
/// Histories containing a but not b count in full; histories containing
/// neither (impossible for complete, unpruned trees) count zero.
Rational event_precedes(const ProbTree& tree, const DpaModel& m, const Event& a, const Event& b);

/// Exact termination-time distribution, from the absolute-time marginal at
/// the complete leaves.
struct MakespanResult {
    PiecewiseDensity density;  // one-variable, over the absolute-time clock
    struct CdfPiece {
        Rational lo, hi;
        Polynomial poly;  // cumulative on [lo, hi]
    };
    std::vector<CdfPiece> cdf;  // normalized to end at 1
    Rational expectation;
    Rational lo, hi;      // support
    Rational total_mass;  // 1 unless branches were pruned

    Rational cdf_at(const Rational& t) const;
};
MakespanResult makespan(const ProbTree& tree, const DpaModel& m);

}  // namespace dpa
