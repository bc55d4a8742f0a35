#pragma once

#include <vector>

#include "dpa/model.hpp"
#include "dpa/polytope.hpp"

namespace dpa {

/// Extended symbolic state (q, h, Z): Z ranges over the clocks active in q
/// plus the absolute-time clock when the model enables it.
struct SymbolicNode {
    GlobalState q;
    History h;
    Polytope zone;
    int parent = -1;
    std::vector<Event> label;
    /// The node is reachable only on a measure-zero boundary of the guard
    /// (its entry zone lost a dimension at some end transition on the path).
    bool boundary_only = false;
    std::vector<int> children;
};

struct SymbolicTree {
    std::vector<SymbolicNode> nodes;  // breadth-first order, root at 0
};

/// Uniform time flow: Z' = {v + tau*1 : v in Z, tau >= 0} cut by the active
/// upper duration bounds x_i <= b_i. Clock differences are preserved.
Polytope post_time(const DpaModel& m, const GlobalState& q, const Polytope& zone);

SymbolicNode post_start(const DpaModel& m, const SymbolicNode& s, const std::vector<Event>& starts);

/// Time step folded in, guard a_i <= x_i <= b_i applied, x_i eliminated.
/// May return an empty zone (infeasible ordering, caller prunes).
SymbolicNode post_end(const DpaModel& m, const SymbolicNode& s, int process);

/// Breadth-first reachability tree from (q1, eps, bottom). horizon < 0 means
/// full depth (acyclic models always terminate).
SymbolicTree build_tree(const DpaModel& m, int horizon = -1);

/// Clock variable of the step process i is currently in.
Variable active_clock(const GlobalState& q, int process);

}  // namespace dpa
