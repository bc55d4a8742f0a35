#include "dpa/zone_tree.hpp"

#include <deque>

#include "dpa/errors.hpp"

namespace dpa {

Variable active_clock(const GlobalState& q, int process) {
    const ProcState& ps = q.procs[static_cast<std::size_t>(process - 1)];
    if (!ps.active) throw AnalysisError("process has no active clock");
    return Variable::clock(process, ps.done + 1);
}

Polytope post_time(const DpaModel& m, const GlobalState& q, const Polytope& zone) {
    const Variable tau = Variable::auxiliary();
    Polytope swept = zone.with_variables({tau});
    std::vector<Variable> flowing;
    for (int i : q.active_processes()) flowing.push_back(active_clock(q, i));
    if (m.absolute_time_clock) flowing.push_back(Variable::absolute_time());
    for (const auto& x : flowing)
        swept = swept.substituted(x, AffineForm::var(x) - AffineForm::var(tau));
    swept = swept.intersect(Constraint::le(-AffineForm::var(tau)));  // tau >= 0
    swept = swept.eliminate(tau);
    std::vector<Constraint> caps;
    for (int i : q.active_processes()) {
        const Step& s = m.step(i, q.procs[static_cast<std::size_t>(i - 1)].done + 1);
        caps.push_back(Constraint::le(AffineForm::var(active_clock(q, i)) - AffineForm(s.hi)));
    }
    return swept.intersect(caps);
}

SymbolicNode post_start(const DpaModel& m, const SymbolicNode& s, const std::vector<Event>& starts) {
    SymbolicNode child;
    child.q = apply_start(m, s.q, starts);
    child.h = s.h;
    child.h.insert(child.h.end(), starts.begin(), starts.end());
    child.label = starts;
    child.boundary_only = s.boundary_only;
    Polytope z = s.zone;
    std::set<Variable> fresh;
    std::vector<Constraint> pins;
    for (const auto& e : starts) {
        const Variable x = Variable::clock(e.process, e.step);
        fresh.insert(x);
        pins.push_back(Constraint::eq(AffineForm::var(x)));  // x = 0
    }
    child.zone = z.with_variables(fresh).intersect(pins);
    return child;
}

SymbolicNode post_end(const DpaModel& m, const SymbolicNode& s, int process) {
    const ProcState& ps = s.q.procs[static_cast<std::size_t>(process - 1)];
    if (!ps.active) throw AnalysisError("post_end: process not active");
    const int step_idx = ps.done + 1;
    const Variable x = Variable::clock(process, step_idx);
    const Step& st = m.step(process, step_idx);

    SymbolicNode child;
    child.q = apply_end(m, s.q, process);
    child.h = s.h;
    child.h.push_back(Event{process, step_idx, false});
    child.label = {Event{process, step_idx, false}};

    const Polytope flowed = post_time(m, s.q, s.zone);
    const std::vector<Constraint> guard{
        Constraint::le(AffineForm(st.lo) - AffineForm::var(x)),
        Constraint::le(AffineForm::var(x) - AffineForm(st.hi))};
    const Polytope guarded = flowed.intersect(guard);
    child.boundary_only =
        s.boundary_only || (!guarded.is_empty() && guarded.dimension() < flowed.dimension());
    child.zone = guarded.is_empty() ? guarded : guarded.eliminate(x);
    return child;
}

SymbolicTree build_tree(const DpaModel& m, int horizon) {
    if (horizon < 0) horizon = m.total_events();
    SymbolicTree tree;
    SymbolicNode root;
    root.q = m.initial_state();
    if (m.absolute_time_clock) {
        root.zone = Polytope({Variable::absolute_time()})
                        .intersect(Constraint::eq(AffineForm::var(Variable::absolute_time())));
    }
    tree.nodes.push_back(std::move(root));
    std::deque<int> queue{0};
    while (!queue.empty()) {
        const int idx = queue.front();
        queue.pop_front();
        if (static_cast<int>(tree.nodes[static_cast<std::size_t>(idx)].h.size()) >= horizon)
            continue;
        const SymbolicNode node = tree.nodes[static_cast<std::size_t>(idx)];  // copy: vector grows
        const Transitions trans = product_successors(m, node.q);
        std::vector<SymbolicNode> children;
        if (!trans.compound_start.empty()) {
            children.push_back(post_start(m, node, trans.compound_start));
        } else {
            for (const auto& e : trans.ends) {
                SymbolicNode child = post_end(m, node, e.process);
                if (!child.zone.is_empty()) children.push_back(std::move(child));
            }
        }
        for (auto& child : children) {
            child.parent = idx;
            const int cidx = static_cast<int>(tree.nodes.size());
            tree.nodes[static_cast<std::size_t>(idx)].children.push_back(cidx);
            tree.nodes.push_back(std::move(child));
            queue.push_back(cidx);
        }
    }
    return tree;
}

}  // namespace dpa
