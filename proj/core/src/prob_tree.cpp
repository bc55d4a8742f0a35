#include "dpa/prob_tree.hpp"

#include <algorithm>
#include <deque>

#include "dpa/errors.hpp"
#include "dpa/zone_tree.hpp"

namespace dpa {

namespace {

std::vector<Variable> flowing_clocks(const DpaModel& m, const GlobalState& q) {
    std::vector<Variable> xs;
    for (int i : q.active_processes()) xs.push_back(active_clock(q, i));
    if (m.absolute_time_clock) xs.push_back(Variable::absolute_time());
    return xs;
}

}  // namespace

PiecewiseDensity dt_start(const DpaModel& m, const PiecewiseDensity& psi,
                          const std::vector<Event>& starts) {
    std::vector<UniformFactor> factors;
    std::vector<Constraint> pins;
    std::set<Variable> clocks;
    for (const auto& e : starts) {
        const Step& s = m.step(e.process, e.step);
        factors.push_back(UniformFactor{Variable::duration(e.process, e.step), s.lo, s.hi});
        const Variable x = Variable::clock(e.process, e.step);
        clocks.insert(x);
        pins.push_back(Constraint::eq(AffineForm::var(x)));
    }
    PiecewiseDensity extended = psi.scale_and_extend(factors);
    // pin the fresh clocks to zero
    PiecewiseDensity out(
        [&] {
            std::set<Variable> vs = extended.variables();
            vs.insert(clocks.begin(), clocks.end());
            return vs;
        }());
    for (const auto& piece : extended.pieces()) {
        Polytope dom = piece.domain.with_variables(clocks).intersect(pins);
        if (auto p = Piece::make(std::move(dom), piece.value)) out.accumulate(std::move(*p));
    }
    return out;
}

PiecewiseDensity dt_race(const DpaModel& m, const GlobalState& q, const PiecewiseDensity& psi,
                         int winner) {
    std::set<Variable> shifted;
    for (const auto& x : flowing_clocks(m, q)) shifted.insert(x);
    std::vector<Constraint> extra;
    const Variable xw = active_clock(q, winner);
    const Variable yw =
        Variable::duration(winner, q.procs[static_cast<std::size_t>(winner - 1)].done + 1);
    extra.push_back(Constraint::eq(AffineForm::var(xw) - AffineForm::var(yw)));
    for (int j : q.active_processes()) {
        if (j == winner) continue;
        const Variable xj = active_clock(q, j);
        const Variable yj =
            Variable::duration(j, q.procs[static_cast<std::size_t>(j - 1)].done + 1);
        extra.push_back(Constraint::le(AffineForm::var(xj) - AffineForm::var(yj)));
    }
    return psi.shift_integrate(shifted, extra);
}

PiecewiseDensity dt_deactivate(const PiecewiseDensity& psi, int process, int step) {
    return psi.integrate_out(Variable::clock(process, step))
        .integrate_out(Variable::duration(process, step));
}

namespace {

Polytope root_support(const DpaModel& m) {
    if (!m.absolute_time_clock) return Polytope();
    return Polytope({Variable::absolute_time()})
        .intersect(Constraint::eq(AffineForm::var(Variable::absolute_time())));
}

PiecewiseDensity root_density(const DpaModel& m) {
    if (!m.absolute_time_clock) return PiecewiseDensity::unit();
    PiecewiseDensity d({Variable::absolute_time()});
    d.accumulate(Piece{root_support(m), Polynomial(Rational(1))});
    return d;
}

// Mirrors the transformers on the single convex support polytope.
Polytope support_start(const DpaModel& m, const Polytope& s, const std::vector<Event>& starts) {
    std::set<Variable> fresh;
    std::vector<Constraint> cs;
    for (const auto& e : starts) {
        const Step& st = m.step(e.process, e.step);
        const Variable x = Variable::clock(e.process, e.step);
        const Variable y = Variable::duration(e.process, e.step);
        fresh.insert(x);
        fresh.insert(y);
        cs.push_back(Constraint::eq(AffineForm::var(x)));
        cs.push_back(Constraint::le(AffineForm(st.lo) - AffineForm::var(y)));
        cs.push_back(Constraint::le(AffineForm::var(y) - AffineForm(st.hi)));
    }
    return s.with_variables(fresh).intersect(cs);
}

Polytope support_race(const DpaModel& m, const GlobalState& q, const Polytope& s, int winner) {
    const Variable tau = Variable::auxiliary();
    Polytope r = s.with_variables({tau});
    for (const auto& x : flowing_clocks(m, q))
        r = r.substituted(x, AffineForm::var(x) - AffineForm::var(tau));
    std::vector<Constraint> cs;
    cs.push_back(Constraint::le(-AffineForm::var(tau)));
    const Variable xw = active_clock(q, winner);
    const Variable yw =
        Variable::duration(winner, q.procs[static_cast<std::size_t>(winner - 1)].done + 1);
    cs.push_back(Constraint::eq(AffineForm::var(xw) - AffineForm::var(yw)));
    for (int j : q.active_processes()) {
        if (j == winner) continue;
        cs.push_back(Constraint::le(
            AffineForm::var(active_clock(q, j)) -
            AffineForm::var(Variable::duration(j, q.procs[static_cast<std::size_t>(j - 1)].done + 1))));
    }
    return r.intersect(cs).eliminate(tau);
}

}  // namespace

ProbTree build_prob_tree(const DpaModel& m, const Rational& prune_eps) {
    if (prune_eps < 0 || prune_eps >= 1)
        throw AnalysisError("prune_eps must lie in [0, 1)");
    ProbTree tree;
    tree.discarded_mass = Rational(0);
    ProbNode root;
    root.q = m.initial_state();
    root.support = root_support(m);
    root.psi = root_density(m);
    root.prob = Rational(1);
    root.complete = m.is_final(root.q);
    tree.nodes.push_back(std::move(root));
    std::deque<int> queue{0};
    while (!queue.empty()) {
        const int idx = queue.front();
        queue.pop_front();
        const ProbNode node = tree.nodes[static_cast<std::size_t>(idx)];  // copy: vector grows
        tree.max_pieces = std::max(tree.max_pieces, static_cast<int>(node.psi.pieces().size()));
        tree.max_degree = std::max(tree.max_degree, node.psi.max_degree());
        if (node.complete) continue;
        const Transitions trans = product_successors(m, node.q);
        std::vector<ProbNode> children;
        if (!trans.compound_start.empty()) {
            ProbNode child;
            child.q = apply_start(m, node.q, trans.compound_start);
            child.h = node.h;
            child.h.insert(child.h.end(), trans.compound_start.begin(),
                           trans.compound_start.end());
            child.label = trans.compound_start;
            child.psi = dt_start(m, node.psi, trans.compound_start);
            child.support = support_start(m, node.support, trans.compound_start);
            child.prob = node.prob;  // start transformers preserve mass
            children.push_back(std::move(child));
        } else {
            for (const auto& e : trans.ends) {
                PiecewiseDensity raced = dt_race(m, node.q, node.psi, e.process);
                if (raced.is_zero()) continue;  // infeasible ordering
                ProbNode child;
                child.q = apply_end(m, node.q, e.process);
                child.h = node.h;
                child.h.push_back(e);
                child.label = {e};
                child.psi = dt_deactivate(raced, e.process, e.step);
                child.support =
                    support_race(m, node.q, node.support, e.process)
                        .eliminate(Variable::clock(e.process, e.step))
                        .eliminate(Variable::duration(e.process, e.step));
                child.prob = child.psi.mass();
                if (child.prob < prune_eps) {
                    tree.discarded_mass += child.prob;
                    continue;
                }
                children.push_back(std::move(child));
            }
        }
        for (auto& child : children) {
            child.parent = idx;
            child.complete = m.is_final(child.q);
            const int cidx = static_cast<int>(tree.nodes.size());
            tree.nodes[static_cast<std::size_t>(idx)].children.push_back(cidx);
            tree.nodes.push_back(std::move(child));
            queue.push_back(cidx);
        }
    }
    return tree;
}

Rational history_probability(const ProbTree& tree, const DpaModel& m, const History& h) {
    for (const auto& node : tree.nodes)
        if (node.h == h) return node.prob;
    throw AnalysisError("history not found: " + m.history_label(h));
}

Rational event_precedes(const ProbTree& tree, const DpaModel& m, const Event& a, const Event& b) {
    auto known = [&](const Event& e) {
        return e.process >= 1 && e.process <= m.process_count() && e.step >= 1 &&
               e.step <= m.step_count(e.process);
    };
    if (!known(a) || !known(b)) throw AnalysisError("unknown event in precedence query");
    Rational total(0);
    for (const auto& node : tree.nodes) {
        if (!node.complete) continue;
        std::ptrdiff_t ia = -1, ib = -1;
        for (std::size_t k = 0; k < node.h.size(); ++k) {
            if (node.h[k] == a && ia < 0) ia = static_cast<std::ptrdiff_t>(k);
            if (node.h[k] == b && ib < 0) ib = static_cast<std::ptrdiff_t>(k);
        }
        if (ia < 0) continue;                    // a absent: contributes zero
        if (ib >= 0 && ib < ia) continue;        // b first
        total += node.prob;                      // a first, or b absent
    }
    return total;
}

Rational MakespanResult::cdf_at(const Rational& t) const {
    if (cdf.empty() || t < cdf.front().lo) return Rational(0);
    for (const auto& piece : cdf) {
        if (t <= piece.hi) {
            if (t < piece.lo) return piece.poly.evaluate({{Variable::absolute_time(), piece.lo}});
            return piece.poly.evaluate({{Variable::absolute_time(), t}});
        }
    }
    return Rational(1);
}

MakespanResult makespan(const ProbTree& tree, const DpaModel& m) {
    if (!m.absolute_time_clock)
        throw AnalysisError("unsupported query: makespan needs options.absolute_time_clock");
    const Variable t = Variable::absolute_time();
    PiecewiseDensity total({t});
    for (const auto& node : tree.nodes) {
        if (!node.complete) continue;
        if (node.psi.variables() != std::set<Variable>{t})
            throw AnalysisError("complete leaf density is not an absolute-time marginal");
        for (const auto& piece : node.psi.pieces()) total.accumulate(piece);
    }
    MakespanResult r;
    r.density = total;
    r.total_mass = total.mass();
    if (total.is_zero() || r.total_mass == 0)
        throw AnalysisError("makespan: no reachable complete state");

    // order the one-dimensional pieces and accumulate the antiderivative
    struct Seg {
        Rational lo, hi;
        Polynomial poly;
    };
    std::vector<Seg> segs;
    for (const auto& piece : total.pieces()) {
        const auto iv = piece.domain.range(t);
        if (!iv.lo || !iv.hi) throw AnalysisError("makespan support is unbounded");
        segs.push_back(Seg{*iv.lo, *iv.hi, piece.value});
    }
    std::sort(segs.begin(), segs.end(), [](const Seg& a, const Seg& b) { return a.lo < b.lo; });
    r.lo = segs.front().lo;
    r.hi = segs.front().hi;
    Rational cum(0);
    Rational expectation(0);
    const Rational inv_mass = Rational(1) / r.total_mass;
    for (const auto& seg : segs) {
        if (r.hi < seg.hi) r.hi = seg.hi;
        const Polynomial anti = seg.poly.antiderivative(t);
        const Rational at_lo = anti.evaluate({{t, seg.lo}});
        const Rational at_hi = anti.evaluate({{t, seg.hi}});
        Polynomial cdf_poly = anti * inv_mass;
        cdf_poly += Polynomial((cum - at_lo) * inv_mass);
        r.cdf.push_back(MakespanResult::CdfPiece{seg.lo, seg.hi, std::move(cdf_poly)});
        cum += at_hi - at_lo;
        const Polynomial t_rho = seg.poly * Polynomial::var(t);
        const Polynomial anti_t = t_rho.antiderivative(t);
        expectation += anti_t.evaluate({{t, seg.hi}}) - anti_t.evaluate({{t, seg.lo}});
    }
    r.expectation = expectation * inv_mass;
    return r;
}

}  // namespace dpa
