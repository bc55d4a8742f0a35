#include "dpa/density.hpp"

#include <algorithm>
#include <deque>

#include "dpa/errors.hpp"

namespace dpa {

namespace {

Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// Splits minuend \ subtrahend into closed parts with pairwise-disjoint
// interiors, also disjoint from the subtrahend. Assumes subtrahend is a
// full-dimensional subset of minuend with the same pin structure, so only
// its inequality rows cut.
std::vector<Polytope> subtract(const Polytope& minuend, const Polytope& subtrahend) {
    std::vector<Polytope> parts;
    std::vector<Constraint> prefix;
    for (const auto& row : subtrahend.inequalities()) {
        Polytope part = minuend.intersect(prefix).intersect(Constraint::le(-row));
        if (!part.is_empty() && part.dimension() == minuend.dimension() && !part.was_degenerate())
            parts.push_back(std::move(part));
        prefix.push_back(Constraint::le(row));
    }
    return parts;
}

}  // namespace

std::optional<Piece> Piece::make(Polytope domain, Polynomial value) {
    if (domain.is_empty() || domain.was_degenerate()) return std::nullopt;
    for (bool reduced = false; !reduced;) {
        reduced = true;
        for (const auto& v : value.variables()) {
            if (auto it = domain.pins().find(v); it != domain.pins().end()) {
                value = value.substituted(v, it->second);
                reduced = false;
            }
        }
    }
    if (value.is_zero()) return std::nullopt;
    return Piece{std::move(domain), std::move(value)};
}

PiecewiseDensity PiecewiseDensity::unit() {
    PiecewiseDensity d;
    d.pieces_.push_back(Piece{Polytope(), Polynomial(Rational(1))});
    return d;
}

namespace {

// Integrates one piece over v. Three shapes:
//  - v pinned: the point mass collapses, the pin is dropped.
//  - v free but referenced by a pin (w := c*v + g): the Dirac line is
//    re-parameterized onto w, value picks up the 1/|c| change of measure.
//  - v free and unreferenced: parametric integration; the projected domain
//    splits into chambers on which one (lower, upper) bound pair is active.
std::vector<Piece> integrate_piece(const Piece& piece, const Variable& v) {
    std::vector<Piece> out;
    const Polytope& dom = piece.domain;
    if (dom.is_pinned(v)) {
        if (auto p = Piece::make(dom.eliminate(v), piece.value)) out.push_back(std::move(*p));
        return out;
    }
    for (const auto& [w, rhs] : dom.pins()) {
        const Rational c = rhs.coefficient(v);
        if (c == 0) continue;
        AffineForm rest = rhs;
        rest.set_coefficient(v, Rational(0));
        const AffineForm v_expr = (AffineForm::var(w) - rest) * (Rational(1) / c);
        Polynomial val = piece.value.substituted(v, v_expr);
        val *= Rational(1) / rational_abs(c);
        if (auto p = Piece::make(dom.eliminate(v), std::move(val))) out.push_back(std::move(*p));
        return out;
    }
    const Polytope::Bounds bounds = dom.bounds_of(v);
    if (bounds.lower.empty() || bounds.upper.empty())
        throw GeometryError("non-integrable: " + v.name() + " unbounded on a nonzero piece");
    const Polytope projected = dom.eliminate(v);
    const Polynomial anti = piece.value.antiderivative(v);
    for (const auto& lo : bounds.lower) {
        for (const auto& hi : bounds.upper) {
            std::vector<Constraint> active;
            for (const auto& other : bounds.lower)
                if (other != lo) active.push_back(Constraint::le(other - lo));
            for (const auto& other : bounds.upper)
                if (other != hi) active.push_back(Constraint::le(hi - other));
            Polytope chamber = projected.intersect(active);
            Polynomial val = anti.substituted(v, hi) - anti.substituted(v, lo);
            if (auto p = Piece::make(std::move(chamber), std::move(val))) out.push_back(std::move(*p));
        }
    }
    return out;
}

Rational piece_mass(const Piece& piece) {
    const std::vector<Variable> free = piece.domain.free_variables();
    if (free.empty()) return piece.value.constant_value();
    // Dirac-linked variables collapse without splitting; take those first.
    Variable pick = free.front();
    long best_cost = -1;
    for (const auto& v : free) {
        bool referenced = false;
        for (const auto& [w, rhs] : piece.domain.pins())
            referenced = referenced || rhs.coefficient(v) != 0;
        long cost = 0;
        if (!referenced) {
            const auto b = piece.domain.bounds_of(v);
            cost = 1 + static_cast<long>(b.lower.size()) * static_cast<long>(b.upper.size());
        }
        if (best_cost < 0 || cost < best_cost) {
            best_cost = cost;
            pick = v;
        }
    }
    Rational total(0);
    for (const auto& p : integrate_piece(piece, pick)) total += piece_mass(p);
    return total;
}

}  // namespace

PiecewiseDensity PiecewiseDensity::integrate_out(const Variable& v) const {
    if (!vars_.contains(v)) throw GeometryError("integrate_out: unknown variable " + v.name());
    std::set<Variable> vars = vars_;
    vars.erase(v);
    PiecewiseDensity result(std::move(vars));
    for (const auto& piece : pieces_)
        for (auto& out : integrate_piece(piece, v)) result.accumulate(std::move(out));
    result.sort_pieces();
    return result;
}

PiecewiseDensity PiecewiseDensity::shift_integrate(const std::set<Variable>& shifted,
                                                   std::span<const Constraint> extra) const {
    const Variable tau = Variable::auxiliary();
    if (vars_.contains(tau)) throw GeometryError("shift_integrate: tau already in scope");
    for (const auto& s : shifted)
        if (!vars_.contains(s)) throw GeometryError("shift_integrate: unknown variable " + s.name());
    std::set<Variable> mid_vars = vars_;
    mid_vars.insert(tau);
    PiecewiseDensity mid(mid_vars);
    std::vector<Constraint> cs;
    cs.push_back(Constraint::le(-AffineForm::var(tau)));  // tau >= 0
    cs.insert(cs.end(), extra.begin(), extra.end());
    for (const auto& piece : pieces_) {
        Polytope dom = piece.domain.with_variables({tau});
        Polynomial val = piece.value;
        for (const auto& s : shifted) {
            const AffineForm moved = AffineForm::var(s) - AffineForm::var(tau);
            dom = dom.substituted(s, moved);
            val = val.substituted(s, moved);
        }
        dom = dom.intersect(cs);
        if (auto p = Piece::make(std::move(dom), std::move(val))) mid.accumulate(std::move(*p));
    }
    mid.sort_pieces();
    return mid.integrate_out(tau);
}

PiecewiseDensity PiecewiseDensity::scale_and_extend(std::span<const UniformFactor> factors) const {
    std::set<Variable> vars = vars_;
    Rational scale(1);
    std::set<Variable> fresh;
    std::vector<Constraint> box;
    for (const auto& f : factors) {
        if (vars.contains(f.var) || fresh.contains(f.var))
            throw GeometryError("scale_and_extend: variable not fresh: " + f.var.name());
        if (!(f.lo < f.hi))
            throw GeometryError("scale_and_extend: invalid support for " + f.var.name());
        fresh.insert(f.var);
        scale *= Rational(1) / Rational(f.hi - f.lo);
        box.push_back(Constraint::le(AffineForm(f.lo) - AffineForm::var(f.var)));
        box.push_back(Constraint::le(AffineForm::var(f.var) - AffineForm(f.hi)));
    }
    vars.insert(fresh.begin(), fresh.end());
    PiecewiseDensity result(std::move(vars));
    for (const auto& piece : pieces_) {
        Polytope dom = piece.domain.with_variables(fresh).intersect(box);
        if (auto p = Piece::make(std::move(dom), piece.value * scale))
            result.pieces_.push_back(std::move(*p));
    }
    result.sort_pieces();
    return result;
}

PiecewiseDensity PiecewiseDensity::restricted(std::span<const Constraint> extra) const {
    PiecewiseDensity result(vars_);
    for (const auto& piece : pieces_) {
        if (auto p = Piece::make(piece.domain.intersect(extra), piece.value))
            result.pieces_.push_back(std::move(*p));
    }
    result.sort_pieces();
    return result;
}

Rational PiecewiseDensity::mass() const {
    Rational total(0);
    for (const auto& piece : pieces_) total += piece_mass(piece);
    return total;
}

void PiecewiseDensity::accumulate(Piece p) {
    if (p.domain.variables() != vars_)
        throw GeometryError("accumulate: piece variables differ from density variables");
    if (p.domain.is_empty() || p.value.is_zero()) return;
    if (!pieces_.empty()) {
        const Polytope& ref = pieces_.front().domain;
        if (p.domain.dimension() != ref.dimension())
            throw GeometryError("accumulate: mixed piece dimensions");
        auto pin_keys = [](const Polytope& q) {
            std::set<Variable> keys;
            for (const auto& [v, rhs] : q.pins()) keys.insert(v);
            return keys;
        };
        if (pin_keys(p.domain) != pin_keys(ref))
            throw GeometryError("accumulate: mixed pin patterns");
    }
    std::deque<Piece> incoming;
    incoming.push_back(std::move(p));
    while (!incoming.empty()) {
        Piece part = std::move(incoming.front());
        incoming.pop_front();
        bool merged = false;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const Piece& q = pieces_[i];
            Polytope overlap = part.domain.intersect(q.domain.constraints());
            if (overlap.is_empty() || overlap.dimension() != part.domain.dimension() ||
                overlap.was_degenerate())
                continue;
            // full-dimensional overlap: split q, add values on the overlap,
            // push the remainder of the incoming part back to the queue
            std::vector<Piece> replacement;
            for (auto& qp : subtract(q.domain, overlap)) {
                if (auto piece2 = Piece::make(std::move(qp), q.value))
                    replacement.push_back(std::move(*piece2));
            }
            if (auto piece2 = Piece::make(overlap, q.value + part.value))
                replacement.push_back(std::move(*piece2));
            for (auto& pp : subtract(part.domain, overlap)) {
                if (auto piece2 = Piece::make(std::move(pp), part.value))
                    incoming.push_back(std::move(*piece2));
            }
            pieces_.erase(pieces_.begin() + static_cast<std::ptrdiff_t>(i));
            pieces_.insert(pieces_.end(), std::make_move_iterator(replacement.begin()),
                           std::make_move_iterator(replacement.end()));
            merged = true;
            break;
        }
        if (!merged) pieces_.push_back(std::move(part));
    }
}

int PiecewiseDensity::max_degree() const {
    int d = 0;
    for (const auto& p : pieces_) d = std::max(d, p.value.total_degree());
    return d;
}

void PiecewiseDensity::sort_pieces() {
    std::sort(pieces_.begin(), pieces_.end(), [](const Piece& a, const Piece& b) {
        if (auto c = a.domain <=> b.domain; c != 0) return c < 0;
        return (a.value <=> b.value) < 0;
    });
}

Rational volume(const Polytope& p) {
    if (p.is_empty()) return Rational(0);
    return piece_mass(Piece{p, Polynomial(Rational(1))});
}

bool subset_of(const Polytope& inner, const Polytope& outer) {
    if (inner.is_empty()) return true;
    return inner.intersect(outer.constraints()) == inner;
}

}  // namespace dpa
