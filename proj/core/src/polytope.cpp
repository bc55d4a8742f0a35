#include "dpa/polytope.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>

#include "dpa/errors.hpp"

namespace dpa {

namespace {

// Internal feasibility rows. key: coefficient map scaled to integral gcd-1
// (positive scaling only, so direction is preserved); value: the tightest
// (constant, strict) pair seen for that direction. Row meaning:
// coeffs . x + constant <= 0 (or < 0 when strict).
using CoeffMap = std::map<Variable, Rational>;

struct RowSet {
    std::map<CoeffMap, std::pair<Rational, bool>> rows;
    bool infeasible = false;

    void insert(const AffineForm& f, bool strict) {
        if (infeasible) return;
        if (f.is_constant()) {
            const Rational& c = f.constant();
            if (c > 0 || (strict && c == 0)) infeasible = true;
            return;
        }
        Integer lcm_den = 1;
        for (const auto& [v, c] : f.coefficients())
            mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
        Integer gcd_num = 0;
        for (const auto& [v, c] : f.coefficients()) {
            Integer scaled = c.get_num() * (lcm_den / c.get_den());
            mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), scaled.get_mpz_t());
        }
        Rational scale(lcm_den, gcd_num);
        scale.canonicalize();
        CoeffMap key;
        for (const auto& [v, c] : f.coefficients()) key.emplace(v, c * scale);
        Rational c0 = f.constant() * scale;
        auto [it, fresh] = rows.try_emplace(std::move(key), std::make_pair(c0, strict));
        if (!fresh) {
            auto& [c1, s1] = it->second;
            if (c0 > c1)
                it->second = {std::move(c0), strict};
            else if (c0 == c1)
                s1 = s1 || strict;
        }
    }
};

AffineForm row_form(const CoeffMap& coeffs, const Rational& constant) {
    AffineForm f(constant);
    for (const auto& [v, c] : coeffs) f.set_coefficient(v, c);
    return f;
}

constexpr std::size_t kRowBlowupLimit = 200000;

// Exact rational feasibility by Fourier-Motzkin elimination with
// per-direction tightening. Handles mixed strict/non-strict rows.
bool fm_feasible(RowSet rs) {
    while (true) {
        if (rs.infeasible) return false;
        if (rs.rows.empty()) return true;

        // count bound rows per variable, pick the cheapest to eliminate
        std::map<Variable, std::pair<int, int>> counts;  // lowers, uppers
        for (const auto& [coeffs, cs] : rs.rows)
            for (const auto& [v, c] : coeffs)
                (c < 0 ? counts[v].first : counts[v].second)++;
        Variable best = counts.begin()->first;
        long best_cost = -1;
        for (const auto& [v, lu] : counts) {
            const long cost = static_cast<long>(lu.first) * lu.second;
            if (best_cost < 0 || cost < best_cost) {
                best_cost = cost;
                best = v;
            }
        }

        RowSet next;
        std::vector<std::pair<AffineForm, bool>> lowers, uppers;
        for (const auto& [coeffs, cs] : rs.rows) {
            auto it = coeffs.find(best);
            if (it == coeffs.end()) {
                next.insert(row_form(coeffs, cs.first), cs.second);
                continue;
            }
            auto& side = (it->second < 0) ? lowers : uppers;
            side.emplace_back(row_form(coeffs, cs.first), cs.second);
        }
        if (best_cost > 0) {
            for (const auto& [lf, ls] : lowers) {
                const Rational la = -lf.coefficient(best);  // > 0
                for (const auto& [uf, us] : uppers) {
                    const Rational ua = uf.coefficient(best);  // > 0
                    AffineForm combined = lf * ua + uf * la;
                    next.insert(combined, ls || us);
                    if (next.infeasible) return false;
                    if (next.rows.size() > kRowBlowupLimit)
                        throw GeometryError("feasibility elimination blow-up");
                }
            }
        }
        rs = std::move(next);
    }
}

RowSet make_rowset(const std::vector<AffineForm>& rows, bool strict) {
    RowSet rs;
    for (const auto& f : rows) rs.insert(f, strict);
    return rs;
}

}  // namespace

Polytope Polytope::from_constraints(std::set<Variable> vars, std::span<const Constraint> cs) {
    return Polytope(std::move(vars)).intersect(cs);
}

std::vector<Variable> Polytope::free_variables() const {
    std::vector<Variable> fv;
    for (const auto& v : vars_)
        if (!pins_.contains(v)) fv.push_back(v);
    return fv;
}

void Polytope::mark_empty() {
    empty_ = true;
    pins_.clear();
    ineqs_.clear();
}

void Polytope::canonicalize(std::vector<AffineForm> eq_rows) {
    if (empty_) return mark_empty();
    while (true) {
        // Reduced echelon form of the equality system: pivot on the leading
        // (largest) variable of each row, fully back-substituted. Unique for
        // a given row span and variable order.
        std::vector<AffineForm> rows;
        rows.reserve(pins_.size() + eq_rows.size());
        for (const auto& [v, rhs] : pins_) rows.push_back(AffineForm::var(v) - rhs);
        for (auto& r : eq_rows) rows.push_back(std::move(r));
        eq_rows.clear();
        std::sort(rows.begin(), rows.end());
        pins_.clear();
        for (auto row : rows) {
            for (bool reduced = false; !reduced;) {
                reduced = true;
                for (const auto& [pv, rhs] : pins_) {
                    if (row.coefficient(pv) != 0) {
                        row = row.substituted(pv, rhs);
                        reduced = false;
                    }
                }
            }
            if (row.is_constant()) {
                if (row.constant() != 0) return mark_empty();
                continue;
            }
            const Variable v = *row.leading_var();
            const Rational a = row.coefficient(v);
            AffineForm rhs = row;
            rhs.set_coefficient(v, Rational(0));
            rhs *= Rational(-1) / a;
            for (auto& [w, f] : pins_) f = f.substituted(v, rhs);
            pins_.emplace(v, std::move(rhs));
        }

        // Substitute pins into the inequalities, tighten parallel rows.
        RowSet rs;
        for (auto f : ineqs_) {
            for (bool reduced = false; !reduced;) {
                reduced = true;
                for (const auto& [pv, rhs] : pins_) {
                    if (f.coefficient(pv) != 0) {
                        f = f.substituted(pv, rhs);
                        reduced = false;
                    }
                }
            }
            rs.insert(f, false);
        }
        if (rs.infeasible) return mark_empty();
        std::vector<AffineForm> work;
        work.reserve(rs.rows.size());
        for (const auto& [coeffs, cs] : rs.rows) work.push_back(row_form(coeffs, cs.first));
        std::sort(work.begin(), work.end());

        if (!work.empty() && !fm_feasible(make_rowset(work, false))) return mark_empty();

        // Promote implicit equalities so the free space is full-dimensional.
        if (!fm_feasible(make_rowset(work, true))) {
            bool promoted = false;
            for (std::size_t i = 0; i < work.size() && !promoted; ++i) {
                RowSet probe;
                for (std::size_t j = 0; j < work.size(); ++j) probe.insert(work[j], i == j);
                if (!fm_feasible(std::move(probe))) {
                    promoted_ = true;
                    promoted = true;
                    eq_rows.push_back(work[i]);
                }
            }
            if (promoted) {
                ineqs_ = std::move(work);
                continue;  // refold with the new equality
            }
        }

        // Drop rows implied by the others; for a full-dimensional system the
        // surviving facet set is unique.
        for (std::size_t i = 0; i < work.size();) {
            RowSet probe;
            for (std::size_t j = 0; j < work.size(); ++j) {
                if (j == i) continue;
                probe.insert(work[j], false);
            }
            probe.insert(-work[i], true);  // does any point violate row i?
            if (!fm_feasible(std::move(probe)))
                work.erase(work.begin() + static_cast<std::ptrdiff_t>(i));
            else
                ++i;
        }

        for (auto& f : work) f.normalize_integral();
        std::sort(work.begin(), work.end());
        ineqs_ = std::move(work);
        return;
    }
}

Polytope Polytope::intersect(std::span<const Constraint> cs) const {
    Polytope r = *this;
    r.promoted_ = false;
    if (r.empty_) return r;
    std::vector<AffineForm> eq_rows;
    for (const auto& c : cs) {
        for (const auto& [v, coeff] : c.form.coefficients())
            if (!vars_.contains(v))
                throw GeometryError("malformed constraint: unknown variable " + v.name());
        if (c.equality)
            eq_rows.push_back(c.form);
        else
            r.ineqs_.push_back(c.form);
    }
    r.canonicalize(std::move(eq_rows));
    return r;
}

Polytope Polytope::eliminate(const Variable& v) const {
    if (!vars_.contains(v)) throw GeometryError("eliminate: unknown variable " + v.name());
    Polytope r = *this;
    r.promoted_ = false;
    r.vars_.erase(v);
    if (r.empty_) return r;
    if (auto it = r.pins_.find(v); it != r.pins_.end()) {
        r.pins_.erase(it);
    } else {
        bool referenced = false;
        for (const auto& [w, f] : r.pins_) referenced = referenced || f.coefficient(v) != 0;
        if (referenced) {
            r.vars_.insert(v);
            r.repivot_to_pin(v);
            r.pins_.erase(v);
            r.vars_.erase(v);
        } else {
            // Fourier-Motzkin on the inequality rows
            std::vector<AffineForm> keep, lowers, uppers;
            for (const auto& f : r.ineqs_) {
                const Rational a = f.coefficient(v);
                if (a == 0)
                    keep.push_back(f);
                else if (a < 0)
                    lowers.push_back(f);
                else
                    uppers.push_back(f);
            }
            for (const auto& lf : lowers) {
                const Rational la = -lf.coefficient(v);
                for (const auto& uf : uppers) keep.push_back(lf * uf.coefficient(v) + uf * la);
            }
            r.ineqs_ = std::move(keep);
        }
    }
    r.canonicalize({});
    return r;
}

// Re-expresses the equality system so that free variable v becomes a pin.
// The intermediate pin may order v below its right-hand side; callers drop
// v immediately and re-canonicalize.
void Polytope::repivot_to_pin(const Variable& v) {
    const AffineForm* src = nullptr;
    Variable pivot{};
    for (const auto& [w, f] : pins_) {
        if (f.coefficient(v) != 0) {
            src = &f;
            pivot = w;
            break;  // pins_ is ordered: first hit is the smallest
        }
    }
    if (!src) throw GeometryError("repivot: variable not referenced " + v.name());
    const Rational c = src->coefficient(v);
    AffineForm rest = *src;
    rest.set_coefficient(v, Rational(0));
    AffineForm new_rhs = (AffineForm::var(pivot) - rest) * (Rational(1) / c);
    pins_.erase(pivot);
    for (auto& [w, f] : pins_) f = f.substituted(v, new_rhs);
    for (auto& f : ineqs_) f = f.substituted(v, new_rhs);
    pins_.emplace(v, std::move(new_rhs));
}

Polytope Polytope::substituted(const Variable& v, const AffineForm& f) const {
    if (!vars_.contains(v)) throw GeometryError("substitute: unknown variable " + v.name());
    Polytope r;
    r.vars_ = vars_;
    r.empty_ = empty_;
    for (const auto& [w, c] : f.coefficients()) r.vars_.insert(w);
    if (r.empty_) return r;
    std::vector<AffineForm> eq_rows;
    for (const auto& [w, rhs] : pins_)
        eq_rows.push_back((AffineForm::var(w) - rhs).substituted(v, f));
    for (const auto& g : ineqs_) r.ineqs_.push_back(g.substituted(v, f));
    r.canonicalize(std::move(eq_rows));
    return r;
}

Polytope Polytope::with_variables(const std::set<Variable>& added) const {
    Polytope r = *this;
    r.promoted_ = false;
    r.vars_.insert(added.begin(), added.end());
    return r;
}

Polytope Polytope::project_onto(const std::set<Variable>& keep) const {
    for (const auto& v : keep)
        if (!vars_.contains(v)) throw GeometryError("project: unknown variable " + v.name());
    Polytope r = *this;
    r.promoted_ = false;
    std::vector<Variable> drop;
    for (const auto& v : vars_)
        if (!keep.contains(v)) drop.push_back(v);
    for (auto it = drop.rbegin(); it != drop.rend(); ++it) r = r.eliminate(*it);
    return r;
}

std::vector<Constraint> Polytope::constraints() const {
    std::vector<Constraint> cs;
    if (empty_) {
        cs.push_back(Constraint::le(AffineForm(Rational(1))));  // 1 <= 0
        return cs;
    }
    for (const auto& [v, rhs] : pins_) cs.push_back(Constraint::eq(AffineForm::var(v) - rhs));
    for (const auto& f : ineqs_) cs.push_back(Constraint::le(f));
    return cs;
}

bool Polytope::has_interior() const {
    if (empty_) return false;
    return fm_feasible(make_rowset(ineqs_, true));
}

bool Polytope::contains(const std::map<Variable, Rational>& free_point) const {
    if (empty_) return false;
    for (const auto& f : ineqs_)
        if (f.evaluate(free_point) > 0) return false;
    return true;
}

std::map<Variable, Rational> Polytope::complete_point(std::map<Variable, Rational> p) const {
    for (const auto& [v, rhs] : pins_) p[v] = rhs.evaluate(p);
    return p;
}

Polytope::Interval Polytope::range(const Variable& v) const {
    if (empty_) throw GeometryError("range of empty polytope");
    const Polytope line = project_onto({v});
    Interval iv;
    if (auto it = line.pins_.find(v); it != line.pins_.end()) {
        iv.lo = it->second.constant();
        iv.hi = it->second.constant();
        return iv;
    }
    for (const auto& f : line.ineqs_) {
        const Rational a = f.coefficient(v);
        if (a == 0) continue;
        const Rational bound = -f.constant() / a;
        if (a > 0) {
            if (!iv.hi || bound < *iv.hi) iv.hi = bound;
        } else {
            if (!iv.lo || bound > *iv.lo) iv.lo = bound;
        }
    }
    return iv;
}

Polytope::Bounds Polytope::bounds_of(const Variable& v) const {
    if (pins_.contains(v)) throw GeometryError("bounds_of: variable is pinned " + v.name());
    Bounds b;
    for (const auto& f : ineqs_) {
        const Rational a = f.coefficient(v);
        if (a == 0) continue;
        AffineForm rest = f;
        rest.set_coefficient(v, Rational(0));
        rest *= Rational(-1) / a;
        (a > 0 ? b.upper : b.lower).push_back(std::move(rest));
    }
    return b;
}

std::string Polytope::str() const {
    if (empty_) return "{empty}";
    std::string s = "{";
    bool first = true;
    for (const auto& [v, rhs] : pins_) {
        if (!first) s += ", ";
        first = false;
        s += v.name() + " := " + rhs.str();
    }
    for (const auto& f : ineqs_) {
        if (!first) s += ", ";
        first = false;
        s += f.str() + " <= 0";
    }
    return s + "}";
}

}  // namespace dpa
