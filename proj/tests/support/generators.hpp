// Random instance generators for the property suites.
#pragma once

#include <optional>
#include <vector>

#include "dpa/density.hpp"
#include "dpa/polytope.hpp"
#include "support/models.hpp"

namespace gen {

using corpus::Rng;
using dpa::AffineForm;
using dpa::Constraint;
using dpa::Piece;
using dpa::PiecewiseDensity;
using dpa::Polynomial;
using dpa::Polytope;
using dpa::Rational;
using dpa::Variable;

inline Rational random_rational(Rng& rng, long span = 4) {
    const long num = static_cast<long>(rng.below(static_cast<std::uint64_t>(2 * span + 1))) - span;
    const long den = 1 + static_cast<long>(rng.below(4));
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline AffineForm random_form(Rng& rng, const std::vector<Variable>& vars) {
    AffineForm f(random_rational(rng));
    for (const auto& v : vars)
        if (rng.below(3) != 0) f.add_term(v, random_rational(rng, 3));
    return f;
}

/// Bounded: a box [0, 3] per variable intersected with random cuts.
inline Polytope random_polytope(Rng& rng, const std::vector<Variable>& vars, int cuts) {
    std::vector<Constraint> cs;
    for (const auto& v : vars) {
        cs.push_back(Constraint::le(-AffineForm::var(v)));
        cs.push_back(Constraint::le(AffineForm::var(v) - AffineForm(Rational(3))));
    }
    for (int i = 0; i < cuts; ++i) cs.push_back(Constraint::le(random_form(rng, vars)));
    return Polytope::from_constraints({vars.begin(), vars.end()}, cs);
}

/// Possibly unbounded and often empty; exercises the feasibility kernel.
inline std::vector<AffineForm> random_rows(Rng& rng, const std::vector<Variable>& vars, int rows) {
    std::vector<AffineForm> out;
    for (int i = 0; i < rows; ++i) out.push_back(random_form(rng, vars));
    return out;
}

inline Polynomial random_poly(Rng& rng, const std::vector<Variable>& vars, int degree) {
    Polynomial p(random_rational(rng));
    for (int t = 0; t < 3; ++t) {
        dpa::Monomial m;
        int budget = degree;
        for (const auto& v : vars) {
            const int e = static_cast<int>(rng.below(static_cast<std::uint64_t>(budget + 1)));
            if (e > 0) m[v] = e;
            budget -= e;
        }
        p.add_term(m, random_rational(rng));
    }
    return p;
}

/// Nonnegative on its domain (a square plus a nonnegative constant).
inline Polynomial random_nonneg_poly(Rng& rng, const std::vector<Variable>& vars) {
    Polynomial base = random_poly(rng, vars, 1);
    Polynomial sq = base * base;
    Rational bump(1 + static_cast<long>(rng.below(3)), 4);
    bump.canonicalize();
    sq += Polynomial(bump);
    return sq;
}

inline PiecewiseDensity random_density(Rng& rng, const std::vector<Variable>& vars, int pieces) {
    PiecewiseDensity d({vars.begin(), vars.end()});
    for (int i = 0; i < pieces; ++i) {
        Polytope dom = random_polytope(rng, vars, static_cast<int>(rng.below(3)));
        if (dom.is_empty() || dom.dimension() != static_cast<int>(vars.size())) continue;
        if (auto p = Piece::make(dom, random_nonneg_poly(rng, vars))) d.accumulate(std::move(*p));
    }
    return d;
}

/// Uniform rational point from the bounding box; nullopt if outside p.
inline std::optional<std::map<Variable, Rational>> sample_box_point(Rng& rng, const Polytope& p,
                                                                    const Rational& lo,
                                                                    const Rational& hi) {
    std::map<Variable, Rational> pt;
    for (const auto& v : p.free_variables()) {
        const Rational u(static_cast<long>(rng.below(997)), 997);
        pt[v] = lo + (hi - lo) * u;
    }
    if (!p.contains(pt)) return std::nullopt;
    return pt;
}

}  // namespace gen
