#pragma once

#include <optional>
#include <set>
#include <span>
#include <vector>

#include "dpa/polynomial.hpp"
#include "dpa/polytope.hpp"

namespace dpa {

/// One cell of a piecewise density: a polynomial over the free variables of
/// a full-dimensional polytope. Pinned variables carry point (Dirac) mass.
struct Piece {
    Polytope domain;
    Polynomial value;

    /// Normalizes (pins substituted into the value) and filters out empty,
    /// degenerate (measure-zero) and identically-zero pieces.
    static std::optional<Piece> make(Polytope domain, Polynomial value);
};

/// Uniform box factor for a fresh duration variable.
struct UniformFactor {
    Variable var;
    Rational lo, hi;
};

/// A (partial) density represented as polynomial pieces over polytopes with
/// pairwise-disjoint interiors. Mass is the exact integral over the free
/// dimensions; pinned dimensions are point masses. All pieces share one
/// variable set and one pin pattern.
class PiecewiseDensity {
public:
    PiecewiseDensity() = default;
    explicit PiecewiseDensity(std::set<Variable> vars) : vars_(std::move(vars)) {}

    /// The unit density over no variables: one piece of value 1, mass 1.
    static PiecewiseDensity unit();

    const std::set<Variable>& variables() const { return vars_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    bool is_zero() const { return pieces_.empty(); }

    /// Integrates v away. Free v: parametric integration with chamber
    /// splitting between the active affine bounds. Pinned v: the point mass
    /// collapses. v referenced by a pin: the Dirac line is re-parameterized
    /// onto the referencing variable before the collapse.
    PiecewiseDensity integrate_out(const Variable& v) const;

    /// Introduces tau >= 0, substitutes x := x - tau for every shifted
    /// variable, intersects with extra, then eliminates tau: by substitution
    /// when the combined equalities pin it, by integration otherwise.
    PiecewiseDensity shift_integrate(const std::set<Variable>& shifted,
                                     std::span<const Constraint> extra) const;

    /// Adds fresh uniformly-distributed variables, scaling by 1/(hi-lo) each.
    PiecewiseDensity scale_and_extend(std::span<const UniformFactor> factors) const;

    /// Restricts every piece to the extra constraints.
    PiecewiseDensity restricted(std::span<const Constraint> extra) const;

    /// Exact total integral over all free dimensions.
    Rational mass() const;

    /// Inserts a piece, splitting overlaps so interiors stay disjoint
    /// (overlapping values add).
    void accumulate(Piece p);

    int max_degree() const;

private:
    std::set<Variable> vars_;
    std::vector<Piece> pieces_;

    void sort_pieces();
};

/// Exact volume of the free-space of a polytope (its indicator's mass).
Rational volume(const Polytope& p);

/// Exact set inclusion.
bool subset_of(const Polytope& inner, const Polytope& outer);

}  // namespace dpa
