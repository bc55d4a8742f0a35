#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "dpa/linear.hpp"

namespace dpa {

/// Exact convex polyhedron over named variables, in canonical form.
///
/// Degenerate dimensions are kept as substitution equalities ("pins"): a
/// pinned variable equals an affine form over the free variables and occurs
/// nowhere else. The inequality system over the free variables is
/// normalized to integral gcd-1 rows, sorted, deduplicated, irredundant,
/// and full-dimensional (implicit equalities are promoted to pins).
/// Canonical form is unique per point set, so operator== decides set
/// equality. All inequalities are non-strict.
class Polytope {
public:
    /// The zero-dimensional universe (a single point, no variables).
    Polytope() = default;
    /// Unconstrained space over the given variables.
    explicit Polytope(std::set<Variable> vars) : vars_(std::move(vars)) {}

    static Polytope from_constraints(std::set<Variable> vars, std::span<const Constraint> cs);

    const std::set<Variable>& variables() const { return vars_; }
    const std::map<Variable, AffineForm>& pins() const { return pins_; }
    const std::vector<AffineForm>& inequalities() const { return ineqs_; }

    bool is_empty() const { return empty_; }
    bool is_pinned(const Variable& v) const { return pins_.contains(v); }
    bool has_variable(const Variable& v) const { return vars_.contains(v); }
    std::vector<Variable> free_variables() const;
    /// Number of free variables (the dimension of the ambient free space).
    int dimension() const { return static_cast<int>(vars_.size() - pins_.size()); }

    /// True if implicit-equality promotion fired while this value was
    /// canonicalized, i.e. the raw constraints were degenerate in their free
    /// space. Construction metadata, not part of the value.
    bool was_degenerate() const { return promoted_; }

    /// Set intersection with additional constraints over this polytope's
    /// variables. Unknown variables raise GeometryError.
    Polytope intersect(std::span<const Constraint> cs) const;
    Polytope intersect(const Constraint& c) const { return intersect(std::span(&c, 1)); }

    /// Orthogonal projection along v (v is removed from the variable set).
    Polytope eliminate(const Variable& v) const;

    /// Textual substitution v := f in every constraint; fresh variables of f
    /// join the variable set. f may mention v itself (e.g. x := x - tau).
    Polytope substituted(const Variable& v, const AffineForm& f) const;

    /// Adds unconstrained variables.
    Polytope with_variables(const std::set<Variable>& added) const;

    /// Projects onto the given variables by eliminating all others.
    Polytope project_onto(const std::set<Variable>& keep) const;

    /// All constraints (pins as equalities), suitable for intersect().
    std::vector<Constraint> constraints() const;

    /// True iff the all-strict version of the inequality system is feasible,
    /// i.e. the polytope has nonempty relative interior in its free space.
    bool has_interior() const;

    /// Membership test for an assignment of the free variables.
    bool contains(const std::map<Variable, Rational>& free_point) const;
    /// Extends a free-variable assignment with the pinned values.
    std::map<Variable, Rational> complete_point(std::map<Variable, Rational> free_point) const;

    /// Exact range of a variable over the polytope (nullopt = unbounded).
    struct Interval {
        std::optional<Rational> lo, hi;
    };
    Interval range(const Variable& v) const;

    /// Affine lower/upper bounds on a free variable, read off the
    /// inequality rows: v >= each of lower, v <= each of upper.
    struct Bounds {
        std::vector<AffineForm> lower, upper;
    };
    Bounds bounds_of(const Variable& v) const;

    friend bool operator==(const Polytope& a, const Polytope& b) {
        return a.empty_ == b.empty_ && a.vars_ == b.vars_ && a.pins_ == b.pins_ &&
               a.ineqs_ == b.ineqs_;
    }
    // Canonical-form ordering; construction metadata does not participate.
    friend std::weak_ordering operator<=>(const Polytope& a, const Polytope& b) {
        if (auto c = a.empty_ <=> b.empty_; c != 0) return c;
        if (auto c = a.vars_ <=> b.vars_; c != 0) return c;
        if (auto c = a.pins_ <=> b.pins_; c != 0) return c;
        return a.ineqs_ <=> b.ineqs_;
    }

    std::string str() const;

private:
    std::set<Variable> vars_;
    std::map<Variable, AffineForm> pins_;
    std::vector<AffineForm> ineqs_;
    bool empty_ = false;
    bool promoted_ = false;

    void canonicalize(std::vector<AffineForm> eq_rows);
    void mark_empty();
    /// Makes v a pin by re-pivoting an equality that references it; v must be
    /// free and referenced by at least one pin RHS.
    void repivot_to_pin(const Variable& v);
};

}  // namespace dpa
