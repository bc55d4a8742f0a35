#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>

#include "dpa/rational.hpp"
#include "dpa/variable.hpp"

namespace dpa {

/// A rational affine expression sum(coeff * var) + constant.
/// Zero coefficients are never stored.
class AffineForm {
public:
    AffineForm() = default;
    explicit AffineForm(Rational constant) : constant_(std::move(constant)) {}
    static AffineForm var(const Variable& v, Rational coeff = Rational(1));

    const std::map<Variable, Rational>& coefficients() const { return coeffs_; }
    const Rational& constant() const { return constant_; }
    bool is_constant() const { return coeffs_.empty(); }

    Rational coefficient(const Variable& v) const;
    /// Largest variable present (the pivot candidate), if any.
    std::optional<Variable> leading_var() const;

    void set_coefficient(const Variable& v, Rational c);
    void add_term(const Variable& v, const Rational& c);
    void add_constant(const Rational& c) { constant_ += c; }

    AffineForm& operator+=(const AffineForm& o);
    AffineForm& operator-=(const AffineForm& o);
    AffineForm& operator*=(const Rational& c);
    friend AffineForm operator+(AffineForm a, const AffineForm& b) { return a += b; }
    friend AffineForm operator-(AffineForm a, const AffineForm& b) { return a -= b; }
    friend AffineForm operator*(AffineForm a, const Rational& c) { return a *= c; }
    friend AffineForm operator-(AffineForm a) { return a *= Rational(-1); }

    /// Replaces every occurrence of v by f.
    AffineForm substituted(const Variable& v, const AffineForm& f) const;
    Rational evaluate(const std::map<Variable, Rational>& point) const;

    /// Scales so all coefficients and the constant are integers with gcd 1.
    /// The scaling factor is positive, so inequality direction is preserved.
    void normalize_integral();

    friend std::weak_ordering operator<=>(const AffineForm&, const AffineForm&) = default;
    friend bool operator==(const AffineForm&, const AffineForm&) = default;

    std::string str() const;

private:
    std::map<Variable, Rational> coeffs_;
    Rational constant_ = Rational(0);
};

/// One constraint: form <= 0 or form == 0.
struct Constraint {
    AffineForm form;
    bool equality = false;

    static Constraint le(AffineForm f) { return {std::move(f), false}; }
    static Constraint eq(AffineForm f) { return {std::move(f), true}; }
};

/// lhs <= rhs as a Constraint.
Constraint le(const AffineForm& lhs, const AffineForm& rhs);
/// lhs == rhs as a Constraint.
Constraint eq(const AffineForm& lhs, const AffineForm& rhs);

}  // namespace dpa
