#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>

#include "dpa/linear.hpp"
#include "dpa/rational.hpp"
#include "dpa/variable.hpp"

namespace dpa {

/// Monomial: variable -> positive exponent.
using Monomial = std::map<Variable, int>;

/// Multivariate polynomial with exact rational coefficients.
/// Canonical: no zero coefficients, monomials ordered by the map.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(Rational constant);
    static Polynomial var(const Variable& v);
    static Polynomial from_affine(const AffineForm& f);

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// The value of a constant polynomial (zero polynomial included).
    Rational constant_value() const;

    int total_degree() const;
    int degree(const Variable& v) const;
    std::set<Variable> variables() const;

    void add_term(const Monomial& m, const Rational& c);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }

    Polynomial pow(int e) const;

    /// Antiderivative in v: x^e -> x^(e+1)/(e+1).
    Polynomial antiderivative(const Variable& v) const;

    /// Replaces v by the affine form f, expanding powers.
    Polynomial substituted(const Variable& v, const AffineForm& f) const;

    Rational evaluate(const std::map<Variable, Rational>& point) const;
    double evaluate(const std::map<Variable, double>& point) const;

    friend std::weak_ordering operator<=>(const Polynomial&, const Polynomial&) = default;
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    std::string str() const;

private:
    std::map<Monomial, Rational> terms_;
};

}  // namespace dpa
