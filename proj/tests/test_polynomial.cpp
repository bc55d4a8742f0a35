#include <doctest.h>

#include "dpa/polynomial.hpp"
#include "support/generators.hpp"

using namespace dpa;

namespace {
const Variable X = Variable::clock(1, 1);
const Variable Y = Variable::duration(1, 1);
}  // namespace

TEST_CASE("arithmetic and canonical form") {
    Polynomial p = Polynomial::var(X) * Polynomial::var(X) + Polynomial(Rational(2)) * Polynomial::var(Y);
    Polynomial q = p - p;
    CHECK(q.is_zero());
    CHECK(p.total_degree() == 2);
    CHECK(p.degree(X) == 2);
    CHECK(p.degree(Y) == 1);
    CHECK(p.evaluate({{X, Rational(3)}, {Y, Rational(1, 2)}}) == Rational(10));
}

TEST_CASE("antiderivative inverts differentiation on monomials") {
    // d/dx of the antiderivative of x^2 y is x^2 y again, checked by evaluation
    Polynomial p = Polynomial::var(X) * Polynomial::var(X) * Polynomial::var(Y);
    Polynomial f = p.antiderivative(X);
    CHECK(f.degree(X) == 3);
    // F(2) - F(1) at y=3 equals int_1^2 x^2*3 dx = 7
    const Rational hi = f.evaluate({{X, Rational(2)}, {Y, Rational(3)}});
    const Rational lo = f.evaluate({{X, Rational(1)}, {Y, Rational(3)}});
    CHECK(hi - lo == Rational(7));
}

TEST_CASE("affine substitution agrees with evaluation") {
    corpus::Rng rng{5150};
    const std::vector<Variable> vars{X, Y};
    for (int trial = 0; trial < 100; ++trial) {
        const Polynomial p = gen::random_poly(rng, vars, 3);
        const AffineForm f = gen::random_form(rng, {Y});
        const Polynomial sub = p.substituted(X, f);
        const Rational y0 = gen::random_rational(rng);
        const Rational x0 = f.evaluate({{Y, y0}});
        CHECK(sub.evaluate({{X, x0}, {Y, y0}}) == p.evaluate({{X, x0}, {Y, y0}}));
        // substituted polynomial no longer mentions X unless f does
        if (f.coefficient(X) == 0) CHECK(sub.degree(X) == 0);
    }
}

TEST_CASE("power expansion") {
    const Polynomial p = Polynomial::from_affine(AffineForm::var(X) + AffineForm(Rational(1)));
    const Polynomial cube = p.pow(3);
    CHECK(cube.evaluate({{X, Rational(2)}}) == Rational(27));
    CHECK(cube.total_degree() == 3);
}
