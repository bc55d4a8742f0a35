#include "dpa/polynomial.hpp"

#include <cmath>

#include "dpa/errors.hpp"

namespace dpa {

Polynomial::Polynomial(Rational constant) {
    if (constant != 0) terms_.emplace(Monomial{}, std::move(constant));
}

Polynomial Polynomial::var(const Variable& v) {
    Polynomial p;
    p.terms_.emplace(Monomial{{v, 1}}, Rational(1));
    return p;
}

Polynomial Polynomial::from_affine(const AffineForm& f) {
    Polynomial p(f.constant());
    for (const auto& [v, c] : f.coefficients()) p.add_term(Monomial{{v, 1}}, c);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant_value() const {
    if (!is_constant()) throw GeometryError("constant_value of non-constant polynomial");
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

int Polynomial::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) {
        int t = 0;
        for (const auto& [v, e] : m) t += e;
        d = std::max(d, t);
    }
    return d;
}

int Polynomial::degree(const Variable& v) const {
    int d = 0;
    for (const auto& [m, c] : terms_) {
        auto it = m.find(v);
        if (it != m.end()) d = std::max(d, it->second);
    }
    return d;
}

std::set<Variable> Polynomial::variables() const {
    std::set<Variable> vs;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m) vs.insert(v);
    return vs;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
    Polynomial r;
    for (const auto& [m1, c1] : terms_) {
        for (const auto& [m2, c2] : o.terms_) {
            Monomial m = m1;
            for (const auto& [v, e] : m2) m[v] += e;
            r.add_term(m, c1 * c2);
        }
    }
    terms_ = std::move(r.terms_);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, k] : terms_) k *= c;
    return *this;
}

Polynomial Polynomial::pow(int e) const {
    Polynomial r(Rational(1));
    for (int i = 0; i < e; ++i) r *= *this;
    return r;
}

Polynomial Polynomial::antiderivative(const Variable& v) const {
    Polynomial r;
    for (const auto& [m, c] : terms_) {
        Monomial m2 = m;
        const int e = ++m2[v];
        r.add_term(m2, c / Rational(e));
    }
    return r;
}

Polynomial Polynomial::substituted(const Variable& v, const AffineForm& f) const {
    Polynomial r;
    const Polynomial base = from_affine(f);
    std::map<int, Polynomial> powers;  // cache base^e
    for (const auto& [m, c] : terms_) {
        auto it = m.find(v);
        if (it == m.end()) {
            r.add_term(m, c);
            continue;
        }
        const int e = it->second;
        auto [pit, fresh] = powers.try_emplace(e);
        if (fresh) pit->second = base.pow(e);
        Monomial rest = m;
        rest.erase(v);
        Polynomial term;
        term.add_term(rest, c);
        r += term * pit->second;
    }
    return r;
}

Rational Polynomial::evaluate(const std::map<Variable, Rational>& point) const {
    Rational total(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (const auto& [v, e] : m) {
            const Rational& x = point.at(v);
            for (int i = 0; i < e; ++i) t *= x;
        }
        total += t;
    }
    return total;
}

double Polynomial::evaluate(const std::map<Variable, double>& point) const {
    double total = 0;
    for (const auto& [m, c] : terms_) {
        double t = to_double(c);
        for (const auto& [v, e] : m) t *= std::pow(point.at(v), e);
        total += t;
    }
    return total;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += to_string(c);
        for (const auto& [v, e] : m) {
            s += "*" + v.name();
            if (e > 1) s += "^" + std::to_string(e);
        }
    }
    return s;
}

}  // namespace dpa
