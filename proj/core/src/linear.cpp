#include "dpa/linear.hpp"

namespace dpa {

AffineForm AffineForm::var(const Variable& v, Rational coeff) {
    AffineForm f;
    f.set_coefficient(v, std::move(coeff));
    return f;
}

Rational AffineForm::coefficient(const Variable& v) const {
    auto it = coeffs_.find(v);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

std::optional<Variable> AffineForm::leading_var() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.rbegin()->first;
}

void AffineForm::set_coefficient(const Variable& v, Rational c) {
    if (c == 0)
        coeffs_.erase(v);
    else
        coeffs_[v] = std::move(c);
}

void AffineForm::add_term(const Variable& v, const Rational& c) {
    auto it = coeffs_.find(v);
    if (it == coeffs_.end()) {
        if (c != 0) coeffs_.emplace(v, c);
        return;
    }
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
}

AffineForm& AffineForm::operator+=(const AffineForm& o) {
    for (const auto& [v, c] : o.coeffs_) add_term(v, c);
    constant_ += o.constant_;
    return *this;
}

AffineForm& AffineForm::operator-=(const AffineForm& o) {
    for (const auto& [v, c] : o.coeffs_) add_term(v, -c);
    constant_ -= o.constant_;
    return *this;
}

AffineForm& AffineForm::operator*=(const Rational& c) {
    if (c == 0) {
        coeffs_.clear();
        constant_ = 0;
        return *this;
    }
    for (auto& [v, k] : coeffs_) k *= c;
    constant_ *= c;
    return *this;
}

AffineForm AffineForm::substituted(const Variable& v, const AffineForm& f) const {
    auto it = coeffs_.find(v);
    if (it == coeffs_.end()) return *this;
    AffineForm r = *this;
    const Rational c = it->second;
    r.coeffs_.erase(v);
    r += f * c;
    return r;
}

Rational AffineForm::evaluate(const std::map<Variable, Rational>& point) const {
    Rational r = constant_;
    for (const auto& [v, c] : coeffs_) r += c * point.at(v);
    return r;
}

void AffineForm::normalize_integral() {
    if (coeffs_.empty() && constant_ == 0) return;
    Integer lcm_den = 1;
    for (const auto& [v, c] : coeffs_) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), constant_.get_den().get_mpz_t());
    Integer gcd_num = 0;
    auto fold = [&gcd_num, &lcm_den](const Rational& c) {
        Integer scaled = c.get_num() * (lcm_den / c.get_den());
        mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), scaled.get_mpz_t());
    };
    for (const auto& [v, c] : coeffs_) fold(c);
    if (constant_ != 0) fold(constant_);
    Rational scale(lcm_den, gcd_num == 0 ? Integer(1) : gcd_num);
    scale.canonicalize();
    *this *= scale;
}

std::string AffineForm::str() const {
    std::string s;
    for (const auto& [v, c] : coeffs_) {
        if (!s.empty()) s += " + ";
        s += to_string(c) + "*" + v.name();
    }
    if (s.empty()) return to_string(constant_);
    if (constant_ != 0) s += " + " + to_string(constant_);
    return s;
}

Constraint le(const AffineForm& lhs, const AffineForm& rhs) { return Constraint::le(lhs - rhs); }
Constraint eq(const AffineForm& lhs, const AffineForm& rhs) { return Constraint::eq(lhs - rhs); }

}  // namespace dpa
