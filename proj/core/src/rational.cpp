#include "dpa/rational.hpp"

#include <cctype>
#include <cstddef>

#include "dpa/errors.hpp"

namespace dpa {

namespace {

bool is_integer_token(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string s(text);
    if (auto slash = s.find('/'); slash != std::string::npos) {
        const std::string num = s.substr(0, slash);
        const std::string den = s.substr(slash + 1);
        if (!is_integer_token(num) || !is_integer_token(den))
            throw ModelError("malformed rational '" + s + "'");
        Rational q;
        if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
            throw ModelError("malformed rational '" + s + "'");
        if (q.get_den() == 0) throw ModelError("zero denominator in '" + s + "'");
        q.canonicalize();
        return q;
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        const std::size_t frac_len = s.size() - dot - 1;
        if (frac_len == 0 || !is_integer_token(digits))
            throw ModelError("malformed decimal '" + s + "'");
        Integer scale = 1;
        for (std::size_t i = 0; i < frac_len; ++i) scale *= 10;
        Rational q(Integer(digits), scale);
        q.canonicalize();
        return q;
    }
    if (!is_integer_token(s)) throw ModelError("malformed number '" + s + "'");
    return Rational(Integer(s));
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return mpq_get_d(q.get_mpq_t()); }

}  // namespace dpa
