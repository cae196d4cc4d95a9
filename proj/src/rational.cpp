#include "gisoforge/rational.hpp"

#include <stdexcept>

namespace gisoforge {

Rational parse_rational(const std::string &text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Rational r(text);
        r.canonicalize();
        return r;
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        Rational r(text);
        r.canonicalize();
        return r;
    }
    // Decimal literal: digits before and after the dot, exact base-10 value.
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    bool neg = false;
    if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
        neg = digits[0] == '-';
        digits = digits.substr(1);
    }
    if (digits.empty()) throw std::invalid_argument("bad rational literal: " + text);
    Integer num(digits, 10);
    Integer den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational r(neg ? Integer(-num) : num, den);
    r.canonicalize();
    return r;
}

long long floor_times(const Rational &r, long long factor) {
    Integer num = r.get_num() * static_cast<long>(factor);
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), r.get_den().get_mpz_t());
    return q.get_si();
}

long long ceil_of(const Rational &r) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q.get_si();
}

std::string to_string(const Rational &r) {
    return r.get_str();
}

} // namespace gisoforge
