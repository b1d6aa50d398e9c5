#include "dmldc/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace dmldc {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

mpz_class parse_integer(std::string_view s) {
    if (!is_integer_literal(s))
        throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
    if (s[0] == '+') s.remove_prefix(1);
    return mpz_class(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty rational literal");

    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(trim(s.substr(0, slash)));
        mpz_class den = parse_integer(trim(s.substr(slash + 1)));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    if (is_integer_literal(s)) return Rational(parse_integer(s));

    // Decimal literal: split mantissa and exponent, keep it exact.
    std::string digits;
    long exponent = 0;
    bool negative = false;
    bool seen_point = false;
    bool seen_digit = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
        negative = s[0] == '-';
        i = 1;
    }
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) --exponent;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else if ((c == 'e' || c == 'E') && seen_digit) {
            const std::string_view tail = s.substr(i + 1);
            if (!is_integer_literal(tail))
                throw std::invalid_argument("malformed rational '" + std::string(s) + "'");
            exponent += std::stol(std::string(tail));
            break;
        } else {
            throw std::invalid_argument("malformed rational '" + std::string(s) + "'");
        }
    }
    if (!seen_digit) throw std::invalid_argument("malformed rational '" + std::string(s) + "'");

    mpz_class num(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    Rational q = exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
    Rational q(x);
    q.canonicalize();
    return q;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string_view piece =
            text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(parse_rational(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace dmldc
