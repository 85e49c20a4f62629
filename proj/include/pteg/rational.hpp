#ifndef PTEG_RATIONAL_HPP
#define PTEG_RATIONAL_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>

namespace pteg {

// Exact arithmetic throughout: the fixed-point tests (matrix equality between
// iterations) are only sound with exact equality.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

namespace detail {

inline bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

}  // namespace detail

// Accepts "p/q", integers, and decimal literals with optional exponent
// ("2", "-3.25", "1e-3"). Decimal literals convert exactly.
inline Rational parse_rational(const std::string& text) {
    const auto fail = [&]() -> Rational {
        throw std::invalid_argument("not a rational literal: '" + text + "'");
    };

    std::string s = text;
    if (s.empty()) fail();

    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        bool nneg = !num.empty() && (num[0] == '-' || num[0] == '+');
        bool negate = nneg && num[0] == '-';
        std::string nd = nneg ? num.substr(1) : num;
        if (!detail::all_digits(nd) || !detail::all_digits(den)) fail();
        mpz_class n(nd, 10), d(den, 10);  // base 10: the default auto-detects octal
        if (d == 0) fail();
        Rational r(negate ? mpz_class(-n) : n, d);
        r.canonicalize();
        return r;
    }

    bool neg = false;
    std::size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-') {
        neg = s[pos] == '-';
        ++pos;
    }
    std::string digits;
    long scale = 0;  // value = digits * 10^(-scale) * 10^(exponent)
    bool seen_digit = false, seen_dot = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c >= '0' && c <= '9') {
            digits += c;
            seen_digit = true;
            if (seen_dot) ++scale;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((c == 'e' || c == 'E') && seen_digit) {
            break;
        } else {
            fail();
        }
    }
    long exponent = 0;
    if (pos < s.size()) {  // exponent part
        ++pos;
        bool eneg = false;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            eneg = s[pos] == '-';
            ++pos;
        }
        std::string es = s.substr(pos);
        if (!detail::all_digits(es) || es.size() > 6) fail();
        exponent = std::stol(es);
        if (eneg) exponent = -exponent;
    }
    if (!seen_digit) fail();

    mpz_class mant(digits.empty() ? std::string("0") : digits, 10);
    Rational r(mant);
    long shift = exponent - scale;
    if (shift != 0) {
        mpz_class p10;
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift > 0 ? shift : -shift));
        if (shift > 0)
            r *= Rational(p10);
        else
            r /= Rational(p10);
    }
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// Decimal digits needed so that den * 10^k is an integer power split, i.e.
// den = 2^a 5^b. Returns nullopt for other denominators.
inline std::optional<unsigned long> decimal_exponent(const mpz_class& den) {
    mpz_class d = den;
    unsigned long twos = 0, fives = 0;
    while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) {
        mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 2);
        ++twos;
    }
    while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) {
        mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 5);
        ++fives;
    }
    if (d != 1) return std::nullopt;
    return std::max(twos, fives);
}

// Integers print as integers, exact decimals as decimals ("0.5"), everything
// else as "p/q".
inline std::string format_rational(const Rational& r) {
    if (is_integer(r)) return r.get_num().get_str();
    auto k = decimal_exponent(r.get_den());
    if (!k) return r.get_num().get_str() + "/" + r.get_den().get_str();
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, *k);
    mpz_class scaled = r.get_num() * p10 / r.get_den();
    bool neg = scaled < 0;
    std::string digits = mpz_class(abs(scaled)).get_str();
    if (digits.size() <= *k) digits.insert(0, *k - digits.size() + 1, '0');
    digits.insert(digits.size() - *k, ".");
    return (neg ? "-" : "") + digits;
}

// Exact value of the shortest decimal form of a double (how JSON number
// literals are interpreted). Requires a finite input.
inline Rational rational_from_double(double x) {
    // Shortest round-trip form, then exact decimal parse. 0.1 therefore means
    // one tenth, not the nearest binary double.
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return parse_rational(buf);
}

}  // namespace pteg

#endif  // PTEG_RATIONAL_HPP
