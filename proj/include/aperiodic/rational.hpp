// rational.hpp -- exact integer/rational scalars used everywhere in the library.
//
// Thin layer over GMP's mpz_class/mpq_class. All arithmetic in this project is
// exact; doubles appear only as approximations for bracketing, sorting hints
// and report output, never in decisions.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace aperiodic {

using Integer = mpz_class;
using Rational = mpq_class;

/// num/den in lowest terms, den > 0.
inline Rational make_rational(Integer num, Integer den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(std::move(num), std::move(den));
    q.canonicalize();
    return q;
}

inline const Integer& numer(const Rational& q) { return q.get_num(); }
inline const Integer& denom(const Rational& q) { return q.get_den(); }

/// Largest integer <= q.
inline Integer floor_rational(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

/// Smallest integer >= q.
inline Integer ceil_rational(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Integer pow_integer(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational pow_rational(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (e < 0) {
        if (base == 0) throw std::domain_error("0 raised to a negative power");
        return pow_rational(Rational(1) / base, -e);
    }
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
    return r;  // powers of a canonical rational stay canonical
}

/// floor(sqrt(n)) for n >= 0.
inline Integer isqrt(const Integer& n) {
    if (n < 0) throw std::domain_error("isqrt of a negative integer");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Integer& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

/// n = s^2 * d with d square-free; returns {s, d}. Trial division, meant for
/// discriminant-sized inputs.
inline std::pair<Integer, Integer> squarefree_decompose(Integer n) {
    if (n <= 0) throw std::domain_error("squarefree_decompose needs n > 0");
    Integer s = 1;
    for (Integer f = 2; f * f <= n; ++f) {
        Integer ff = f * f;
        while (n % ff == 0) {
            n /= ff;
            s *= f;
        }
    }
    return {s, n};
}

/// Parses "p", "p/q", optional sign and surrounding spaces.
inline Rational parse_rational(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw std::invalid_argument("empty rational literal");
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), t.c_str(), 10) != 0)
        throw std::invalid_argument("bad rational literal: '" + text + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

/// Fixed-point decimal string with `digits` fractional digits, rounded to
/// nearest (ties away from zero). Exact: computed from floor(|q|*10^digits + 1/2).
inline std::string decimal_string(const Rational& q, unsigned digits) {
    Integer scale = pow_integer(10, digits);
    Rational mag = abs(q) * Rational(scale) + Rational(1, 2);
    Integer units = floor_rational(mag);
    Integer ip = units / scale, fp = units % scale;
    std::string frac = fp.get_str();
    frac.insert(0, digits - frac.size(), '0');
    std::string out = (sgn(q) < 0 && units != 0) ? "-" : "";
    out += ip.get_str();
    if (digits > 0) out += "." + frac;
    return out;
}

}  // namespace aperiodic
