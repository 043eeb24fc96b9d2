// quadfield.hpp -- exact arithmetic in real quadratic fields Q(sqrt(d)).
//
// QuadElem represents a + b*sqrt(d) with arbitrary-precision rational a, b and
// square-free d >= 2. Every scalar of the library (window endpoints, gap
// lengths, Pisot units and their conjugates, lattice steps) is a QuadElem, so
// equality and order are always decided exactly:
//
//   sign(a + b*sqrt(d)) by case split on the signs of a and b, then an exact
//   comparison of a^2 against b^2*d;
//
//   floor(a + b*sqrt(d)) from the integer square root of b^2*d (sqrt(b^2*d)
//   is irrational whenever b != 0), plus one exact comparison.
//
// The field conjugation a + b*sqrt(d) |-> a - b*sqrt(d) realizes the star map
// of cut-and-project sets when the window lives in the conjugate embedding.

#pragma once

#include <cmath>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "rational.hpp"

namespace aperiodic {

/// Real quadratic field Q(sqrt(d)), d square-free, with a chosen real
/// embedding (which of the two square roots counts as the positive one).
struct QuadField {
    long d;
    bool positive_root = true;

    explicit QuadField(long d_, bool positive_root_ = true)
        : d(d_), positive_root(positive_root_) {
        if (d < 2) throw std::invalid_argument("quadratic field needs d >= 2");
        auto [s, rad] = squarefree_decompose(Integer(d));
        if (s != 1) throw std::invalid_argument("quadratic field needs square-free d");
    }

    bool operator==(const QuadField&) const = default;
};

class QuadElem {
public:
    QuadElem(QuadField field, Rational a, Rational b)
        : a_(std::move(a)), b_(std::move(b)), field_(field) {}
    QuadElem(QuadField field, long a) : a_(a), b_(0), field_(field) {}

    const Rational& rational_part() const { return a_; }
    const Rational& root_part() const { return b_; }
    const QuadField& field() const { return field_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    /// a - b*sqrt(d); an involutive ring homomorphism fixing the rationals.
    QuadElem conjugate() const { return QuadElem(field_, a_, -b_); }

    /// (a + b*sqrt(d)) * (a - b*sqrt(d)) = a^2 - b^2 d, exact.
    Rational norm() const { return a_ * a_ - b_ * b_ * Rational(field_.d); }

    Rational trace() const { return 2 * a_; }

    /// Exact sign in the field's chosen real embedding.
    int sign() const {
        Rational b = field_.positive_root ? b_ : -b_;
        if (b == 0) return sgn(a_);
        if (a_ == 0) return sgn(b);
        int sa = sgn(a_), sb = sgn(b);
        if (sa == sb) return sa;
        // opposite signs: |a| vs |b|*sqrt(d) decided by squaring
        int c = cmp(a_ * a_, b * b * Rational(field_.d));
        if (c == 0)  // impossible for square-free d and b != 0
            throw std::logic_error("sqrt(d) behaved rationally; field invariant broken");
        return c > 0 ? sa : sb;
    }

    /// Unique n with n <= x < n+1, computed without floating point.
    Integer floor() const {
        Integer n = floor_rational(a_) + floor_root_term();
        // fractional parts of the two summands add up to less than 2
        QuadElem r = *this - QuadElem(field_, Rational(n + 1), Rational(0));
        return r.sign() >= 0 ? n + 1 : n;
    }

    Integer ceil() const { return -(-*this).floor(); }

    QuadElem abs() const { return sign() >= 0 ? *this : -*this; }

    /// double approximation (for brackets, sort keys, report output only).
    double approx() const {
        double root = std::sqrt(static_cast<double>(field_.d));
        if (!field_.positive_root) root = -root;
        return to_double(a_) + to_double(b_) * root;
    }

    /// Exact fixed-point decimal rendering with `digits` fractional digits,
    /// rounded to nearest (ties away from zero).
    std::string decimal(unsigned digits) const {
        Integer scale = pow_integer(10, digits);
        QuadElem mag = abs();
        QuadElem scaled(field_, mag.a_ * scale + Rational(1, 2), mag.b_ * scale);
        Integer units = scaled.floor();
        Integer ip = units / scale, fp = units % scale;
        std::string frac = fp.get_str();
        frac.insert(0, digits - frac.size(), '0');
        std::string out = (sign() < 0 && units != 0) ? "-" : "";
        out += ip.get_str();
        if (digits > 0) out += "." + frac;
        return out;
    }

    /// Canonical textual form "a/b + c/d*sqrt(D)".
    std::string str() const {
        if (b_ == 0) return to_string(a_);
        Rational babs = ::abs(b_);
        std::string root = "sqrt(" + std::to_string(field_.d) + ")";
        std::string bs = to_string(babs) + "*" + root;
        if (babs == 1) bs = root;
        if (a_ == 0) return (sgn(b_) < 0 ? "-" : "") + bs;
        return to_string(a_) + (sgn(b_) < 0 ? " - " : " + ") + bs;
    }

    QuadElem operator-() const { return QuadElem(field_, -a_, -b_); }

    QuadElem& operator+=(const QuadElem& y) {
        require_same_field(y);
        a_ += y.a_;
        b_ += y.b_;
        return *this;
    }
    QuadElem& operator-=(const QuadElem& y) {
        require_same_field(y);
        a_ -= y.a_;
        b_ -= y.b_;
        return *this;
    }
    QuadElem& operator*=(const QuadElem& y) {
        require_same_field(y);
        Rational a = a_ * y.a_ + b_ * y.b_ * Rational(field_.d);
        Rational b = a_ * y.b_ + b_ * y.a_;
        a_ = std::move(a);
        b_ = std::move(b);
        return *this;
    }
    QuadElem& operator/=(const QuadElem& y) {
        require_same_field(y);
        Rational n = y.norm();
        if (n == 0) throw std::domain_error("division by zero field element");
        QuadElem num = *this * y.conjugate();
        a_ = num.a_ / n;
        b_ = num.b_ / n;
        return *this;
    }

    friend QuadElem operator+(QuadElem x, const QuadElem& y) { return x += y; }
    friend QuadElem operator-(QuadElem x, const QuadElem& y) { return x -= y; }
    friend QuadElem operator*(QuadElem x, const QuadElem& y) { return x *= y; }
    friend QuadElem operator/(QuadElem x, const QuadElem& y) { return x /= y; }

    friend QuadElem operator*(QuadElem x, const Rational& s) {
        x.a_ *= s;
        x.b_ *= s;
        return x;
    }
    friend QuadElem operator*(const Rational& s, QuadElem x) { return std::move(x) * s; }
    friend QuadElem operator/(QuadElem x, const Rational& s) {
        if (s == 0) throw std::domain_error("division by zero");
        x.a_ /= s;
        x.b_ /= s;
        return x;
    }
    friend QuadElem operator+(QuadElem x, const Rational& s) {
        x.a_ += s;
        return x;
    }
    friend QuadElem operator-(QuadElem x, const Rational& s) {
        x.a_ -= s;
        return x;
    }

    friend bool operator==(const QuadElem& x, const QuadElem& y) {
        x.require_same_field(y);
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend std::strong_ordering operator<=>(const QuadElem& x, const QuadElem& y) {
        int s = (x - y).sign();
        return s < 0 ? std::strong_ordering::less
             : s > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    void require_same_field(const QuadElem& y) const {
        if (!(field_ == y.field_))
            throw std::invalid_argument("field mismatch: elements of different Q(sqrt(d))");
    }

    // floor of b*sqrt(d) in the chosen embedding
    Integer floor_root_term() const {
        Rational b = b_;
        if (!field_.positive_root) b = -b;
        if (b == 0) return 0;
        Integer p = numer(b), q = denom(b);
        Integer s = isqrt(p * p * Integer(field_.d));  // sqrt(p^2 d) irrational here
        Integer f;
        if (p > 0) {
            mpz_fdiv_q(f.get_mpz_t(), s.get_mpz_t(), q.get_mpz_t());
        } else {
            mpz_fdiv_q(f.get_mpz_t(), s.get_mpz_t(), q.get_mpz_t());
            f = -f - 1;
        }
        return f;
    }

    Rational a_, b_;
    QuadField field_;
};

enum class Ordering { LT, EQ, GT };

/// Exact three-way comparison; spec-level entry point.
inline Ordering compare(const QuadElem& x, const QuadElem& y) {
    int s = (x - y).sign();
    return s < 0 ? Ordering::LT : s > 0 ? Ordering::GT : Ordering::EQ;
}

inline Integer floor_elem(const QuadElem& x) { return x.floor(); }
inline Integer ceil_elem(const QuadElem& x) { return x.ceil(); }
inline QuadElem conjugate(const QuadElem& x) { return x.conjugate(); }

// ---------------------------------------------------------------------------
// Quadratic Pisot units
// ---------------------------------------------------------------------------

/// beta > 1 with minimal polynomial x^2 - p x - 1 (p >= 1, beta*beta' = -1) or
/// x^2 - p x + 1 (p >= 3, beta*beta' = +1); conjugate beta' has |beta'| < 1.
struct PisotUnit {
    enum class Family { MinusOne, PlusOne };

    Family family;
    long p;
    QuadField field;
    QuadElem beta;
    QuadElem beta_conj;

    static PisotUnit make(Family family, long p) {
        if (family == Family::MinusOne && p < 1)
            throw std::invalid_argument("x^2 - px - 1 needs p >= 1");
        if (family == Family::PlusOne && p < 3)
            throw std::invalid_argument("x^2 - px + 1 needs p >= 3");
        Integer disc = Integer(p) * p + (family == Family::MinusOne ? 4 : -4);
        auto [s, d] = squarefree_decompose(disc);
        QuadField field(d.get_si());
        Rational half_p = make_rational(Integer(p), 2), half_s = make_rational(s, 2);
        QuadElem beta(field, half_p, half_s);
        QuadElem beta_conj(field, half_p, -half_s);
        PisotUnit u{family, p, field, beta, beta_conj};
        u.check();
        return u;
    }

    /// floor(beta): p for the MinusOne family, p-1 for PlusOne.
    long floor_beta() const { return family == Family::MinusOne ? p : p - 1; }

    Rational unit_norm() const { return Rational(family == Family::MinusOne ? -1 : 1); }

private:
    void check() const {
        QuadElem one(field, 1);
        if (!(beta * beta_conj == QuadElem(field, unit_norm(), Rational(0))))
            throw std::logic_error("pisot unit: beta*beta' != norm");
        if (!((beta + beta_conj) == QuadElem(field, Rational(p), Rational(0))))
            throw std::logic_error("pisot unit: beta + beta' != p");
        if (!(beta > one)) throw std::logic_error("pisot unit: beta <= 1");
        QuadElem bc = beta_conj.abs();
        if (!(bc < one) || bc.is_zero()) throw std::logic_error("pisot unit: |beta'| not in (0,1)");
        if (beta.floor() != floor_beta()) throw std::logic_error("pisot unit: floor(beta) mismatch");
    }
};

// ---------------------------------------------------------------------------
// Textual element format "a/b + c/d*sqrt(D)"
// ---------------------------------------------------------------------------

namespace detail {

struct ElemParser {
    std::string s;
    size_t i = 0;

    explicit ElemParser(const std::string& text) {
        for (char c : text)
            if (!isspace(static_cast<unsigned char>(c))) s += c;
    }

    bool eof() const { return i >= s.size(); }
    char peek() const { return eof() ? '\0' : s[i]; }

    Rational parse_number() {
        size_t start = i;
        if (peek() == '+' || peek() == '-') ++i;
        while (!eof() && (isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
        if (i == start || (i == start + 1 && !isdigit(static_cast<unsigned char>(s[start]))))
            throw std::invalid_argument("bad element literal: '" + s + "'");
        return parse_rational(s.substr(start, i - start));
    }

    // returns {rational coefficient, radicand (0 when the term is rational)}
    std::pair<Rational, long> parse_term(int outer_sign) {
        Rational coef(outer_sign);
        long radicand = 0;
        if (s.compare(i, 5, "sqrt(") == 0) {
            radicand = parse_sqrt();
        } else {
            coef *= parse_number();
            if (peek() == '*') {
                ++i;
                if (s.compare(i, 5, "sqrt(") != 0)
                    throw std::invalid_argument("expected sqrt(...) after '*' in '" + s + "'");
                radicand = parse_sqrt();
            }
        }
        return {coef, radicand};
    }

    long parse_sqrt() {
        i += 5;
        size_t start = i;
        while (!eof() && isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start || peek() != ')')
            throw std::invalid_argument("bad sqrt(...) in '" + s + "'");
        long n = std::stol(s.substr(start, i - start));
        ++i;
        return n;
    }
};

}  // namespace detail

/// Parses "a/b + c/d*sqrt(D)" (either term optional, any order, D need not be
/// square-free). Without a sqrt term the field must be supplied by the caller.
inline QuadElem parse_quad_elem(const std::string& text,
                                std::optional<QuadField> field = std::nullopt) {
    detail::ElemParser p(text);
    Rational a(0), b(0);
    long d_seen = 0;
    bool first = true;
    while (!p.eof()) {
        int sign = 1;
        if (p.peek() == '+' || p.peek() == '-') {
            sign = p.peek() == '-' ? -1 : 1;
            ++p.i;
        } else if (!first) {
            throw std::invalid_argument("expected '+' or '-' in '" + text + "'");
        }
        auto [coef, radicand] = p.parse_term(sign);
        if (radicand == 0) {
            a += coef;
        } else {
            if (radicand < 2) throw std::invalid_argument("sqrt argument must be >= 2");
            auto [s, d] = squarefree_decompose(Integer(radicand));
            if (is_perfect_square(Integer(radicand)))
                throw std::invalid_argument("sqrt of a perfect square; write a rational instead");
            long dd = d.get_si();
            if (d_seen != 0 && d_seen != dd)
                throw std::invalid_argument("mixed radicands in '" + text + "'");
            d_seen = dd;
            b += coef * Rational(s);
        }
        first = false;
    }
    if (first) throw std::invalid_argument("empty element literal");
    if (d_seen == 0) {
        if (!field) throw std::invalid_argument("rational literal needs an explicit field");
        return QuadElem(*field, a, b);
    }
    QuadField f = field ? *field : QuadField(d_seen);
    if (field && field->d != d_seen)
        throw std::invalid_argument("radicand disagrees with the analysis field");
    return QuadElem(f, a, b);
}

}  // namespace aperiodic
