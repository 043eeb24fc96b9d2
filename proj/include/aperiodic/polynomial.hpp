// polynomial.hpp -- dense univariate polynomials over the rationals, with the
// exact real-root toolkit used by the spectral classifier: Sturm chains,
// root counting on intervals and at infinity, and real-root isolation by
// rational bisection. Roots are either exact rationals or arbitrarily
// refinable open intervals with rational endpoints.

#pragma once

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace aperiodic {

class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

    static Poly constant(Rational v) { return Poly(std::vector<Rational>{std::move(v)}); }
    static Poly monomial(Rational coef, size_t deg) {
        std::vector<Rational> c(deg + 1, Rational(0));
        c[deg] = std::move(coef);
        return Poly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational coeff(size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const Rational& lead() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    Rational eval(const Rational& x) const {  // Horner
        Rational r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    int sign_at(const Rational& x) const { return sgn(eval(x)); }

    int sign_at_pos_inf() const { return c_.empty() ? 0 : sgn(c_.back()); }
    int sign_at_neg_inf() const {
        if (c_.empty()) return 0;
        int s = sgn(c_.back());
        return (degree() % 2 == 0) ? s : -s;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<Rational> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
        return Poly(std::move(d));
    }

    Poly operator-() const {
        std::vector<Rational> r(c_);
        for (auto& x : r) x = -x;
        return Poly(std::move(r));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Rational& s) {
        std::vector<Rational> r(a.c_);
        for (auto& x : r) x *= s;
        return Poly(std::move(r));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Euclidean division; remainder has degree < deg(b).
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<Rational> rem(a.c_);
        std::vector<Rational> quot;
        int db = b.degree();
        if (a.degree() >= db) quot.assign(a.degree() - db + 1, Rational(0));
        for (int i = a.degree(); i >= db; --i) {
            Rational q = rem[i] / b.c_.back();
            if (q != 0) {
                quot[i - db] = q;
                for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b.c_[j];
            }
            rem[i] = 0;
        }
        return {Poly(std::move(quot)), Poly(std::move(rem))};
    }

    /// Exact quotient; throws if the division leaves a remainder.
    static Poly div_exact(const Poly& a, const Poly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw std::logic_error("polynomial division was not exact");
        return q;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * (Rational(1) / lead());
    }

    /// Coefficients reversed: x^n p(1/x).
    Poly reversed() const {
        std::vector<Rational> r(c_.rbegin(), c_.rend());
        return Poly(std::move(r));
    }

    /// Scales to integer coefficients with content 1 and positive leading term.
    Poly primitive_integer() const {
        if (is_zero()) return *this;
        Integer l(1);
        for (const auto& q : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), denom(q).get_mpz_t());
        Integer g(0);
        std::vector<Rational> r(c_);
        for (auto& q : r) {
            q *= Rational(l);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), numer(q).get_mpz_t());
        }
        if (g == 0) g = 1;
        for (auto& q : r) q /= Rational(g);
        Poly out(std::move(r));
        if (sgn(out.lead()) < 0) out = -out;
        return out;
    }

    /// 1 + max |c_i / lead| strictly bounds the modulus of every root.
    Rational root_bound() const {
        if (is_zero()) throw std::domain_error("root bound of zero polynomial");
        Rational m(0);
        for (size_t i = 0; i + 1 < c_.size(); ++i) {
            Rational t = abs(c_[i] / c_.back());
            if (t > m) m = t;
        }
        return m + 1;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = Poly::divmod(a, b).second;
        a = std::move(b);
        b = r.is_zero() ? r : r.monic();
    }
    return a.is_zero() ? a : a.monic();
}

inline Poly squarefree_part(const Poly& p) {
    if (p.degree() <= 1) return p.is_zero() ? p : p.monic();
    Poly g = gcd(p, p.derivative());
    if (g.degree() == 0) return p.monic();
    return Poly::div_exact(p, g).monic();
}

// ---------------------------------------------------------------------------
// Sturm chains and real-root counting
// ---------------------------------------------------------------------------

inline std::vector<Poly> sturm_chain(const Poly& p) {
    std::vector<Poly> chain;
    if (p.is_zero()) return chain;
    chain.push_back(p);
    Poly d = p.derivative();
    if (!d.is_zero()) chain.push_back(d);
    while (chain.size() >= 2 && !chain.back().is_zero()) {
        Poly r = -Poly::divmod(chain[chain.size() - 2], chain.back()).second;
        if (r.is_zero()) break;
        // scale by a positive constant only; signs carry the information
        chain.push_back(r * (Rational(1) / abs(Rational(r.lead()))));
    }
    return chain;
}

namespace detail {

inline int sign_variations(const std::vector<int>& signs) {
    int v = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

inline int variations_at(const std::vector<Poly>& chain, const Rational& x) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& q : chain) signs.push_back(q.sign_at(x));
    return sign_variations(signs);
}

inline int variations_at_pos_inf(const std::vector<Poly>& chain) {
    std::vector<int> signs;
    for (const auto& q : chain) signs.push_back(q.sign_at_pos_inf());
    return sign_variations(signs);
}

inline int variations_at_neg_inf(const std::vector<Poly>& chain) {
    std::vector<int> signs;
    for (const auto& q : chain) signs.push_back(q.sign_at_neg_inf());
    return sign_variations(signs);
}

}  // namespace detail

/// Number of distinct real roots of p in the open interval (a, b).
/// Requires p(a) != 0 and p(b) != 0.
inline int count_real_roots(const Poly& p, const Rational& a, const Rational& b) {
    if (p.is_zero()) throw std::domain_error("root count of zero polynomial");
    Poly q = squarefree_part(p);
    if (q.sign_at(a) == 0 || q.sign_at(b) == 0)
        throw std::invalid_argument("count_real_roots endpoints must not be roots");
    auto chain = sturm_chain(q);
    return detail::variations_at(chain, a) - detail::variations_at(chain, b);
}

/// Number of distinct real roots of p on the whole line.
inline int count_real_roots(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("root count of zero polynomial");
    if (p.degree() == 0) return 0;
    Poly q = squarefree_part(p);
    auto chain = sturm_chain(q);
    return detail::variations_at_neg_inf(chain) - detail::variations_at_pos_inf(chain);
}

// ---------------------------------------------------------------------------
// Real-root isolation
// ---------------------------------------------------------------------------

/// A real algebraic number: either an exact rational, or the unique root of
/// `poly` inside the open interval (lo, hi) whose endpoints are not roots.
struct RootInterval {
    Poly poly;  // squarefree witness
    Rational lo, hi;
    bool exact = false;  // when true the root is exactly lo (== hi)

    Rational midpoint() const { return exact ? lo : (lo + hi) / 2; }

    void bisect() {
        if (exact) return;
        Rational mid = (lo + hi) / 2;
        int sm = poly.sign_at(mid);
        if (sm == 0) {
            lo = hi = mid;
            exact = true;
            return;
        }
        if (poly.sign_at(lo) * sm < 0)
            hi = mid;
        else
            lo = mid;
    }

    void refine_below(const Rational& width) {
        while (!exact && hi - lo >= width) bisect();
    }
};

namespace detail {

// non-root sample point in (lo, hi), biased toward `near`
inline Rational nonroot_near(const Poly& p, const Rational& near, const Rational& lo,
                             const Rational& hi) {
    for (long k = 4;; k *= 2) {
        for (int dir : {1, -1}) {
            Rational cand = near + Rational(dir) * (hi - lo) / Rational(k);
            if (cand > lo && cand < hi && p.sign_at(cand) != 0) return cand;
        }
    }
}

inline void isolate_rec(const Poly& p, const std::vector<Poly>& chain, const Rational& lo,
                        const Rational& hi, int count, std::vector<RootInterval>& out) {
    if (count == 0) return;
    if (count == 1) {
        out.push_back(RootInterval{p, lo, hi, false});
        return;
    }
    Rational mid = (lo + hi) / 2;
    if (p.sign_at(mid) == 0) {
        out.push_back(RootInterval{p, mid, mid, true});
        // carve out an interval around the exact root containing no other root
        Rational ml = nonroot_near(p, mid, lo, mid);
        Rational mr = nonroot_near(p, mid, mid, hi);
        while (detail::variations_at(chain, ml) - detail::variations_at(chain, mr) > 1) {
            ml = nonroot_near(p, mid, ml, mid);
            mr = nonroot_near(p, mid, mid, mr);
        }
        int left = detail::variations_at(chain, lo) - detail::variations_at(chain, ml);
        int right = detail::variations_at(chain, mr) - detail::variations_at(chain, hi);
        isolate_rec(p, chain, lo, ml, left, out);
        isolate_rec(p, chain, mr, hi, right, out);
        return;
    }
    int left = detail::variations_at(chain, lo) - detail::variations_at(chain, mid);
    isolate_rec(p, chain, lo, mid, left, out);
    isolate_rec(p, chain, mid, hi, count - left, out);
}

}  // namespace detail

/// All real roots of p, sorted increasingly, as exact points or isolating
/// intervals (pairwise disjoint).
inline std::vector<RootInterval> isolate_real_roots(const Poly& p) {
    std::vector<RootInterval> out;
    if (p.is_zero() || p.degree() == 0) return out;
    Poly q = squarefree_part(p);
    Rational bound = q.root_bound();
    auto chain = sturm_chain(q);
    int total = detail::variations_at(chain, -bound) - detail::variations_at(chain, bound);
    detail::isolate_rec(q, chain, -bound, bound, total, out);
    std::sort(out.begin(), out.end(),
              [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
    return out;
}

/// Exact sign of q at the root described by r; requires q(root) != 0.
inline int sign_at_root(const Poly& q, RootInterval r) {
    if (r.exact) {
        int s = q.sign_at(r.lo);
        if (s == 0) throw std::invalid_argument("sign_at_root: q vanishes at the root");
        return s;
    }
    Poly qs = squarefree_part(q);
    while (true) {
        bool lo_ok = qs.sign_at(r.lo) != 0, hi_ok = qs.sign_at(r.hi) != 0;
        if (lo_ok && hi_ok && count_real_roots(qs, r.lo, r.hi) == 0) break;
        r.bisect();
        if (r.exact) return sign_at_root(q, r);
    }
    return q.sign_at(r.midpoint());
}

}  // namespace aperiodic
