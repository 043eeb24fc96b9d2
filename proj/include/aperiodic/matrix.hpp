// matrix.hpp -- small exact integer matrices (incidence matrices and their
// powers) plus the characteristic polynomial via Faddeev-LeVerrier, whose
// divisions are exact over the integers.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "polynomial.hpp"
#include "rational.hpp"

namespace aperiodic {

class IntMatrix {
public:
    IntMatrix() : n_(0) {}
    explicit IntMatrix(size_t n) : n_(n), e_(n * n, Integer(0)) {}

    static IntMatrix identity(size_t n) {
        IntMatrix m(n);
        for (size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    size_t size() const { return n_; }

    Integer& operator()(size_t r, size_t c) { return e_[r * n_ + c]; }
    const Integer& operator()(size_t r, size_t c) const { return e_[r * n_ + c]; }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("matrix size mismatch");
        IntMatrix r(a.n_);
        for (size_t i = 0; i < a.n_; ++i)
            for (size_t k = 0; k < a.n_; ++k) {
                const Integer& aik = a(i, k);
                if (aik == 0) continue;
                for (size_t j = 0; j < a.n_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("matrix size mismatch");
        IntMatrix r(a.n_);
        for (size_t i = 0; i < a.n_ * a.n_; ++i) r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    IntMatrix transposed() const {
        IntMatrix r(n_);
        for (size_t i = 0; i < n_; ++i)
            for (size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    IntMatrix pow(unsigned long k) const {
        IntMatrix r = identity(n_), base = *this;
        while (k) {
            if (k & 1) r = r * base;
            base = base * base;
            k >>= 1;
        }
        return r;
    }

    std::vector<Integer> apply(const std::vector<Integer>& v) const {
        if (v.size() != n_) throw std::invalid_argument("vector size mismatch");
        std::vector<Integer> r(n_, Integer(0));
        for (size_t i = 0; i < n_; ++i)
            for (size_t j = 0; j < n_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    Integer trace() const {
        Integer t(0);
        for (size_t i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    bool is_nonnegative() const {
        for (const auto& x : e_) if (x < 0) return false;
        return true;
    }

    bool is_positive() const {
        for (const auto& x : e_) if (x <= 0) return false;
        return true;
    }

private:
    size_t n_;
    std::vector<Integer> e_;
};

/// Is some power of M (entrywise) positive? Checked on the boolean support
/// up to the Wielandt exponent (n-1)^2 + 1, so entries never blow up.
inline bool is_primitive(const IntMatrix& m) {
    size_t n = m.size();
    if (n == 0) return false;
    std::vector<std::vector<bool>> b(n, std::vector<bool>(n, false));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) b[i][j] = m(i, j) > 0;
    auto all_true = [&](const std::vector<std::vector<bool>>& x) {
        for (const auto& row : x)
            for (bool v : row)
                if (!v) return false;
        return true;
    };
    unsigned long limit = (n - 1) * (n - 1) + 1;
    auto cur = b;
    for (unsigned long k = 1; k <= limit; ++k) {
        if (all_true(cur)) return true;
        std::vector<std::vector<bool>> nxt(n, std::vector<bool>(n, false));
        for (size_t i = 0; i < n; ++i)
            for (size_t t = 0; t < n; ++t)
                if (cur[i][t])
                    for (size_t j = 0; j < n; ++j)
                        if (b[t][j]) nxt[i][j] = true;
        cur = std::move(nxt);
    }
    return all_true(cur);
}

/// Monic characteristic polynomial det(xI - M), exact integer coefficients.
/// Faddeev-LeVerrier: M_1 = M, c_k = -tr(M M_{k-1} ...)/k, all divisions exact.
inline Poly char_poly(const IntMatrix& m) {
    size_t n = m.size();
    std::vector<Rational> coeffs(n + 1, Rational(0));
    coeffs[n] = 1;
    IntMatrix mk = m;
    std::vector<Integer> cs(n + 1);  // cs[k] is the coefficient of x^(n-k)
    cs[0] = 1;
    for (size_t k = 1; k <= n; ++k) {
        Integer t = mk.trace();
        if (t % Integer(static_cast<long>(k)) != 0)
            throw std::logic_error("Faddeev-LeVerrier division was not exact");
        cs[k] = -t / Integer(static_cast<long>(k));
        if (k < n) {
            IntMatrix shifted = mk;
            for (size_t i = 0; i < n; ++i) shifted(i, i) += cs[k];
            mk = m * shifted;
        }
    }
    for (size_t k = 0; k <= n; ++k) coeffs[n - k] = Rational(cs[k]);
    return Poly(std::move(coeffs));
}

/// p evaluated at the matrix M (for Cayley-Hamilton style checks).
inline IntMatrix eval_at_matrix(const Poly& p, const IntMatrix& m) {
    size_t n = m.size();
    IntMatrix acc(n);
    IntMatrix pw = IntMatrix::identity(n);
    for (int i = 0; i <= p.degree(); ++i) {
        Rational ci = p.coeff(static_cast<size_t>(i));
        if (denom(ci) != 1) throw std::invalid_argument("integer polynomial required");
        if (ci != 0) {
            for (size_t r = 0; r < n; ++r)
                for (size_t c = 0; c < n; ++c) acc(r, c) += numer(ci) * pw(r, c);
        }
        if (i < p.degree()) pw = pw * m;
    }
    return acc;
}

}  // namespace aperiodic
