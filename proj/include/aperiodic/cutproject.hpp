// cutproject.hpp -- one-dimensional cut-and-project sets
//
//     Sigma_{eps,eta}([c,d)) = { a + b*eta : a,b in Z, c <= a + b*eps < d },
//
// their lattice symmetries (unimodular transforms, translations), Kesten's
// bounded-distance criterion, and the gap coding of the ordered point set.
// All membership tests and window arithmetic are exact in Q(sqrt(D)); floats
// only appear as sort keys with an exact tie-break.

#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadfield.hpp"
#include "words.hpp"

namespace aperiodic {

inline size_t default_point_budget() {
    if (const char* e = std::getenv("APERIODIC_BUDGET")) {
        long v = std::atol(e);
        if (v > 0) return static_cast<size_t>(v);
    }
    return 8'000'000;
}

struct CapSpec {
    QuadElem eps, eta;
    QuadElem win_lo, win_hi;  // half-open acceptance window [win_lo, win_hi)

    CapSpec(QuadElem eps_, QuadElem eta_, QuadElem lo_, QuadElem hi_)
        : eps(std::move(eps_)), eta(std::move(eta_)), win_lo(std::move(lo_)),
          win_hi(std::move(hi_)) {
        if (!(eps.field() == eta.field()) || !(eps.field() == win_lo.field()) ||
            !(eps.field() == win_hi.field()))
            throw std::invalid_argument("cut-and-project data must share one field");
        if (eps.is_rational() || eta.is_rational())
            throw std::invalid_argument("eps and eta must be irrational");
        if (eps == eta) throw std::invalid_argument("eps and eta must differ");
        if (!(win_lo < win_hi)) throw std::invalid_argument("empty acceptance window");
    }

    QuadElem window_length() const { return win_hi - win_lo; }

    /// star map on the lattice Z + Z*eta: (a + b*eta)* = a + b*eps
    QuadElem star_of(long a, long b) const {
        return QuadElem(eps.field(), Rational(a), Rational(0)) + eps * Rational(b);
    }

    QuadElem value_of(long a, long b) const {
        return QuadElem(eta.field(), Rational(a), Rational(0)) + eta * Rational(b);
    }
};

/// Lattice point a + b*eta whose star a + b*eps lies in the window.
struct CapPoint {
    long a = 0, b = 0;
    double approx = 0;  // sort key and report value; decisions stay exact
};

inline QuadElem cap_value(const CapSpec& spec, const CapPoint& p) {
    return spec.value_of(p.a, p.b);
}
inline QuadElem cap_star(const CapSpec& spec, const CapPoint& p) {
    return spec.star_of(p.a, p.b);
}

/// All points of the set with value in [lo, hi], sorted increasingly by value.
/// Enumerates b over the exact integer interval forced by window and range;
/// for each b the admissible a form an explicit integer interval.
inline std::vector<CapPoint> generate(const CapSpec& spec, const QuadElem& lo,
                                      const QuadElem& hi,
                                      size_t budget = default_point_budget()) {
    if (!(lo.field() == spec.eps.field()))
        throw std::invalid_argument("range endpoints must live in the analysis field");
    if (!(lo <= hi)) throw std::invalid_argument("empty range");

    QuadElem diff = spec.eta - spec.eps;
    // subtracting the two constraints: lo - d < b*(eta - eps) <= hi - c
    Integer b_min, b_max;
    if (diff.sign() > 0) {
        b_min = floor_elem((lo - spec.win_hi) / diff) + 1;
        b_max = floor_elem((hi - spec.win_lo) / diff);
    } else {
        b_min = ceil_elem((hi - spec.win_lo) / diff);
        b_max = ceil_elem((lo - spec.win_hi) / diff) - 1;
    }
    if (b_min > b_max) return {};
    if (!b_min.fits_slong_p() || !b_max.fits_slong_p())
        throw std::overflow_error("cut-and-project range too large for this build");

    double eta_d = spec.eta.approx();
    std::vector<CapPoint> out;

    // Each bound ceil(x0 - b*t) (resp. floor) is maintained incrementally:
    // with t = floor(t) + {t}, stepping b by one shifts the bound by -floor(t)
    // and the fractional defect by {t}, renormalized with one exact compare.
    const QuadField& fld = spec.eps.field();
    QuadElem one(fld, 1);
    struct Tracker {
        Integer base;     // current ceil/floor value
        QuadElem defect;  // ceil(x) - x in [0,1), or x - floor(x) for floors
        Integer step;     // floor of the decrement t
        QuadElem frac;    // {t} in [0,1)
        bool is_ceil;

        Tracker(const QuadElem& x0, const QuadElem& t, bool ceil_mode)
            : base(0), defect(x0), step(floor_elem(t)), frac(t), is_ceil(ceil_mode) {
            frac -= QuadElem(x0.field(), Rational(step), Rational(0));
            base = ceil_mode ? ceil_elem(x0) : floor_elem(x0);
            QuadElem b0(x0.field(), Rational(base), Rational(0));
            defect = ceil_mode ? b0 - x0 : x0 - b0;
        }

        // advance from ceil/floor(x - k t) to ceil/floor(x - (k+1) t)
        void advance(const QuadElem& one) {
            base -= step;
            // new defect candidate: defect + frac for ceil, defect - frac for floor
            if (is_ceil) {
                defect += frac;
                if (!(defect < one)) {
                    defect -= one;
                    base -= 1;
                }
            } else {
                defect -= frac;
                if (defect.sign() < 0) {
                    defect += one;
                    base -= 1;
                }
            }
        }
    };

    long b0 = b_min.get_si();
    QuadElem start_star = spec.eps * Rational(b0);
    QuadElem start_val = spec.eta * Rational(b0);
    Tracker lo_star(spec.win_lo - start_star, spec.eps, true);
    Tracker hi_star(spec.win_hi - start_star, spec.eps, true);
    Tracker lo_val(lo - start_val, spec.eta, true);
    Tracker hi_val(hi - start_val, spec.eta, false);

    for (long b = b0;; ++b) {
        Integer a_lo = std::max(lo_star.base, lo_val.base);
        // star constraint a < win_hi - b*eps is strict: a <= ceil(...) - 1
        Integer a_hi_s = hi_star.base - 1;
        Integer a_hi = std::min(a_hi_s, hi_val.base);
        if (a_lo <= a_hi) {
            if (!a_lo.fits_slong_p() || !a_hi.fits_slong_p())
                throw std::overflow_error("cut-and-project coordinates exceed long range");
            for (long a = a_lo.get_si(); a <= a_hi.get_si(); ++a) {
                if (out.size() >= budget)
                    throw std::length_error("point budget exceeded (see APERIODIC_BUDGET)");
                out.push_back(
                    CapPoint{a, b, static_cast<double>(a) + static_cast<double>(b) * eta_d});
            }
        }
        if (b == b_max.get_si()) break;
        lo_star.advance(one);
        hi_star.advance(one);
        lo_val.advance(one);
        hi_val.advance(one);
    }
    std::sort(out.begin(), out.end(), [&](const CapPoint& x, const CapPoint& y) {
        double scale = 1.0 + std::max(std::abs(x.approx), std::abs(y.approx));
        if (std::abs(x.approx - y.approx) > 1e-6 * scale) return x.approx < y.approx;
        return cap_value(spec, x) < cap_value(spec, y);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Kesten criterion
// ---------------------------------------------------------------------------

struct KestenVerdict {
    bool bdl = false;
    Rational p, q;                 // window length written as p + q*eps
    std::optional<QuadElem> step;  // lattice step |eta - eps| / (d - c) when BDL
};

/// [c,d) is a bounded-remainder window iff d - c lies in Z + Z*eps. The
/// representation d - c = p + q*eps is unique since eps is irrational.
inline KestenVerdict kesten_decide(const CapSpec& spec) {
    QuadElem len = spec.window_length();
    KestenVerdict v;
    v.q = len.root_part() / spec.eps.root_part();
    v.p = len.rational_part() - v.q * spec.eps.rational_part();
    v.bdl = (denom(v.p) == 1 && denom(v.q) == 1);
    if (v.bdl) v.step = (spec.eta - spec.eps).abs() / len;
    return v;
}

// ---------------------------------------------------------------------------
// Lattice symmetries
// ---------------------------------------------------------------------------

struct TransformResult {
    CapSpec spec;
    QuadElem scale;  // Sigma_old = scale * Sigma_new
};

/// Unimodular change of lattice basis:
///   Sigma_{eps,eta}(W) = (A + C*eta) * Sigma_{eps~,eta~}(W / (A + C*eps)),
///   eps~ = (B + D*eps)/(A + C*eps),  eta~ = (B + D*eta)/(A + C*eta).
/// When A + C*eps < 0 the image window flips its half-open side; the returned
/// spec keeps the [c,d) convention, which can move at most one boundary point.
inline TransformResult unimodular_transform(const CapSpec& spec, long A, long B, long C,
                                            long D) {
    long det = A * D - B * C;
    if (det != 1 && det != -1)
        throw std::invalid_argument("matrix must be unimodular (det = +-1)");
    const QuadField& f = spec.eps.field();
    auto lift = [&](long x) { return QuadElem(f, x); };
    QuadElem den_star = lift(A) + lift(C) * spec.eps;
    QuadElem den_val = lift(A) + lift(C) * spec.eta;
    if (den_star.is_zero() || den_val.is_zero())
        throw std::invalid_argument("degenerate transform: A + C*eps or A + C*eta vanishes");
    QuadElem neps = (lift(B) + lift(D) * spec.eps) / den_star;
    QuadElem neta = (lift(B) + lift(D) * spec.eta) / den_val;
    QuadElem w1 = spec.win_lo / den_star;
    QuadElem w2 = spec.win_hi / den_star;
    if (den_star.sign() < 0) std::swap(w1, w2);
    return TransformResult{CapSpec(neps, neta, w1, w2), den_val};
}

/// Translation symmetry: Sigma + (a + b*eta) = Sigma(window + a + b*eps).
inline CapSpec translate(const CapSpec& spec, long a, long b) {
    QuadElem shift = spec.star_of(a, b);
    return CapSpec(spec.eps, spec.eta, spec.win_lo + shift, spec.win_hi + shift);
}

/// Window slid (by a lattice translation) so its left end lies in [0,1);
/// never applied silently by any other operation.
inline CapSpec normalize_window_position(const CapSpec& spec) {
    Integer k = floor_elem(spec.win_lo);
    if (!k.fits_slong_p()) throw std::overflow_error("window offset too large");
    return translate(spec, -k.get_si(), 0);
}

struct NormalizedCap {
    CapSpec spec;          // eps in (0,1), window left end in [0,1)
    QuadElem value_shift;  // Sigma_original = Sigma_normalized - value_shift
};

/// The reduction used before applying the bounded-remainder criterion:
/// eps is brought into (0,1) by the shear (1,-floor(eps);0,1), which keeps the
/// point set identical, then the window slides into [0,1) by a lattice
/// translation. Offered as a helper only; no operation applies it silently.
/// (A window longer than 1 cannot fit inside [0,1); only its left end is
/// normalized then.)
inline NormalizedCap normalize_parameters(const CapSpec& spec) {
    Integer k = floor_elem(spec.eps);
    if (!k.fits_slong_p()) throw std::overflow_error("eps offset too large");
    auto [sheared, scale] = unimodular_transform(spec, 1, -k.get_si(), 0, 1);
    Integer a = floor_elem(sheared.win_lo);
    if (!a.fits_slong_p()) throw std::overflow_error("window offset too large");
    CapSpec slid = translate(sheared, -a.get_si(), 0);
    return NormalizedCap{slid, slid.value_of(-a.get_si(), 0)};
}

// ---------------------------------------------------------------------------
// Gap coding
// ---------------------------------------------------------------------------

/// Distinct consecutive gaps (two or three for any cut-and-project set),
/// lettered A,B,C by descending gap, plus the coded word. The origin of the
/// word sits at the gap leaving the smallest non-negative point.
struct GapCoding {
    std::vector<QuadElem> gaps;  // descending
    WordWindow word;
};

inline GapCoding gap_code(const CapSpec& spec, const std::vector<CapPoint>& points) {
    if (points.size() < 2)
        throw std::invalid_argument("gap coding needs at least two points");
    std::vector<QuadElem> gaps;
    std::vector<uint8_t> which(points.size() - 1);
    for (size_t i = 0; i + 1 < points.size(); ++i) {
        QuadElem g = cap_value(spec, points[i + 1]) - cap_value(spec, points[i]);
        size_t k = 0;
        while (k < gaps.size() && !(gaps[k] == g)) ++k;
        if (k == gaps.size()) {
            gaps.push_back(g);
            if (gaps.size() > 3)
                throw std::logic_error(
                    "more than three distinct gaps; generation produced a non-contiguous slice");
        }
        which[i] = static_cast<uint8_t>(k);
    }
    // relabel by descending gap value
    std::vector<size_t> order(gaps.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t x, size_t y) { return gaps[y] < gaps[x]; });
    std::vector<uint8_t> rank(gaps.size());
    for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<uint8_t>(i);
    std::vector<QuadElem> sorted_gaps;
    for (size_t i : order) sorted_gaps.push_back(gaps[i]);
    for (auto& w : which) w = rank[w];

    size_t origin = points.size() - 1;
    for (size_t i = 0; i < points.size(); ++i) {
        if (cap_value(spec, points[i]).sign() >= 0) {
            origin = i;
            break;
        }
    }
    origin = std::min(origin, which.size());
    Alphabet alphabet(std::string("ABC").substr(0, std::max<size_t>(gaps.size(), 1)));
    return GapCoding{std::move(sorted_gaps),
                     WordWindow(alphabet, std::move(which), origin)};
}

}  // namespace aperiodic
