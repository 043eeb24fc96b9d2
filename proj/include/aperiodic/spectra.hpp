// spectra.hpp -- spectra of quadratic Pisot units
//
//     X^D(alpha) = { sum a_i alpha^i : n in N, a_i in D },  D = {m,...,M},
//
// with alpha = +-beta for a quadratic Pisot unit beta. Two generation routes:
// direct digit-polynomial evaluation (with exact dedup and range pruning), and
// the cut-and-project identification X^D(alpha) = Sigma_{beta',beta}(Omega)
// with Omega derived from the representation interval of base 1/alpha'. The
// BDL decision is the divisibility criterion on #D - 1; the average lattice
// step is xi = (beta - beta')(1 - |beta'|)/(#D - 1), cross-checked exactly
// against Kesten's lattice step.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cutproject.hpp"
#include "quadfield.hpp"

namespace aperiodic {

struct SpectrumSpec {
    enum class Sign { Plus, Minus };

    PisotUnit unit;
    Sign sign;
    long digit_min, digit_max;  // consecutive digits {m, ..., M}

    SpectrumSpec(PisotUnit u, Sign s, long m, long M)
        : unit(std::move(u)), sign(s), digit_min(m), digit_max(M) {
        if (!(m <= 0 && 0 < M))
            throw std::invalid_argument("digit alphabet must satisfy m <= 0 < M");
        if (sign == Sign::Plus && m > -1)
            throw std::invalid_argument("positive base needs {-1,0,1} inside the alphabet");
    }

    long digit_count() const { return digit_max - digit_min + 1; }

    /// Delone prerequisite #D > beta; required by the cut-and-project
    /// identification. Sparse alphabets may still be generated directly and
    /// judged by the divisibility criterion.
    bool is_delone() const { return unit.beta < QuadElem(unit.field, digit_count()); }

    QuadElem alpha() const { return sign == Sign::Plus ? unit.beta : -unit.beta; }
    QuadElem alpha_conj() const {
        return sign == Sign::Plus ? unit.beta_conj : -unit.beta_conj;
    }
};

/// All invariants including the Delone prerequisite, verified exactly.
inline SpectrumSpec validate(SpectrumSpec spec) {
    if (!spec.is_delone())
        throw std::invalid_argument("#D must exceed beta for a relatively dense spectrum");
    return spec;
}

// ---------------------------------------------------------------------------
// Representation interval and the cut-and-project identification
// ---------------------------------------------------------------------------

/// Closed interval of numbers representable in base 1/alpha' with digits D:
///   [m,M]/(1-alpha')                              when 1/alpha' > 1,
///   [(M + m/alpha'), (M/alpha' + m)]*alpha'/(1-alpha'^2)   when 1/alpha' < -1.
struct RepInterval {
    QuadElem lo, hi;
};

inline RepInterval rep_interval(const SpectrumSpec& spec) {
    const QuadField& f = spec.unit.field;
    QuadElem one(f, 1);
    QuadElem ac = spec.alpha_conj();
    QuadElem gamma = one / ac;  // |gamma| > 1 since |alpha'| < 1
    QuadElem m(f, spec.digit_min), M(f, spec.digit_max);
    // closed-form branch needs M - m > |1/alpha'| - 1
    if (!(gamma.abs() < QuadElem(f, spec.digit_count())))
        throw std::invalid_argument("alphabet too small for the closed-form interval");
    RepInterval out{QuadElem(f, 0), QuadElem(f, 0)};
    if (gamma > one) {
        QuadElem d = one - ac;
        out.lo = m / d;
        out.hi = M / d;
    } else {
        QuadElem scale = ac / (one - ac * ac);
        out.lo = (M + m * gamma) * scale;
        out.hi = (M * gamma + m) * scale;
    }
    if (!(out.lo < out.hi)) throw std::logic_error("degenerate representation interval");
    if (out.lo.sign() > 0 || out.hi.sign() < 0)
        throw std::logic_error("representation interval must contain 0");
    return out;
}

/// X^D(alpha) = Sigma_{beta',beta}(Omega) with Omega = [inf I, sup I). The
/// half-open right end can move at most two boundary points relative to
/// I-interior union {0}.
inline CapSpec cap_spec_of(const SpectrumSpec& spec) {
    RepInterval I = rep_interval(spec);
    return CapSpec(spec.unit.beta_conj, spec.unit.beta, I.lo, I.hi);
}

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

/// All values of digit polynomials of degree <= max_degree, deduplicated and
/// sorted, exactly. With `clip` the result is restricted to [-clip, clip] and
/// intermediate sets are pruned by the exact reachability bound, which keeps
/// the dynamic programming linear in the output size.
inline std::vector<QuadElem> generate_direct(const SpectrumSpec& spec, unsigned max_degree,
                                             std::optional<Rational> clip = std::nullopt,
                                             size_t budget = default_point_budget(),
                                             bool unsafe = false) {
    if (max_degree > 16 && !unsafe)
        throw std::invalid_argument("max_degree > 16 needs the unsafe override");
    const QuadField& f = spec.unit.field;
    QuadElem alpha = spec.alpha();
    QuadElem beta = spec.unit.beta;

    long mabs = std::max(std::labs(spec.digit_min), std::labs(spec.digit_max));
    std::vector<QuadElem> digits;
    for (long d = spec.digit_min; d <= spec.digit_max; ++d) digits.emplace_back(f, d);

    // reachability bounds: a stage-k value v only matters when
    // |v| <= (clip + W_j)/beta^j, j = max_degree - k, W_j = mabs (beta^j-1)/(beta-1)
    std::vector<QuadElem> bound;
    if (clip) {
        QuadElem clip_e(f, *clip, Rational(0));
        QuadElem pow(f, 1);
        QuadElem one(f, 1);
        bound.assign(max_degree + 1, clip_e);
        for (unsigned j = 0; j <= max_degree; ++j) {
            QuadElem w = QuadElem(f, mabs) * (pow - one) / (beta - one);
            bound[j] = (clip_e + w) / pow;
            pow *= beta;
        }
        // bound[j] indexed by remaining steps j; stage k uses j = max_degree - k
    }

    auto sort_unique = [](std::vector<QuadElem>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };

    std::vector<QuadElem> values = digits;
    sort_unique(values);
    for (unsigned k = 1; k <= max_degree; ++k) {
        std::vector<QuadElem> next;
        next.reserve(values.size() * digits.size());
        for (const auto& v : values) {
            QuadElem shifted = alpha * v;
            for (const auto& d : digits) {
                QuadElem x = shifted + d;
                if (clip && bound[max_degree - k] < x.abs()) continue;
                if (next.size() >= budget)
                    throw std::length_error("spectrum budget exceeded (see APERIODIC_BUDGET)");
                next.push_back(std::move(x));
            }
        }
        sort_unique(next);
        values = std::move(next);
    }
    if (clip) {
        QuadElem clip_e(f, *clip, Rational(0));
        std::erase_if(values, [&](const QuadElem& x) { return clip_e < x.abs(); });
    }
    return values;
}

/// Spectrum restricted to [lo, hi] through the cut-and-project route.
inline std::vector<QuadElem> generate_cap(const SpectrumSpec& spec, const QuadElem& lo,
                                          const QuadElem& hi,
                                          size_t budget = default_point_budget()) {
    CapSpec cap = cap_spec_of(spec);
    std::vector<QuadElem> out;
    for (const auto& p : generate(cap, lo, hi, budget)) out.push_back(cap_value(cap, p));
    return out;
}

// ---------------------------------------------------------------------------
// BDL decision and the average lattice
// ---------------------------------------------------------------------------

struct SpectrumBdlVerdict {
    bool bdl = false;
    long divisor = 0;   // floor(beta) or floor(beta)-1 depending on sign(beta')
    long quantity = 0;  // #D - 1
    std::string reason;
};

/// X^D(alpha) is BDL iff floor(beta) | #D-1 (beta' < 0) or
/// floor(beta)-1 | #D-1 (beta' > 0).
inline SpectrumBdlVerdict bdl_decide(const SpectrumSpec& spec) {
    SpectrumBdlVerdict v;
    bool conj_negative = spec.unit.beta_conj.sign() < 0;
    v.divisor = conj_negative ? spec.unit.floor_beta() : spec.unit.floor_beta() - 1;
    v.quantity = spec.digit_count() - 1;
    v.bdl = (v.quantity % v.divisor) == 0;
    v.reason = std::to_string(v.divisor) + (v.bdl ? " divides " : " does not divide ") +
               std::to_string(v.quantity) + " (beta' " + (conj_negative ? "< 0" : "> 0") + ")";
    return v;
}

/// Average lattice step xi = (beta - beta')(1 - |beta'|)/(#D - 1), exact, and
/// verified against the Kesten step |eta - eps| / |Omega| of the identified
/// cut-and-project set.
inline QuadElem average_lattice_xi(const SpectrumSpec& spec) {
    SpectrumBdlVerdict v = bdl_decide(spec);
    if (!v.bdl)
        throw std::domain_error("average lattice is defined only for BDL spectra: " + v.reason);
    const QuadField& f = spec.unit.field;
    QuadElem one(f, 1);
    QuadElem xi = (spec.unit.beta - spec.unit.beta_conj) * (one - spec.unit.beta_conj.abs()) /
                  Rational(spec.digit_count() - 1);
    KestenVerdict k = kesten_decide(cap_spec_of(spec));
    if (!k.bdl || !(*k.step == xi))
        throw std::logic_error("divisibility verdict and Kesten step disagree");
    return xi;
}

}  // namespace aperiodic
