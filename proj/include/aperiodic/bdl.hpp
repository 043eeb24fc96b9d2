// bdl.hpp -- empirical bounded-distance machinery: discrepancy profiles
//
//     right_dev(N) = sup_{0 < N' <= N} | #(Lambda cap [0,N')) - N'/xi |
//
// (and the mirrored left_dev), an advisory boundedness classifier over
// doubling horizons, the explicit bijection witness x_n <-> xi*n, and the 2D
// grid emitter Lambda_1 u + Lambda_2 v. Counts are exact; the sup of the
// piecewise-linear deviation is attained at point abscissae and horizon cuts.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadfield.hpp"

namespace aperiodic {

struct DiscrepancyProfile {
    double xi = 1;
    std::vector<double> horizons;   // increasing
    std::vector<double> right_dev;  // running sup over N' <= N
    std::vector<double> left_dev;   // empty for one-sided data
    bool two_sided = true;
};

namespace detail {

// one-sided sweep: pts are the distances of points from 0 on one side,
// sorted increasingly; returns the running sup at each horizon
inline std::vector<double> sweep_devs(const std::vector<double>& pts, double xi,
                                      const std::vector<double>& horizons) {
    std::vector<double> out;
    out.reserve(horizons.size());
    double running = 0;
    size_t i = 0;
    for (double N : horizons) {
        while (i < pts.size() && pts[i] < N) {
            double at = pts[i] / xi;
            running = std::max(running, std::abs(static_cast<double>(i) - at));
            running = std::max(running, std::abs(static_cast<double>(i + 1) - at));
            ++i;
        }
        out.push_back(std::max(running, std::abs(static_cast<double>(i) - N / xi)));
    }
    return out;
}

}  // namespace detail

/// Profile of a sorted point set against the lattice xi*Z. Horizons must be
/// increasing and covered by the data on each requested side.
inline DiscrepancyProfile discrepancy_profile(const std::vector<double>& sorted_points,
                                              double xi, std::vector<double> horizons,
                                              bool two_sided = true) {
    if (xi <= 0) throw std::invalid_argument("xi must be positive");
    if (horizons.empty()) throw std::invalid_argument("no horizons requested");
    std::sort(horizons.begin(), horizons.end());
    if (sorted_points.empty())
        throw std::invalid_argument("empty point set");
    double max_h = horizons.back();
    if (sorted_points.back() < max_h || (two_sided && sorted_points.front() > -max_h))
        throw std::invalid_argument("points do not cover the largest horizon");

    std::vector<double> right, left;
    auto split = std::lower_bound(sorted_points.begin(), sorted_points.end(), 0.0);
    right.assign(split, sorted_points.end());
    for (auto it = split; it != sorted_points.begin();) {
        --it;
        left.push_back(-*it);
    }
    DiscrepancyProfile p;
    p.xi = xi;
    p.right_dev = detail::sweep_devs(right, xi, horizons);
    p.two_sided = two_sided;
    if (two_sided) p.left_dev = detail::sweep_devs(left, xi, horizons);
    p.horizons = std::move(horizons);
    return p;
}

/// Exact-input variant: point/horizon boundary membership decided by exact
/// comparison whenever the float gap is ambiguous.
inline DiscrepancyProfile discrepancy_profile(const std::vector<QuadElem>& sorted_points,
                                              const QuadElem& xi,
                                              const std::vector<Rational>& horizons,
                                              bool two_sided = true) {
    std::vector<double> pts;
    pts.reserve(sorted_points.size());
    for (size_t i = 0; i < sorted_points.size(); ++i) {
        double a = sorted_points[i].approx();
        // nudge approximations sitting on a horizon to the exact side
        for (const Rational& h : horizons) {
            double hd = to_double(h);
            for (double sgn_h : {1.0, -1.0}) {
                double target = sgn_h * hd;
                if (std::abs(a - target) < 1e-7 * (1 + std::abs(target))) {
                    QuadElem hq(sorted_points[i].field(), sgn_h > 0 ? h : -h, Rational(0));
                    int s = (sorted_points[i] - hq).sign();
                    a = target + (s < 0 ? -1e-9 : (s > 0 ? 1e-9 : 0.0)) * (1 + std::abs(target));
                }
            }
        }
        pts.push_back(a);
    }
    std::vector<double> hs;
    for (const Rational& h : horizons) hs.push_back(to_double(h));
    return discrepancy_profile(pts, xi.approx(), std::move(hs), two_sided);
}

// ---------------------------------------------------------------------------
// Advisory boundedness classification
// ---------------------------------------------------------------------------

enum class BoundednessVerdict { LooksBounded, LooksUnbounded, Inconclusive };

struct BoundednessReport {
    BoundednessVerdict verdict = BoundednessVerdict::Inconclusive;
    std::vector<double> devs;  // per horizon, worst side
    std::string reason;
};

inline const char* to_string(BoundednessVerdict v) {
    switch (v) {
        case BoundednessVerdict::LooksBounded: return "LooksBounded";
        case BoundednessVerdict::LooksUnbounded: return "LooksUnbounded";
        default: return "Inconclusive";
    }
}

/// Heuristic over doubling horizons; advisory only and never overrides a
/// symbolic verdict. LooksUnbounded: each of the last three doubling steps
/// grows the deviation by >= 1.5x. LooksBounded: the final deviation stays
/// within 3x the median of the early third and no recent step jumped.
inline BoundednessReport classify_boundedness(const DiscrepancyProfile& p) {
    if (p.horizons.size() < 4)
        throw std::invalid_argument("classification needs at least 4 doubling horizons");
    BoundednessReport rep;
    size_t n = p.horizons.size();
    rep.devs.resize(n);
    for (size_t i = 0; i < n; ++i) {
        double d = p.right_dev[i];
        if (p.two_sided) d = std::max(d, p.left_dev[i]);
        rep.devs[i] = d;
    }
    auto level = [&](size_t i) { return std::max(rep.devs[i], 1.0); };
    double r1 = level(n - 3) / level(n - 4);
    double r2 = level(n - 2) / level(n - 3);
    double r3 = level(n - 1) / level(n - 2);
    size_t early = std::max<size_t>(3, n / 3);
    std::vector<double> head(rep.devs.begin(), rep.devs.begin() + early);
    std::nth_element(head.begin(), head.begin() + head.size() / 2, head.end());
    double median_early = head[head.size() / 2];

    if (r1 >= 1.5 && r2 >= 1.5 && r3 >= 1.5) {
        rep.verdict = BoundednessVerdict::LooksUnbounded;
        rep.reason = "deviation grew by >= 1.5x across the last three doublings";
    } else if (rep.devs.back() <= 3 * std::max(median_early, 1.0) && r1 <= 1.5 && r2 <= 1.5 &&
               r3 <= 1.5) {
        rep.verdict = BoundednessVerdict::LooksBounded;
        rep.reason = "final deviation within 3x the early median, no recent jump";
    } else {
        rep.verdict = BoundednessVerdict::Inconclusive;
        rep.reason = "growth pattern matches neither profile";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Bijection witness
// ---------------------------------------------------------------------------

/// Pairs (x_n, xi*n) with the indexing x_{-1} < 0 <= x_0 from the proof of the
/// one-dimensional BDL characterization.
struct BijectionWitness {
    long n_min = 0, n_max = 0;   // inclusive index range
    std::vector<double> points;  // x_n for n in [n_min, n_max]
    double xi = 1;
    double max_displacement = 0;
};

inline BijectionWitness bijection_witness(const std::vector<double>& sorted_points, double xi,
                                          long count) {
    if (xi <= 0) throw std::invalid_argument("xi must be positive");
    auto split = std::lower_bound(sorted_points.begin(), sorted_points.end(), 0.0);
    if (split == sorted_points.begin() || split == sorted_points.end())
        throw std::invalid_argument(
            "indexing needs a point on each side of 0 (x_{-1} < 0 <= x_0)");
    long avail_neg = static_cast<long>(split - sorted_points.begin());
    long avail_pos = static_cast<long>(sorted_points.end() - split);
    BijectionWitness w;
    w.xi = xi;
    w.n_min = -std::min(count, avail_neg);
    w.n_max = std::min(count, avail_pos - 1);
    for (long n = w.n_min; n <= w.n_max; ++n) {
        double x = *(split + n);
        w.points.push_back(x);
        w.max_displacement = std::max(w.max_displacement, std::abs(x - xi * static_cast<double>(n)));
    }
    return w;
}

// ---------------------------------------------------------------------------
// 2D grids from two one-dimensional sets
// ---------------------------------------------------------------------------

struct GridPoint {
    double x = 0, y = 0;
};

/// { s*u + t*v : s in lambda1, t in lambda2 } clipped to the centered box of
/// half-width `bound`. u, v must be linearly independent.
inline std::vector<GridPoint> grid_points(const std::vector<double>& lambda1,
                                          const std::vector<double>& lambda2, double ux,
                                          double uy, double vx, double vy, double bound) {
    double det = ux * vy - uy * vx;
    double scale = std::max({std::abs(ux), std::abs(uy), std::abs(vx), std::abs(vy), 1.0});
    if (std::abs(det) < 1e-12 * scale * scale)
        throw std::invalid_argument("grid vectors must be linearly independent");
    std::vector<GridPoint> out;
    for (double s : lambda1)
        for (double t : lambda2) {
            double x = s * ux + t * vx;
            double y = s * uy + t * vy;
            if (std::abs(x) <= bound && std::abs(y) <= bound) out.push_back(GridPoint{x, y});
        }
    return out;
}

}  // namespace aperiodic
