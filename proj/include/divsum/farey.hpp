#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "divsum/phase.hpp"

namespace divsum {

// Reduced fraction a/q in (0, 1].
struct Fraction {
    i64 a = 0;
    i64 q = 1;

    double value() const { return static_cast<double>(a) / static_cast<double>(q); }
    bool operator==(const Fraction&) const = default;
};

namespace detail {

// Exact rational with a positive denominator, for arc-endpoint comparisons.
struct Rat {
    i64 num = 0;
    i64 den = 1;
};

inline int cmp(Rat u, Rat v) {
    const __int128 l = static_cast<__int128>(u.num) * v.den;
    const __int128 r = static_cast<__int128>(v.num) * u.den;
    return l < r ? -1 : l > r ? 1 : 0;
}

inline double to_double(Rat u) { return static_cast<double>(u.num) / static_cast<double>(u.den); }

// u - v as a double whose sign matches the exact comparison.
inline double signed_gap(Rat u, Rat v) {
    const int c = cmp(u, v);
    const double d = to_double(u) - to_double(v);
    if (c < 0) return std::min(d, -std::numeric_limits<double>::denorm_min());
    if (c > 0) return std::max(d, std::numeric_limits<double>::denorm_min());
    return 0.0;
}

} // namespace detail

// All reduced a/q with 1 <= a <= q <= Q in increasing order, via the Farey
// next-term recurrence. Count is sum_{q<=Q} phi(q).
inline std::vector<Fraction> farey_enumerate(i64 Q) {
    if (Q < 1) throw std::invalid_argument("farey_enumerate: Q must be >= 1");
    std::vector<Fraction> out;
    out.reserve(static_cast<std::size_t>(3.0 * static_cast<double>(Q) * static_cast<double>(Q) / 9.8696 + 16));
    i64 pa = 0, pq = 1; // previous term, starting from 0/1 (not emitted)
    i64 ca = 1, cq = Q;
    out.push_back({ca, cq});
    while (!(ca == 1 && cq == 1)) {
        const i64 k = (Q + pq) / cq;
        const i64 na = k * ca - pa;
        const i64 nq = k * cq - pq;
        pa = ca;
        pq = cq;
        ca = na;
        cq = nq;
        out.push_back({ca, cq});
    }
    return out;
}

// Interval centered on a Farey fraction.
struct Arc {
    Fraction center;
    double half_width = 0;

    double lo() const { return center.value() - half_width; }
    double hi() const { return center.value() + half_width; }
};

enum class HalfWidthRule {
    dirichlet,   // 1/(qQ), the covering system
    integration, // 1/(2q sqrt(x)), the arc-wise integration windows
    fixed_4x     // 1/(4x), the pairwise-disjoint system
};

inline std::vector<Arc> make_arcs(i64 Q, HalfWidthRule rule, i64 x = 0) {
    if ((rule == HalfWidthRule::integration || rule == HalfWidthRule::fixed_4x) && x < 1)
        throw std::invalid_argument("make_arcs: rule requires x >= 1");
    const auto fr = farey_enumerate(Q);
    std::vector<Arc> arcs;
    arcs.reserve(fr.size());
    for (const auto& f : fr) {
        double hw = 0;
        switch (rule) {
            case HalfWidthRule::dirichlet: hw = 1.0 / (static_cast<double>(f.q) * static_cast<double>(Q)); break;
            case HalfWidthRule::integration:
                hw = 1.0 / (2.0 * static_cast<double>(f.q) * std::sqrt(static_cast<double>(x)));
                break;
            case HalfWidthRule::fixed_4x: hw = 1.0 / (4.0 * static_cast<double>(x)); break;
        }
        arcs.push_back({f, hw});
    }
    return arcs;
}

// Largest uncovered gap in [1/Q, 1+1/Q] under the arcs [a/q - 1/(qQ),
// a/q + 1/(qQ)]. Sweep in exact integer arithmetic; <= 0 means full cover,
// which the Farey neighbor identity |a/q - a'/q'| = 1/(qq') forces.
inline double cover_check(i64 Q) {
    if (Q < 2) throw std::invalid_argument("cover_check: Q must be >= 2");
    const auto fr = farey_enumerate(Q);
    detail::Rat cover_end{1, Q};
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& f : fr) {
        const detail::Rat lo{f.a * Q - 1, f.q * Q};
        const detail::Rat hi{f.a * Q + 1, f.q * Q};
        worst = std::max(worst, detail::signed_gap(lo, cover_end));
        if (detail::cmp(hi, cover_end) > 0) cover_end = hi;
    }
    worst = std::max(worst, detail::signed_gap(detail::Rat{Q + 1, Q}, cover_end));
    return worst;
}

// Floating-point sweep for the generic half-width rules (the integration
// width involves sqrt(x), so no exact rational form exists).
inline double cover_check(i64 Q, HalfWidthRule rule, i64 x) {
    if (Q < 2) throw std::invalid_argument("cover_check: Q must be >= 2");
    if (rule == HalfWidthRule::dirichlet) return cover_check(Q);
    const auto arcs = make_arcs(Q, rule, x);
    double cover_end = 1.0 / static_cast<double>(Q);
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& arc : arcs) {
        worst = std::max(worst, arc.lo() - cover_end);
        cover_end = std::max(cover_end, arc.hi());
    }
    worst = std::max(worst, 1.0 + 1.0 / static_cast<double>(Q) - cover_end);
    return worst;
}

// Minimum over distinct fractions (q <= q_cap) of |a/q - a'/q'| - 1/(2x):
// positive means the 1/(4x) arcs are pairwise disjoint. The minimum distance
// is attained at a consecutive pair, where it equals 1/(qq') exactly.
inline double disjoint_check(i64 x, i64 q_cap) {
    if (x < 1 || q_cap < 1) throw std::invalid_argument("disjoint_check: need x >= 1, q_cap >= 1");
    const auto fr = farey_enumerate(q_cap);
    if (fr.size() < 2) return std::numeric_limits<double>::infinity();
    double min_sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < fr.size(); ++i) {
        const double gap = static_cast<double>(fr[i].a * fr[i - 1].q - fr[i - 1].a * fr[i].q) /
                           (static_cast<double>(fr[i].q) * static_cast<double>(fr[i - 1].q));
        min_sep = std::min(min_sep, gap - 1.0 / (2.0 * static_cast<double>(x)));
    }
    return min_sep;
}

struct LocatedArc {
    Fraction frac;
    double beta = 0; // alpha - a/q, signed
};

// Dirichlet approximation: a reduced a/q with q <= Q and |alpha - a/q| <=
// 1/(qQ), located through the Stern-Brocot descent to the Farey neighbors
// of alpha. Only the two neighbors can satisfy their own arc condition; the
// nearer one wins, ties resolving to smaller q, then smaller a.
inline LocatedArc locate_arc(double alpha, i64 Q) {
    if (Q < 1) throw std::invalid_argument("locate_arc: Q must be >= 1");
    const double inv_q = 1.0 / static_cast<double>(Q);
    if (!(alpha >= inv_q && alpha <= 1.0 + inv_q))
        throw std::domain_error("locate_arc: alpha outside [1/Q, 1+1/Q]");
    if (alpha > 1.0) return {{1, 1}, alpha - 1.0};

    i64 la = 0, lq = 1, ra = 1, rq = 1;
    while (true) {
        const i64 ma = la + ra;
        const i64 mq = lq + rq;
        if (mq > Q) break;
        const double mv = static_cast<double>(ma) / static_cast<double>(mq);
        if (alpha > mv) {
            la = ma;
            lq = mq;
        } else if (alpha < mv) {
            ra = ma;
            rq = mq;
        } else {
            la = ra = ma;
            lq = rq = mq;
            break;
        }
    }

    struct Cand {
        i64 a = 0, q = 0;
        double dist = 0;
        bool admissible = false;
    };
    auto probe = [&](i64 a, i64 q) {
        Cand c{a, q, std::abs(alpha - static_cast<double>(a) / static_cast<double>(q)), false};
        c.admissible = a >= 1 && c.dist <= 1.0 / (static_cast<double>(q) * static_cast<double>(Q));
        return c;
    };
    const Cand left = probe(la, lq);
    const Cand right = probe(ra, rq);

    auto better = [](const Cand& u, const Cand& v) {
        if (u.dist != v.dist) return u.dist < v.dist;
        if (u.q != v.q) return u.q < v.q;
        return u.a < v.a;
    };
    Cand pick;
    if (left.admissible && right.admissible)
        pick = better(left, right) ? left : right;
    else if (left.admissible)
        pick = left;
    else if (right.admissible)
        pick = right;
    else
        pick = better(left, right) ? left : right; // unreachable if the cover holds
    return {{pick.a, pick.q}, alpha - static_cast<double>(pick.a) / static_cast<double>(pick.q)};
}

} // namespace divsum
