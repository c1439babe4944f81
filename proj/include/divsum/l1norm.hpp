#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "divsum/arith.hpp"
#include "divsum/expsum.hpp"
#include "divsum/farey.hpp"
#include "divsum/parallel.hpp"

namespace divsum {

struct QuadratureResult {
    i64 x = 0;
    double value = 0;
    double error_estimate = 0;       // last inter-level change (practical estimate)
    double lipschitz_certificate = 0; // rigorous |S'| tail bound, reported only
    i64 nodes = 0;
    bool converged = false;
    std::vector<std::pair<i64, double>> levels;
};

// 2*pi*sum_{n<=x} n*tau(n): a sup bound on |S'|, used for the reported
// certificate. Far too large to gate on.
inline double lipschitz_bound(const ArithTables& t, i64 x) {
    KahanSum s;
    for (i64 n = 1; n <= x; ++n)
        s.add(static_cast<double>(n) * static_cast<double>(t.tau[static_cast<std::size_t>(n)]));
    return two_pi * s.value();
}

// I(x) = integral of |S| over [0,1] by the periodic trapezoid rule on
// power-of-two grids, doubling until the relative change drops below tol.
inline QuadratureResult l1_norm(const ArithTables& t, i64 x, double tol = 1e-3,
                                i64 node_cap = i64{1} << 24, int threads = 1) {
    if (x < 1 || x > t.x_max) throw std::out_of_range("l1_norm: x outside tables");
    if (!(tol > 0)) throw std::invalid_argument("l1_norm: tol must be positive");

    QuadratureResult res;
    res.x = x;
    double prev = std::numeric_limits<double>::quiet_NaN();
    double last_change = std::numeric_limits<double>::infinity();
    const i64 n_start = next_pow2(std::max<i64>(256, x + 1));
    node_cap = std::max(node_cap, n_start); // at least one level, flagged if unconverged
    for (i64 N = n_start; N <= node_cap; N <<= 1) {
        const GridEval g = grid_eval(t, x, N);
        const double v = chunked_sum<double>(0, N, i64{1} << 16, threads,
                                             [&](i64 lo, i64 hi) {
                                                 KahanSum s;
                                                 for (i64 k = lo; k < hi; ++k)
                                                     s.add(std::abs(g.values[static_cast<std::size_t>(k)]));
                                                 return s.value();
                                             }) /
                         static_cast<double>(N);
        res.levels.emplace_back(N, v);
        res.nodes = N;
        res.value = v;
        if (!std::isnan(prev)) {
            last_change = std::abs(v - prev);
            if (last_change < tol * std::abs(v)) {
                res.converged = true;
                break;
            }
        }
        prev = v;
    }
    res.error_estimate = std::isfinite(last_change) ? last_change : 0.0;
    res.lipschitz_certificate = lipschitz_bound(t, x) / (4.0 * static_cast<double>(res.nodes));
    return res;
}

struct BoundRatios {
    double r_lower = 0; // value / sqrt(x)
    double r_upper = 0; // value / (sqrt(x) log x); +inf at x = 1
};

inline BoundRatios bound_ratios(const QuadratureResult& r) {
    const double sx = std::sqrt(static_cast<double>(r.x));
    const double lx = std::log(static_cast<double>(r.x));
    BoundRatios b;
    b.r_lower = r.value / sx;
    b.r_upper = lx > 0.0 ? r.value / (sx * lx) : std::numeric_limits<double>::infinity();
    return b;
}

// smallest integer Q with Q >= 2*sqrt(x)
inline i64 default_dissection_Q(i64 x) {
    i64 Q = isqrt(4 * x);
    if (Q * Q < 4 * x) ++Q;
    return Q;
}

// Integral of |S| arc by arc over the mediant dissection at level Q. Each
// cell sits inside its Dirichlet arc [a/q +- 1/(qQ)] because neighbor
// denominators sum past Q; that containment needs Q >= 2*sqrt(x) to keep the
// cells inside the 1/(2q sqrt(x)) integration windows.
inline QuadratureResult arc_refined_l1(const ArithTables& t, i64 x, i64 Q = 0,
                                       double base_tol = 1e-3, int threads = 1) {
    if (x < 1 || x > t.x_max) throw std::out_of_range("arc_refined_l1: x outside tables");
    if (!(base_tol > 0)) throw std::invalid_argument("arc_refined_l1: base_tol must be positive");
    const i64 q_needed = default_dissection_Q(x);
    if (Q == 0) Q = q_needed;
    if (Q < q_needed)
        throw std::invalid_argument("arc_refined_l1: Q below 2*sqrt(x), the dissection would not cover");

    const auto fr = farey_enumerate(Q);
    const i64 cells = static_cast<i64>(fr.size());
    const double sx = std::sqrt(static_cast<double>(x));

    struct CellOut {
        double value = 0;
        double err = 0;
        double len_h = 0; // len * final spacing, for the certificate
        i64 evals = 0;
        bool converged = true;
    };

    auto mediant = [](const Fraction& u, const Fraction& v) {
        return static_cast<double>(u.a + v.a) / static_cast<double>(u.q + v.q);
    };

    auto integrate_cell = [&](i64 idx) {
        const auto& f = fr[static_cast<std::size_t>(idx)];
        // left boundary: mediant with the previous fraction (0/1 before 1/Q);
        // right boundary: mediant with the next one (1/1 wraps to 1 + 1/(Q+1)).
        double lo, hi;
        if (idx == 0)
            lo = mediant({0, 1}, f);
        else
            lo = mediant(fr[static_cast<std::size_t>(idx - 1)], f);
        if (idx == cells - 1)
            hi = 1.0 + 1.0 / static_cast<double>(Q + 1);
        else
            hi = mediant(f, fr[static_cast<std::size_t>(idx + 1)]);

        const double len = hi - lo;
        auto fabs_S = [&](double alpha) { return std::abs(eval_S(t, x, alpha)); };

        i64 panels = next_pow2(std::max<i64>(8, static_cast<i64>(std::llround(len * 4.0 * static_cast<double>(x)))));
        const i64 panel_cap = i64{1} << 15;
        panels = std::min(panels, panel_cap);

        double h = len / static_cast<double>(panels);
        KahanSum s;
        s.add(0.5 * (fabs_S(lo) + fabs_S(hi)));
        for (i64 j = 1; j < panels; ++j) s.add(fabs_S(lo + static_cast<double>(j) * h));
        double cur = s.value() * h;
        i64 evals = panels + 1;

        CellOut out;
        double change = std::numeric_limits<double>::infinity();
        while (panels < panel_cap) {
            KahanSum mid;
            for (i64 j = 0; j < panels; ++j) mid.add(fabs_S(lo + (static_cast<double>(j) + 0.5) * h));
            const double next = 0.5 * cur + 0.5 * h * mid.value();
            evals += panels;
            panels *= 2;
            h *= 0.5;
            change = std::abs(next - cur);
            cur = next;
            if (change <= base_tol * (std::abs(cur) + len * sx)) break;
        }
        out.value = cur;
        out.err = std::isfinite(change) ? change : 0.0;
        out.converged = !(panels >= panel_cap && change > base_tol * (std::abs(cur) + len * sx));
        out.len_h = len * h;
        out.evals = evals;
        return out;
    };

    const auto parts = indexed_map<CellOut>(cells, threads, integrate_cell);

    QuadratureResult res;
    res.x = x;
    res.converged = true;
    KahanSum total, err, cert_len_h;
    for (const auto& p : parts) {
        total.add(p.value);
        err.add(p.err);
        cert_len_h.add(p.len_h);
        res.nodes += p.evals;
        res.converged = res.converged && p.converged;
    }
    res.value = total.value();
    res.error_estimate = err.value();
    res.lipschitz_certificate = lipschitz_bound(t, x) * cert_len_h.value() / 4.0;
    return res;
}

} // namespace divsum
