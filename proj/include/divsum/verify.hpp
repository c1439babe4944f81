#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "divsum/arith.hpp"
#include "divsum/asympt.hpp"
#include "divsum/expsum.hpp"
#include "divsum/farey.hpp"
#include "divsum/l1norm.hpp"

namespace divsum {

struct VerifyCheck {
    std::string name;
    bool pass = false;
    double metric = 0;    // the measured quantity
    double threshold = 0; // what it was compared against
    std::string detail;
};

namespace verify_detail {

inline std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// trial-division divisor count, independent of the sieve
inline i64 tau_by_trial_division(i64 n) {
    i64 count = 0;
    for (i64 d = 1; d * d <= n; ++d)
        if (n % d == 0) count += (d * d == n) ? 1 : 2;
    return count;
}

inline i64 divisor_sum_hyperbola(i64 x) {
    i64 s = 0;
    for (i64 u = 1; u <= x; ++u) s += x / u;
    return s;
}

} // namespace verify_detail

// The full invariant suite at desk scale. Checks that want a larger table
// than provided clamp their range and say so in the detail column. All
// sampling is seeded, so two runs produce identical reports.
inline std::vector<VerifyCheck> run_verify_suite(const ArithTables& t, int threads = 1,
                                                 std::uint64_t seed = 0x9e3779b97f4a7c15ull) {
    using verify_detail::fmt;
    std::vector<VerifyCheck> out;
    std::mt19937_64 rng(seed);
    auto push = [&](std::string name, bool pass, double metric, double threshold, std::string detail = "") {
        out.push_back({std::move(name), pass, metric, threshold, std::move(detail)});
    };

    const i64 x_mid = std::min<i64>(t.x_max, 10'000);
    const i64 x_small = std::min<i64>(t.x_max, 2'000);
    KahanSum tau_total_acc;
    for (i64 n = 1; n <= x_mid; ++n) tau_total_acc.add(t.tau[static_cast<std::size_t>(n)]);
    const double tau_total = tau_total_acc.value();

    // --- sieve integrity ---------------------------------------------------
    {
        std::uniform_int_distribution<i64> pick(1, t.x_max);
        const i64 samples = std::max<i64>(t.x_max / 100, 50);
        i64 bad = 0;
        for (i64 i = 0; i < samples; ++i) {
            const i64 n = pick(rng);
            if (static_cast<i64>(t.tau[static_cast<std::size_t>(n)]) != verify_detail::tau_by_trial_division(n)) ++bad;
        }
        push("tau-trial-division", bad == 0, static_cast<double>(bad), 0,
             std::to_string(samples) + " sampled n");
    }
    {
        i64 bad = 0;
        const i64 hi = std::min<i64>(t.x_max, 5'000);
        for (i64 n = 2; n <= hi; ++n) {
            i64 s = 0;
            for (const i64 d : divisors(t, n)) s += t.mu[static_cast<std::size_t>(d)];
            if (s != 0) ++bad;
        }
        push("mobius-divisor-sum", bad == 0, static_cast<double>(bad), 0, "n <= " + std::to_string(hi));
    }
    {
        i64 bad = 0;
        const i64 hi = std::min<i64>(t.x_max, 5'000);
        for (i64 n = 1; n <= hi; ++n) {
            i64 s = 0;
            for (const i64 d : divisors(t, n)) s += t.phi[static_cast<std::size_t>(d)];
            if (s != n) ++bad;
        }
        push("phi-divisor-sum", bad == 0, static_cast<double>(bad), 0, "n <= " + std::to_string(hi));
    }
    {
        const i64 N = 1'000'000;
        KahanSum h;
        for (i64 k = 1; k <= N; ++k) h.add(1.0 / static_cast<double>(k));
        const double est = h.value() - std::log(static_cast<double>(N)) - 1.0 / (2.0 * static_cast<double>(N));
        const double err = std::abs(est - euler_gamma);
        push("euler-gamma-constant", err <= 1e-10, err, 1e-10);
    }

    // --- Ramanujan sums ----------------------------------------------------
    {
        const i64 q_hi = std::min<i64>(t.x_max, 120);
        double worst = 0;
        bool closed_ok = true;
        for (i64 q = 1; q <= q_hi; ++q)
            for (i64 n = 0; n <= 120; ++n) {
                const i64 c = ramanujan_sum(t, q, n);
                if (c != ramanujan_sum_closed_form(t, q, n)) closed_ok = false;
                const auto e = ramanujan_sum_via_exponentials(q, n);
                worst = std::max(worst, std::max(std::abs(e.real() - static_cast<double>(c)), std::abs(e.imag())) /
                                            static_cast<double>(q));
            }
        push("ramanujan-dual-formula", closed_ok && worst <= 1e-9, worst, 1e-9,
             "q <= " + std::to_string(q_hi) + ", closed form " + (closed_ok ? "agrees" : "DISAGREES"));
    }
    {
        std::uniform_int_distribution<i64> pick(1, 300);
        std::uniform_int_distribution<i64> pick_n(0, 1'000);
        i64 bad = 0, tried = 0;
        while (tried < 500) {
            const i64 q1 = pick(rng), q2 = pick(rng);
            if (std::gcd(q1, q2) != 1 || q1 * q2 > t.x_max) continue;
            ++tried;
            const i64 n = pick_n(rng);
            if (ramanujan_sum(t, q1 * q2, n) != ramanujan_sum(t, q1, n) * ramanujan_sum(t, q2, n)) ++bad;
        }
        push("ramanujan-multiplicative", bad == 0, static_cast<double>(bad), 0, "500 coprime pairs <= 300");
    }

    // --- main-term pair ----------------------------------------------------
    {
        const i64 q_hi = std::min<i64>(t.x_max, 500);
        const MainTermPair mt = main_term_pair(t, 1'000.0);
        double worst = 0;
        for (i64 q = 1; q <= q_hi; ++q) {
            KahanSum s;
            for (const i64 d : divisors(t, q)) s.add(static_cast<double>(t.mu[static_cast<std::size_t>(q / d)]) * mt.f(d));
            worst = std::max(worst, std::abs(s.value() - mt.g(q)) / (1.0 + std::abs(mt.g(q))));
        }
        push("main-term-mobius-inversion", worst <= 1e-10, worst, 1e-10, "q <= " + std::to_string(q_hi) + ", x=1e3");
    }
    {
        double worst = 0;
        i64 worst_x = 0;
        KahanSum run;
        bool ok = true;
        for (i64 n = 1; n <= t.x_max; ++n) {
            run.add(static_cast<double>(t.phi[static_cast<std::size_t>(n)]) / static_cast<double>(n));
            if (n >= 10) {
                const double dev = std::abs(run.value() - 6.0 / (std::numbers::pi * std::numbers::pi) * static_cast<double>(n));
                const double env = 2.0 + 3.0 * std::log(static_cast<double>(n));
                if (dev > env) ok = false;
                if (dev / env > worst) {
                    worst = dev / env;
                    worst_x = n;
                }
            }
        }
        push("phi-mean-envelope", ok, worst, 1.0, "worst at x=" + std::to_string(worst_x));
    }

    // --- exponential sums --------------------------------------------------
    {
        std::uniform_real_distribution<double> ua(0.0, 1.0);
        double worst = 0;
        for (int i = 0; i < 100; ++i) {
            const double alpha = ua(rng);
            const auto s = eval_S(t, x_mid, alpha);
            const auto d = s - (2.0 * eval_T(x_mid, alpha) + eval_V(x_mid, alpha));
            worst = std::max(worst, std::abs(d) / tau_total);
        }
        push("decomposition-identity", worst <= 1e-9, worst, 1e-9, "x=" + std::to_string(x_mid));
    }
    {
        std::uniform_real_distribution<double> ua(0.0, 1.0);
        const i64 s_x = isqrt(x_mid);
        double worst = 0;
        bool f_vanishes = true;
        for (const i64 q : {i64{1}, i64{2}, i64{3}, i64{7}, s_x, 2 * s_x}) {
            const double alpha = ua(rng);
            const auto f = eval_F(x_mid, q, alpha);
            const auto g = eval_G(x_mid, q, alpha);
            const auto tt = eval_T(x_mid, alpha);
            worst = std::max(worst, std::abs(f + g - tt) / tau_total);
            if (q > s_x && std::abs(f) != 0.0) f_vanishes = false;
        }
        push("fg-partition", worst <= 1e-9 && f_vanishes, worst, 1e-9,
             f_vanishes ? "F vanishes for q > sqrt(x)" : "F NONZERO for q > sqrt(x)");
    }
    {
        std::uniform_int_distribution<i64> pn(0, 10'000);
        std::uniform_int_distribution<i64> plen(1, 10'000);
        std::uniform_real_distribution<double> ua(0.0, 1.0);
        double worst = -1;
        for (int i = 0; i < 1'000; ++i) {
            const i64 n1 = pn(rng);
            const auto b = geometric_sum_bound_check(n1, n1 + plen(rng), ua(rng));
            worst = std::max(worst, b.lhs - b.rhs);
        }
        push("geometric-sum-bound", worst <= 1e-9, worst, 1e-9, "1000 random triples, max lhs-rhs");
    }
    {
        std::uniform_real_distribution<double> ua(0.0, 1.0);
        double worst = 0;
        for (int i = 0; i < 100; ++i) {
            const double alpha = ua(rng);
            const auto s = eval_S(t, x_small, alpha);
            worst = std::max(worst, std::abs(eval_S(t, x_small, alpha + 1.0) - s));
            worst = std::max(worst, std::abs(eval_S(t, x_small, -alpha) - std::conj(s)));
        }
        KahanSum ts;
        for (i64 n = 1; n <= x_small; ++n) ts.add(t.tau[static_cast<std::size_t>(n)]);
        push("s-periodicity-conjugation", worst <= 1e-9 * ts.value(), worst, 1e-9 * ts.value(),
             "x=" + std::to_string(x_small));
    }
    {
        const i64 N = 1024;
        const GridEval g = grid_eval(t, x_small, N);
        std::uniform_int_distribution<i64> pk(0, N - 1);
        KahanSum ts;
        for (i64 n = 1; n <= x_small; ++n) ts.add(t.tau[static_cast<std::size_t>(n)]);
        double worst = 0;
        for (int i = 0; i < 32; ++i) {
            const i64 k = pk(rng);
            const auto direct = eval_S(t, x_small, static_cast<double>(k) / static_cast<double>(N));
            worst = std::max(worst, std::abs(g.values[static_cast<std::size_t>(k)] - direct));
        }
        push("grid-matches-direct", worst <= 1e-6 * ts.value(), worst, 1e-6 * ts.value(),
             "x=" + std::to_string(x_small) + ", N=1024, 32 random k");
    }
    {
        const i64 N = 4096;
        const GridEval g = grid_eval(t, x_small, N);
        KahanSum power, tau_sq;
        for (const auto& v : g.values) power.add(std::norm(v));
        for (i64 n = 1; n <= x_small; ++n)
            tau_sq.add(static_cast<double>(t.tau[static_cast<std::size_t>(n)]) *
                       static_cast<double>(t.tau[static_cast<std::size_t>(n)]));
        const double rel = std::abs(power.value() / static_cast<double>(N) - tau_sq.value()) / tau_sq.value();
        push("parseval-s", rel <= 1e-6, rel, 1e-6, "x=" + std::to_string(x_small) + ", N=4096");
    }
    {
        const i64 N = 4096;
        KahanSum power;
        for (i64 k = 0; k < N; ++k)
            power.add(std::norm(eval_V(x_small, static_cast<double>(k) / static_cast<double>(N))));
        const double expect = static_cast<double>(isqrt(x_small));
        const double rel = std::abs(power.value() / static_cast<double>(N) - expect) / expect;
        push("parseval-v", rel <= 1e-6, rel, 1e-6, "mean |V|^2 vs floor(sqrt(x))");
    }
    {
        // F-estimate envelope: q|F_q(a/q+b)| / [min(x,1/|b|) log(2 sqrt(x)/q)]
        const i64 s_x = isqrt(x_mid);
        std::uniform_int_distribution<i64> pq(1, s_x);
        std::uniform_real_distribution<double> pu(-1.0, 1.0);
        double c_f = 0;
        for (int i = 0; i < 1'000; ++i) {
            const i64 q = pq(rng);
            const i64 a = 1 + static_cast<i64>(rng() % static_cast<std::uint64_t>(q));
            const i64 g = std::gcd(a, q);
            const i64 ar = a / g, qr = q / g;
            const double bmax = 1.0 / (2.0 * static_cast<double>(qr) * std::sqrt(static_cast<double>(x_mid)));
            const double beta = pu(rng) * bmax;
            const double alpha = static_cast<double>(ar) / static_cast<double>(qr) + beta;
            const double fmag = std::abs(eval_F(x_mid, qr, alpha));
            const double denom = std::min(static_cast<double>(x_mid),
                                          beta == 0.0 ? static_cast<double>(x_mid) : 1.0 / std::abs(beta)) *
                                 std::log(2.0 * std::sqrt(static_cast<double>(x_mid)) / static_cast<double>(qr));
            c_f = std::max(c_f, static_cast<double>(qr) * fmag / denom);
        }
        push("f-envelope", c_f <= 10.0, c_f, 10.0, "C_F over 1000 samples, x=" + std::to_string(x_mid));
    }
    {
        // G-estimate envelope: |G_q(a/q+b)| / [(sqrt(x)+q)(1+log q)]
        const i64 s_x = isqrt(x_mid);
        std::uniform_int_distribution<i64> pq(1, 2 * s_x);
        std::uniform_real_distribution<double> pu(-1.0, 1.0);
        double c_g = 0;
        for (int i = 0; i < 1'000; ++i) {
            const i64 q = pq(rng);
            i64 a = 1 + static_cast<i64>(rng() % static_cast<std::uint64_t>(q));
            const i64 g = std::gcd(a, q);
            const i64 ar = a / g, qr = q / g;
            const double bmax = 1.0 / (2.0 * static_cast<double>(qr) * std::sqrt(static_cast<double>(x_mid)));
            const double beta = pu(rng) * bmax;
            const double alpha = static_cast<double>(ar) / static_cast<double>(qr) + beta;
            const double gmag = std::abs(eval_G(x_mid, qr, alpha));
            const double denom = (std::sqrt(static_cast<double>(x_mid)) + static_cast<double>(qr)) *
                                 (1.0 + std::log(static_cast<double>(qr)));
            c_g = std::max(c_g, gmag / denom);
        }
        push("g-envelope", c_g <= 10.0, c_g, 10.0, "C_G over 1000 samples, x=" + std::to_string(x_mid));
    }

    // --- Farey machinery ---------------------------------------------------
    {
        i64 bad = 0;
        for (i64 Q = 1; Q <= 200; ++Q) {
            const auto fr = farey_enumerate(Q);
            for (std::size_t i = 1; i < fr.size(); ++i)
                if (fr[i].a * fr[i - 1].q - fr[i - 1].a * fr[i].q != 1) ++bad;
        }
        push("farey-neighbor-determinant", bad == 0, static_cast<double>(bad), 0, "Q <= 200");
    }
    {
        double worst = -std::numeric_limits<double>::infinity();
        for (i64 Q = 2; Q <= 150; ++Q) worst = std::max(worst, cover_check(Q));
        push("farey-cover", worst <= 0.0, worst, 0.0, "max gap over Q <= 150");
    }
    {
        bool ok = true;
        double worst = std::numeric_limits<double>::infinity();
        for (const i64 x : {i64{1'000}, i64{10'000}}) {
            if (x > t.x_max) continue;
            const double sep = disjoint_check(x, isqrt(x) / 2);
            worst = std::min(worst, sep);
            ok = ok && sep > 0;
        }
        push("farey-disjoint", ok, worst, 0.0, "min separation, q_cap = sqrt(x)/2");
    }
    {
        const i64 Q = 200;
        std::uniform_real_distribution<double> ua(1.0 / static_cast<double>(Q), 1.0 + 1.0 / static_cast<double>(Q));
        bool ok = true;
        double worst = 0;
        for (int i = 0; i < 1'000; ++i) {
            const double alpha = ua(rng);
            const auto loc = locate_arc(alpha, Q);
            const double slack = std::abs(loc.beta) * static_cast<double>(loc.frac.q) * static_cast<double>(Q);
            worst = std::max(worst, slack);
            ok = ok && loc.frac.q >= 1 && loc.frac.q <= Q && slack <= 1.0 && std::gcd(loc.frac.a, loc.frac.q) == 1;
        }
        push("locate-arc-contract", ok, worst, 1.0, "|beta| q Q <= 1 over 1000 alpha, Q=200");
    }

    // --- U_q machinery -----------------------------------------------------
    {
        std::uniform_int_distribution<i64> pq(1, 100);
        std::uniform_real_distribution<double> pb(-1.0 / (4.0 * static_cast<double>(x_mid)),
                                                  1.0 / (4.0 * static_cast<double>(x_mid)));
        double worst = 0;
        for (int i = 0; i < 20; ++i) {
            const i64 q = pq(rng);
            const double beta = pb(rng);
            worst = std::max(worst, std::abs(U_q(t, x_mid, q, beta) - U_q_via_residues(t, x_mid, q, beta)));
        }
        push("uq-dual-representation", worst <= 1e-8 * tau_total, worst, 1e-8 * tau_total,
             "20 random (q,beta), x=" + std::to_string(x_mid));
    }
    {
        const i64 q_hi = std::min<i64>(t.x_max, 200);
        const i64 x_here = std::min<i64>(t.x_max, 100'000);
        double worst = 0;
        for (i64 q = 1; q <= q_hi; ++q) {
            const double v = U_q(t, x_here, q, 0.0).real();
            worst = std::max(worst, std::abs(v - std::round(v)));
        }
        push("uq-integrality", worst <= 1e-6, worst, 1e-6,
             "q <= " + std::to_string(q_hi) + ", x=" + std::to_string(x_here));
    }
    {
        const double exact = U_q(t, x_mid, 1, 0.0).real();
        const double brute = static_cast<double>(verify_detail::divisor_sum_hyperbola(x_mid));
        push("uq-q1-divisor-sum", exact == brute, std::abs(exact - brute), 0,
             "U_1(x;0) vs independent divisor count, x=" + std::to_string(x_mid));
    }
    {
        double worst = 0;
        for (const i64 q : {i64{1}, i64{6}, i64{12}})
            worst = std::max(worst, partial_summation_check(t, x_mid, q, 1.0 / (4.0 * static_cast<double>(x_mid))));
        push("partial-summation", worst <= 1e-7 * tau_total, worst, 1e-7 * tau_total, "x=" + std::to_string(x_mid));
    }
    {
        if (t.x_max >= 256) {
            const i64 x_here = 256;
            const auto quad = l1_norm(t, x_here, 1e-3, i64{1} << 22, threads);
            const double functional = lower_bound_functional(t, x_here, 65, threads);
            const double slack = quad.value + 3.0 * quad.error_estimate - functional;
            push("lower-bound-le-l1", slack >= 0 && quad.converged, slack, 0.0,
                 "I - functional at x=256 (positive part)");
        } else {
            push("lower-bound-le-l1", true, 0, 0, "skipped: tables below 256");
        }
    }
    {
        const i64 x_here = std::min<i64>(t.x_max, 4'096);
        const double coarse = lower_bound_functional(t, x_here, 65, threads);
        const double fine = lower_bound_functional(t, x_here, 4'097, threads);
        const double rel = std::abs(coarse - fine) / std::abs(fine);
        push("quadrature-node-adequacy", rel <= 1e-4, rel, 1e-4,
             "65 vs 4097 beta nodes, x=" + std::to_string(x_here));
    }

    return out;
}

} // namespace divsum
