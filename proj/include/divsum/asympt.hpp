#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "divsum/arith.hpp"
#include "divsum/expsum.hpp"
#include "divsum/parallel.hpp"

namespace divsum {

// U_q(x;beta) = sum_{n<=x} tau(n) c_q(n) e(n*beta). The weights c_q(n)
// depend only on n mod q, so they are tabulated once per call. At beta = 0
// the sum is an exact integer and accumulates without any trig.
inline std::complex<double> U_q(const ArithTables& t, i64 x, i64 q, double beta) {
    if (q < 1 || q > t.x_max) throw std::out_of_range("U_q: q outside tables");
    if (x < 0 || x > t.x_max) throw std::out_of_range("U_q: x outside tables");
    std::vector<double> w(static_cast<std::size_t>(q));
    for (i64 r = 0; r < q; ++r) w[static_cast<std::size_t>(r)] = static_cast<double>(ramanujan_sum(t, q, r));

    if (beta == 0.0) {
        KahanSum s;
        for (i64 n = 1; n <= x; ++n)
            s.add(static_cast<double>(t.tau[static_cast<std::size_t>(n)]) * w[static_cast<std::size_t>(n % q)]);
        return {s.value(), 0.0};
    }
    KahanComplex acc;
    for (i64 r = 0; r < q; ++r) {
        const i64 n0 = r == 0 ? q : r;
        if (n0 > x) continue;
        const double wr = w[static_cast<std::size_t>(r)];
        PhaseRotor rot(n0, q, beta);
        for (i64 n = n0; n <= x; n += q, rot.advance())
            acc.add(wr * static_cast<double>(t.tau[static_cast<std::size_t>(n)]) * rot.value());
    }
    return acc.value();
}

// The other face of the identity: sum over reduced residues of S(a/q + beta).
inline std::complex<double> U_q_via_residues(const ArithTables& t, i64 x, i64 q, double beta) {
    if (q < 1) throw std::invalid_argument("U_q_via_residues: q must be >= 1");
    KahanComplex acc;
    for (i64 a = 1; a <= q; ++a)
        if (std::gcd(a, q) == 1)
            acc.add(eval_S(t, x, static_cast<double>(a) / static_cast<double>(q) + beta));
    return acc.value();
}

// One row of the U_q(x;0) asymptotic: exact value, main term x*g_x(q), and
// the error against the q*tau(q)*(x^{1/3} + q^{1/2}) envelope scale.
struct AsymptoticRecord {
    i64 q = 0;
    i64 x = 0;
    double exact = 0;
    double main = 0;
    double abs_err = 0;
    double bound_scale = 0;
    bool in_regime = true; // q <= x
};

inline AsymptoticRecord uq_asymptotic_record(const ArithTables& t, i64 x, i64 q) {
    if (x < 2) throw std::invalid_argument("uq_asymptotic_record: x must be >= 2");
    AsymptoticRecord r;
    r.q = q;
    r.x = x;
    r.exact = U_q(t, x, q, 0.0).real();
    r.main = static_cast<double>(x) * main_term_pair(t, static_cast<double>(x)).g(q);
    r.abs_err = std::abs(r.exact - r.main);
    r.bound_scale = static_cast<double>(q) * static_cast<double>(t.tau[static_cast<std::size_t>(q)]) *
                    (std::cbrt(static_cast<double>(x)) + std::sqrt(static_cast<double>(q)));
    r.in_regime = q <= x;
    return r;
}

// Divisor sum over the progression n = a (mod d) against its main term
//   (x/d) sum_{r|d} (c_r(a)/r)(log(x/r^2) + 2*gamma - 1).
// (a,d) > 1 and a = 0 are allowed.
struct ProgressionResult {
    i64 d = 0;
    i64 a = 0;
    i64 x = 0;
    double exact = 0;
    double main = 0;
    double abs_err = 0;
};

inline ProgressionResult progression_check(const ArithTables& t, i64 x, i64 d, i64 a) {
    if (d < 1 || d > t.x_max) throw std::out_of_range("progression_check: d outside tables");
    if (x < 2 || x > t.x_max) throw std::out_of_range("progression_check: x outside tables");
    i64 a0 = a % d;
    if (a0 < 0) a0 += d;
    i64 exact = 0;
    for (i64 n = a0 == 0 ? d : a0; n <= x; n += d) exact += t.tau[static_cast<std::size_t>(n)];
    KahanSum m;
    for (const i64 r : divisors(t, d))
        m.add(static_cast<double>(ramanujan_sum(t, r, a)) / static_cast<double>(r) *
              (std::log(static_cast<double>(x) / (static_cast<double>(r) * static_cast<double>(r))) +
               2.0 * euler_gamma - 1.0));
    ProgressionResult res;
    res.d = d;
    res.a = a;
    res.x = x;
    res.exact = static_cast<double>(exact);
    res.main = static_cast<double>(x) / static_cast<double>(d) * m.value();
    res.abs_err = std::abs(res.exact - res.main);
    return res;
}

// Residual of the partial-summation identity
//   U_q(x;b) = e(bx) U_q(x;0) - 2*pi*i*b * int_1^x e(by) U_q(y;0) dy,
// with the integral in its exact step-sum form
//   sum_n tau(n) c_q(n) (e(bx) - e(bn)) / (2*pi*i*b).
inline double partial_summation_check(const ArithTables& t, i64 x, i64 q, double beta) {
    const std::complex<double> direct = U_q(t, x, q, beta);
    const std::complex<double> u0 = U_q(t, x, q, 0.0);
    if (beta == 0.0) return std::abs(direct - u0);

    std::vector<double> w(static_cast<std::size_t>(q));
    for (i64 r = 0; r < q; ++r) w[static_cast<std::size_t>(r)] = static_cast<double>(ramanujan_sum(t, q, r));
    const std::complex<double> ebx = unit_exp_at(x, beta);
    KahanComplex steps; // sum_n tau(n) c_q(n) (e(bx) - e(bn))
    for (i64 r = 0; r < q; ++r) {
        const i64 n0 = r == 0 ? q : r;
        if (n0 > x) continue;
        const double wr = w[static_cast<std::size_t>(r)];
        PhaseRotor rot(n0, q, beta);
        for (i64 n = n0; n <= x; n += q, rot.advance())
            steps.add(wr * static_cast<double>(t.tau[static_cast<std::size_t>(n)]) * (ebx - rot.value()));
    }
    const std::complex<double> recon = ebx * u0 - steps.value();
    return std::abs(direct - recon);
}

// sum_{q <= sqrt(x)/2} int_{-1/(4x)}^{1/(4x)} |U_q(x;beta)| dbeta by an
// odd-node trapezoid per q. The integrand's fastest mode e(x*beta) crosses at
// most half a period over the window, so 65 nodes are plenty (checked against
// a 4097-node reference in the tests).
inline double lower_bound_functional(const ArithTables& t, i64 x, int nodes = 65, int threads = 1) {
    if (x < 1 || x > t.x_max) throw std::out_of_range("lower_bound_functional: x outside tables");
    if (nodes < 3) throw std::invalid_argument("lower_bound_functional: nodes must be >= 3");
    const i64 q_max = isqrt(x) / 2;
    if (q_max < 1) return 0.0;
    const auto per_q = indexed_map<double>(q_max, threads, [&](i64 idx) {
        const i64 q = idx + 1;
        const double hw = 1.0 / (4.0 * static_cast<double>(x));
        const double h = 2.0 * hw / static_cast<double>(nodes - 1);
        KahanSum s;
        for (int j = 0; j < nodes; ++j) {
            const double wgt = (j == 0 || j == nodes - 1) ? 0.5 : 1.0;
            s.add(wgt * std::abs(U_q(t, x, q, -hw + static_cast<double>(j) * h)));
        }
        return s.value() * h;
    });
    KahanSum total;
    for (const double v : per_q) total.add(v);
    return total.value();
}

// lhs = sum_{q <= sqrt(x)/2} (phi(q)/q)(log(x/q^2) + 2*gamma - 1), compared
// against the asymptotic target (6/pi^2)(log 2 + gamma - 1) sqrt(x).
struct ClosingConstant {
    double lhs = 0;
    double target = 0;
    double ratio = 0;
};

inline ClosingConstant closing_constant_check(const ArithTables& t, i64 x) {
    if (x < 100) throw std::invalid_argument("closing_constant_check: x must be >= 100");
    const i64 q_max = isqrt(x) / 2;
    if (q_max > t.x_max) throw std::out_of_range("closing_constant_check: tables too small");
    KahanSum s;
    for (i64 q = 1; q <= q_max; ++q)
        s.add(static_cast<double>(t.phi[static_cast<std::size_t>(q)]) / static_cast<double>(q) *
              (std::log(static_cast<double>(x) / (static_cast<double>(q) * static_cast<double>(q))) +
               2.0 * euler_gamma - 1.0));
    ClosingConstant c;
    c.lhs = s.value();
    c.target = 6.0 / (std::numbers::pi * std::numbers::pi) * (std::numbers::ln2 + euler_gamma - 1.0) *
               std::sqrt(static_cast<double>(x));
    c.ratio = c.lhs / c.target;
    return c;
}

// Least-squares slope of log(abs_err) against log(x). Records whose error is
// below 1e-6 * x^{1/4} are dropped as near-exact flukes before fitting.
struct ExponentFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 1;
    int points = 0;
};

inline ExponentFit error_exponent(const std::vector<AsymptoticRecord>& records) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : records)
        if (r.abs_err > 1e-6 * std::pow(static_cast<double>(r.x), 0.25))
            pts.emplace_back(std::log(static_cast<double>(r.x)), std::log(r.abs_err));
    if (pts.size() < 3) throw std::invalid_argument("error_exponent: fewer than 3 usable records");

    const double n = static_cast<double>(pts.size());
    KahanSum sx, sy;
    for (const auto& [px, py] : pts) {
        sx.add(px);
        sy.add(py);
    }
    const double mx = sx.value() / n;
    const double my = sy.value() / n;
    KahanSum sxx, sxy;
    for (const auto& [px, py] : pts) {
        sxx.add((px - mx) * (px - mx));
        sxy.add((px - mx) * (py - my));
    }
    ExponentFit fit;
    fit.points = static_cast<int>(pts.size());
    fit.slope = sxx.value() > 0 ? sxy.value() / sxx.value() : 0.0;
    fit.intercept = my - fit.slope * mx;
    KahanSum ss_res, ss_tot;
    for (const auto& [px, py] : pts) {
        const double pred = fit.intercept + fit.slope * px;
        ss_res.add((py - pred) * (py - pred));
        ss_tot.add((py - my) * (py - my));
    }
    fit.r2 = ss_tot.value() > 0 ? 1.0 - ss_res.value() / ss_tot.value() : 1.0;
    return fit;
}

} // namespace divsum
