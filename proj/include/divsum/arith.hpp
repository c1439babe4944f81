#pragma once

#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "divsum/phase.hpp"

namespace divsum {

// Euler's constant, full double precision. Validated in the test suite
// against the harmonic-sum oracle H_N - log N - 1/(2N).
inline constexpr double euler_gamma = 0.5772156649015329;

inline constexpr i64 default_sieve_budget = 100'000'000;

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sieved tables of tau, mu, phi and the smallest prime factor, indexed
// 1..x_max (index 0 is unused and zero). Immutable after construction and
// safe to share across threads.
struct ArithTables {
    i64 x_max = 0;
    std::vector<std::uint32_t> tau;
    std::vector<std::int8_t> mu;
    std::vector<std::uint32_t> phi;
    std::vector<std::uint32_t> spf;

    bool operator==(const ArithTables&) const = default;
};

// tau by incrementing multiples (O(x log x)); mu, phi, spf by a linear
// smallest-prime-factor sieve.
inline ArithTables build_tables(i64 x_max, i64 budget = default_sieve_budget) {
    if (x_max < 1) throw std::invalid_argument("build_tables: x_max must be >= 1");
    if (x_max > budget)
        throw CapacityError("build_tables: x_max " + std::to_string(x_max) +
                            " exceeds the sieve budget " + std::to_string(budget));

    ArithTables t;
    t.x_max = x_max;
    const std::size_t n = static_cast<std::size_t>(x_max) + 1;
    t.tau.assign(n, 0);
    t.mu.assign(n, 0);
    t.phi.assign(n, 0);
    t.spf.assign(n, 0);

    for (i64 d = 1; d <= x_max; ++d)
        for (i64 m = d; m <= x_max; m += d) ++t.tau[static_cast<std::size_t>(m)];

    t.mu[1] = 1;
    t.phi[1] = 1;
    t.spf[1] = 1;
    std::vector<std::uint32_t> primes;
    for (i64 i = 2; i <= x_max; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        if (t.spf[ui] == 0) {
            t.spf[ui] = static_cast<std::uint32_t>(i);
            t.mu[ui] = -1;
            t.phi[ui] = static_cast<std::uint32_t>(i - 1);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        for (const std::uint32_t p : primes) {
            if (p > t.spf[ui] || i * static_cast<i64>(p) > x_max) break;
            const auto ip = static_cast<std::size_t>(i * static_cast<i64>(p));
            t.spf[ip] = p;
            if (p == t.spf[ui]) {
                t.mu[ip] = 0;
                t.phi[ip] = t.phi[ui] * p;
                break;
            }
            t.mu[ip] = static_cast<std::int8_t>(-t.mu[ui]);
            t.phi[ip] = t.phi[ui] * (p - 1);
        }
    }
    return t;
}

// floor(sqrt(n)), exact.
inline i64 isqrt(i64 n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative argument");
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// All divisors of n, generated from the spf factorization. Unsorted.
inline std::vector<i64> divisors(const ArithTables& t, i64 n) {
    if (n < 1 || n > t.x_max) throw std::out_of_range("divisors: n outside tables");
    std::vector<i64> divs{1};
    while (n > 1) {
        const i64 p = t.spf[static_cast<std::size_t>(n)];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        const std::size_t base = divs.size();
        i64 pe = 1;
        for (int j = 0; j < e; ++j) {
            pe *= p;
            for (std::size_t k = 0; k < base; ++k) divs.push_back(divs[k] * pe);
        }
    }
    return divs;
}

// Ramanujan sum c_q(n) = sum_{d | (n,q)} d * mu(q/d). Exact integer; total in n.
inline i64 ramanujan_sum(const ArithTables& t, i64 q, i64 n) {
    if (q < 1 || q > t.x_max) throw std::out_of_range("ramanujan_sum: q outside tables");
    i64 r = n % q;
    if (r < 0) r += q;
    const i64 g = std::gcd(r, q); // gcd(0, q) = q
    i64 s = 0;
    for (const i64 d : divisors(t, g)) s += d * static_cast<i64>(t.mu[static_cast<std::size_t>(q / d)]);
    return s;
}

// Hoelder's closed form c_q(n) = mu(q/g) * phi(q) / phi(q/g), g = (n,q).
// Cross-check path for ramanujan_sum; phi(q/g) divides phi(q) exactly.
inline i64 ramanujan_sum_closed_form(const ArithTables& t, i64 q, i64 n) {
    if (q < 1 || q > t.x_max) throw std::out_of_range("ramanujan_sum_closed_form: q outside tables");
    i64 r = n % q;
    if (r < 0) r += q;
    const i64 g = std::gcd(r, q);
    const i64 m = q / g;
    const i64 mu_m = t.mu[static_cast<std::size_t>(m)];
    if (mu_m == 0) return 0;
    return mu_m * static_cast<i64>(t.phi[static_cast<std::size_t>(q)] / t.phi[static_cast<std::size_t>(m)]);
}

// The defining exponential sum over the reduced residues, sum_{(a,q)=1} e(an/q).
// Floating cross-check for the integer paths; phases are exact rationals a*n/q
// reduced mod q before the trig call.
inline std::complex<double> ramanujan_sum_via_exponentials(i64 q, i64 n) {
    if (q < 1) throw std::invalid_argument("ramanujan_sum_via_exponentials: q must be >= 1");
    i64 r = n % q;
    if (r < 0) r += q;
    KahanComplex acc;
    for (i64 a = 1; a <= q; ++a)
        if (std::gcd(a, q) == 1) acc.add(unit_exp(static_cast<double>(a * r % q) / static_cast<double>(q)));
    return acc.value();
}

// The main-term pair at scale x:
//   g(r) = (phi(r)/r) (log(x/r^2) + 2*gamma - 1),   f = g * 1  (Dirichlet),
// so f * mu = g pointwise.
struct MainTermPair {
    double x = 0;
    const ArithTables* tables = nullptr;

    double g(i64 r) const {
        return (static_cast<double>(tables->phi[static_cast<std::size_t>(r)]) / static_cast<double>(r)) *
               (std::log(x / (static_cast<double>(r) * static_cast<double>(r))) + 2.0 * euler_gamma - 1.0);
    }
    double f(i64 d) const {
        KahanSum s;
        for (const i64 r : divisors(*tables, d)) s.add(g(r));
        return s.value();
    }
};

inline MainTermPair main_term_pair(const ArithTables& t, double x) {
    if (!(x > 1.0)) throw std::domain_error("main_term_pair: requires x > 1");
    return {x, &t};
}

// max over q <= q_max of |(f * mu)(q) - g(q)|; zero in exact arithmetic.
inline double mobius_invert_check(const ArithTables& t, i64 q_max, double x) {
    if (q_max < 1 || q_max > t.x_max) throw std::out_of_range("mobius_invert_check: q_max outside tables");
    const MainTermPair mt = main_term_pair(t, x);
    double worst = 0.0;
    for (i64 q = 1; q <= q_max; ++q) {
        KahanSum s;
        for (const i64 d : divisors(t, q)) s.add(static_cast<double>(t.mu[static_cast<std::size_t>(q / d)]) * mt.f(d));
        worst = std::max(worst, std::abs(s.value() - mt.g(q)));
    }
    return worst;
}

// sum_{n<=x} phi(n)/n; equals (6/pi^2) x + O(log x).
inline double phi_mean(const ArithTables& t, i64 x) {
    if (x < 1 || x > t.x_max) throw std::out_of_range("phi_mean: x outside tables");
    KahanSum s;
    for (i64 n = 1; n <= x; ++n)
        s.add(static_cast<double>(t.phi[static_cast<std::size_t>(n)]) / static_cast<double>(n));
    return s.value();
}

} // namespace divsum
