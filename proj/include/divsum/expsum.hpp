#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "divsum/arith.hpp"
#include "divsum/fft.hpp"
#include "divsum/phase.hpp"

namespace divsum {

// ||alpha||: distance from alpha to the nearest integer, in [0, 1/2].
inline double nearest_int_distance(double alpha) {
    const double t = alpha - std::floor(alpha);
    return std::min(t, 1.0 - t);
}

// S(alpha) = sum_{n<=x} tau(n) e(n*alpha), compensated summation.
inline std::complex<double> eval_S(const ArithTables& t, i64 x, double alpha) {
    if (x < 0 || x > t.x_max) throw std::out_of_range("eval_S: x exceeds tables");
    KahanComplex acc;
    PhaseRotor rot(1, 1, alpha);
    for (i64 n = 1; n <= x; ++n, rot.advance())
        acc.add(static_cast<double>(t.tau[static_cast<std::size_t>(n)]) * rot.value());
    return acc.value();
}

// V(alpha) = sum_{u<=sqrt(x)} e(u^2 alpha).
inline std::complex<double> eval_V(i64 x, double alpha) {
    if (x < 0) throw std::invalid_argument("eval_V: x must be >= 0");
    KahanComplex acc;
    for (i64 u = 1, s = isqrt(x); u <= s; ++u) acc.add(unit_exp_at(u * u, alpha));
    return acc.value();
}

// T(alpha) = sum_{u<=sqrt(x)} sum_{u<v<=x/u} e(uv*alpha), so S = 2T + V.
inline std::complex<double> eval_T(i64 x, double alpha) {
    if (x < 0) throw std::invalid_argument("eval_T: x must be >= 0");
    KahanComplex acc;
    for (i64 u = 1, s = isqrt(x); u <= s; ++u) {
        const i64 vmax = x / u;
        if (vmax <= u) continue;
        PhaseRotor rot(u * (u + 1), u, alpha);
        for (i64 v = u + 1; v <= vmax; ++v, rot.advance()) acc.add(rot.value());
    }
    return acc.value();
}

// F_q: the part of T with q | u (stride-q over u); identically zero once
// q > sqrt(x).
inline std::complex<double> eval_F(i64 x, i64 q, double alpha) {
    if (x < 0 || q < 1) throw std::invalid_argument("eval_F: need x >= 0, q >= 1");
    KahanComplex acc;
    const i64 s = isqrt(x);
    for (i64 u = q; u <= s; u += q) {
        const i64 vmax = x / u;
        if (vmax <= u) continue;
        PhaseRotor rot(u * (u + 1), u, alpha);
        for (i64 v = u + 1; v <= vmax; ++v, rot.advance()) acc.add(rot.value());
    }
    return acc.value();
}

// G_q: the complementary part of T with q not dividing u; F_q + G_q = T.
inline std::complex<double> eval_G(i64 x, i64 q, double alpha) {
    if (x < 0 || q < 1) throw std::invalid_argument("eval_G: need x >= 0, q >= 1");
    KahanComplex acc;
    const i64 s = isqrt(x);
    for (i64 u = 1; u <= s; ++u) {
        if (u % q == 0) continue;
        const i64 vmax = x / u;
        if (vmax <= u) continue;
        PhaseRotor rot(u * (u + 1), u, alpha);
        for (i64 v = u + 1; v <= vmax; ++v, rot.advance()) acc.add(rot.value());
    }
    return acc.value();
}

struct GeomBound {
    double lhs = 0;
    double rhs = 0;
};

// Sharp form of the geometric-series estimate:
//   |sum_{N1<n<=N2} e(n*alpha)| <= min(N2-N1, 1/(2||alpha||)).
// lhs by the closed form |sin(pi L alpha)| / |sin(pi alpha)|, with both
// arguments reduced to nearest-integer distances.
inline GeomBound geometric_sum_bound_check(i64 N1, i64 N2, double alpha) {
    if (N1 >= N2) throw std::invalid_argument("geometric_sum_bound_check: need N1 < N2");
    const double L = static_cast<double>(N2 - N1);
    const double d = nearest_int_distance(alpha);
    GeomBound b;
    if (d == 0.0) {
        b.lhs = L;
        b.rhs = L;
        return b;
    }
    const double dl = nearest_int_distance(std::fmod(L * alpha, 1.0));
    b.lhs = std::sin(std::numbers::pi * dl) / std::sin(std::numbers::pi * d);
    b.rhs = std::min(L, 1.0 / (2.0 * d));
    return b;
}

// Uniform samples values[k] = S(k/N), k = 0..N-1.
struct GridEval {
    i64 x = 0;
    i64 N = 0;
    std::vector<std::complex<double>> values;
};

// Residue-bucketing of tau mod N followed by a DFT with kernel
// e(+2*pi*i*km/N); the buckets are exact integers.
inline GridEval grid_eval(const ArithTables& t, i64 x, i64 N) {
    if (N < 1) throw std::invalid_argument("grid_eval: N must be >= 1");
    if (x < 0 || x > t.x_max) throw std::out_of_range("grid_eval: x exceeds tables");
    std::vector<i64> bucket(static_cast<std::size_t>(N), 0);
    for (i64 n = 1; n <= x; ++n)
        bucket[static_cast<std::size_t>(n % N)] += t.tau[static_cast<std::size_t>(n)];
    std::vector<std::complex<double>> b(static_cast<std::size_t>(N));
    for (i64 m = 0; m < N; ++m)
        b[static_cast<std::size_t>(m)] = static_cast<double>(bucket[static_cast<std::size_t>(m)]);
    GridEval g;
    g.x = x;
    g.N = N;
    g.values = dft(std::move(b), +1);
    return g;
}

// Point evaluation record for any of the five sums.
enum class SumKind { S, T, V, F, G };

struct ExpSumEval {
    SumKind kind = SumKind::S;
    i64 x = 0;
    double alpha = 0;
    i64 q = 0; // meaningful for F and G only
    std::complex<double> value;
};

inline ExpSumEval evaluate(const ArithTables& t, SumKind kind, i64 x, double alpha, i64 q = 0) {
    ExpSumEval e{kind, x, alpha, q, {}};
    switch (kind) {
        case SumKind::S: e.value = eval_S(t, x, alpha); break;
        case SumKind::T: e.value = eval_T(x, alpha); break;
        case SumKind::V: e.value = eval_V(x, alpha); break;
        case SumKind::F: e.value = eval_F(x, q, alpha); break;
        case SumKind::G: e.value = eval_G(x, q, alpha); break;
    }
    return e;
}

} // namespace divsum
