#pragma once

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "divsum/phase.hpp"

namespace divsum {

inline bool is_pow2(i64 n) { return n > 0 && (n & (n - 1)) == 0; }

inline i64 next_pow2(i64 n) {
    i64 p = 1;
    while (p < n) p <<= 1;
    return p;
}

// In-place radix-2 FFT with kernel e(sign * 2*pi*i * jk / N). Twiddles are
// refreshed from polar form every 256 butterflies to cap rotation drift.
inline void fft_pow2(std::vector<std::complex<double>>& a, int sign) {
    const std::size_t n = a.size();
    if (!is_pow2(static_cast<i64>(n))) throw std::invalid_argument("fft_pow2: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = static_cast<double>(sign) * two_pi / static_cast<double>(len);
        const std::complex<double> wlen = std::polar(1.0, ang);
        const std::size_t half = len / 2;
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w{1.0, 0.0};
            for (std::size_t j = 0; j < half; ++j) {
                if ((j & 255u) == 0) w = std::polar(1.0, ang * static_cast<double>(j));
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + half] * w;
                a[i + j] = u + v;
                a[i + j + half] = u - v;
                w *= wlen;
            }
        }
    }
}

// Arbitrary-length DFT by Bluestein's chirp transform: X[k] = sum_m a[m]
// e(sign*km/N). Chirp phases use j^2 mod 2N in integer arithmetic so the
// reduced arguments stay exact for any N.
inline std::vector<std::complex<double>> dft_bluestein(const std::vector<std::complex<double>>& a, int sign) {
    const i64 n = static_cast<i64>(a.size());
    const i64 m = next_pow2(2 * n - 1);
    const i64 period = 2 * n;
    auto chirp = [&](i64 j) {
        const i64 j2 = (j % period) * (j % period) % period;
        return unit_exp(static_cast<double>(sign) * static_cast<double>(j2) / static_cast<double>(period));
    };
    std::vector<std::complex<double>> u(static_cast<std::size_t>(m));
    std::vector<std::complex<double>> v(static_cast<std::size_t>(m));
    for (i64 j = 0; j < n; ++j) u[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j)] * chirp(j);
    v[0] = {1.0, 0.0};
    for (i64 j = 1; j < n; ++j)
        v[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(m - j)] = std::conj(chirp(j));
    fft_pow2(u, -1);
    fft_pow2(v, -1);
    for (i64 j = 0; j < m; ++j) u[static_cast<std::size_t>(j)] *= v[static_cast<std::size_t>(j)];
    fft_pow2(u, +1);
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    const double inv_m = 1.0 / static_cast<double>(m);
    for (i64 k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = u[static_cast<std::size_t>(k)] * inv_m * chirp(k);
    return out;
}

// Power-of-two sizes go straight to the radix-2 transform, everything else
// through the chirp transform.
inline std::vector<std::complex<double>> dft(std::vector<std::complex<double>> a, int sign) {
    if (a.empty()) return a;
    if (is_pow2(static_cast<i64>(a.size()))) {
        fft_pow2(a, sign);
        return a;
    }
    return dft_bluestein(a, sign);
}

} // namespace divsum
