#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "divsum/fft.hpp"

using namespace divsum;

namespace {

std::vector<std::complex<double>> dft_naive(const std::vector<std::complex<double>>& a, int sign) {
    const i64 n = static_cast<i64>(a.size());
    std::vector<std::complex<double>> out(a.size());
    for (i64 k = 0; k < n; ++k) {
        std::complex<double> s{0.0, 0.0};
        for (i64 m = 0; m < n; ++m)
            s += a[m] * unit_exp(static_cast<double>(sign) * static_cast<double>(k * m % n) / static_cast<double>(n));
        out[k] = s;
    }
    return out;
}

std::vector<std::complex<double>> random_signal(i64 n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::complex<double>> a(n);
    for (auto& v : a) v = {u(rng), u(rng)};
    return a;
}

} // namespace

TEST_CASE("power-of-two FFT matches the naive DFT") {
    for (const i64 n : {i64{1}, i64{2}, i64{8}, i64{64}, i64{256}}) {
        const auto a = random_signal(n, 100 + n);
        for (const int sign : {+1, -1}) {
            const auto fast = dft(a, sign);
            const auto slow = dft_naive(a, sign);
            for (i64 k = 0; k < n; ++k)
                CHECK(std::abs(fast[k] - slow[k]) <= 1e-9 * static_cast<double>(n));
        }
    }
}

TEST_CASE("chirp transform handles arbitrary lengths") {
    for (const i64 n : {i64{3}, i64{5}, i64{12}, i64{97}, i64{360}, i64{1000}}) {
        const auto a = random_signal(n, 7'000 + n);
        for (const int sign : {+1, -1}) {
            const auto fast = dft(a, sign);
            const auto slow = dft_naive(a, sign);
            for (i64 k = 0; k < n; ++k)
                CHECK(std::abs(fast[k] - slow[k]) <= 1e-9 * static_cast<double>(n));
        }
    }
}

TEST_CASE("forward then backward recovers the signal") {
    for (const i64 n : {i64{128}, i64{193}}) {
        const auto a = random_signal(n, 42 + n);
        auto f = dft(a, +1);
        auto b = dft(f, -1);
        for (i64 k = 0; k < n; ++k)
            CHECK(std::abs(b[k] / static_cast<double>(n) - a[k]) <= 1e-10 * static_cast<double>(n));
    }
}

TEST_CASE("size checks") {
    std::vector<std::complex<double>> a(24);
    CHECK_THROWS_AS(fft_pow2(a, +1), std::invalid_argument);
    CHECK(next_pow2(1) == 1);
    CHECK(next_pow2(24) == 32);
    CHECK(is_pow2(1));
    CHECK(!is_pow2(0));
    CHECK(!is_pow2(24));
}
