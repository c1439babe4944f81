#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace divsum {

using i64 = std::int64_t;

inline constexpr double two_pi = 6.283185307179586476925286766559;

// e(t) = exp(2*pi*i*t)
inline std::complex<double> unit_exp(double t) {
    const double a = two_pi * t;
    return {std::cos(a), std::sin(a)};
}

// e(n*alpha), with n*alpha reduced mod 1 before the trig call.
inline std::complex<double> unit_exp_at(i64 n, double alpha) {
    return unit_exp(std::fmod(static_cast<double>(n) * alpha, 1.0));
}

// Kahan-compensated accumulator.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

struct KahanComplex {
    KahanSum re, im;

    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }
    std::complex<double> value() const { return {re.value(), im.value()}; }
};

// Produces e((n0 + k*stride)*alpha) for k = 0, 1, 2, ...
//
// Incremental rotation by a fixed step, re-seeded from a freshly reduced
// argument every block so the drift stays at a few ulps regardless of the
// series length.
class PhaseRotor {
public:
    PhaseRotor(i64 n0, i64 stride, double alpha)
        : n0_(n0), stride_(stride), alpha_(alpha), step_(unit_exp_at(stride, alpha)) {
        reseed();
    }

    std::complex<double> value() const { return cur_; }

    void advance() {
        ++k_;
        if (k_ % reseed_period == 0)
            reseed();
        else
            cur_ *= step_;
    }

private:
    static constexpr i64 reseed_period = 4096;

    void reseed() { cur_ = unit_exp_at(n0_ + k_ * stride_, alpha_); }

    i64 n0_;
    i64 stride_;
    i64 k_ = 0;
    double alpha_;
    std::complex<double> step_;
    std::complex<double> cur_;
};

} // namespace divsum
