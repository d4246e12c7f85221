#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace quinary {

using Complex = std::complex<double>;

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }
    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(Complex z) noexcept {
        re_.add(z.real());
        im_.add(z.imag());
    }
    CompensatedComplexSum& operator+=(Complex z) noexcept {
        add(z);
        return *this;
    }
    [[nodiscard]] Complex value() const noexcept { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

/// e(x) = exp(2 pi i x). The nearest integer to x is removed first, so the
/// angle handed to sin/cos lies in [-pi, pi] and e(-x) = conj(e(x)) exactly.
inline Complex unit_phase(double x) noexcept {
    const double angle = 2.0 * std::numbers::pi * (x - std::round(x));
    return {std::cos(angle), std::sin(angle)};
}

/// Same, with the reduction done in extended precision. Use when x is large
/// enough that its fractional part would lose digits in a double.
inline Complex unit_phase(long double x) noexcept {
    const auto r = static_cast<double>(x - std::round(x));
    const double angle = 2.0 * std::numbers::pi * r;
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace quinary
