#pragma once

// Smooth plateau kernel theta(y) and its Fourier transform Theta(x).
//
// theta is the indicator of [-a, a] convolved with the density of a sum of
// k independent uniforms on [-delta/k, delta/k]. It equals 1 on
// |y| <= a - delta, vanishes on |y| >= a + delta, is k - 1 times continuously
// differentiable, and its transform is a product of sinc factors:
//
//   Theta(x) = sin(2 pi a x) / (pi x) * [sin(v) / v]^k,  v = 2 pi delta x / k.

#include <iosfwd>
#include <span>

namespace quinary::kernel {

struct KernelParams {
    double a = 0.0;
    double delta = 0.0;
    int k = 1;

    /// Throws ArgumentError unless 0 < delta < a / 4 and k >= 1.
    void validate() const;
    [[nodiscard]] double plateau() const noexcept { return a - delta; }
    [[nodiscard]] double support() const noexcept { return a + delta; }
};

/// a = 9 eps / 10, delta = eps / 10, k = ceil(log X).
KernelParams make_kernel(double epsilon, double X);

/// a = 5 eps / 4, delta = eps / 4, k = floor(log X0): plateau radius eps,
/// support radius 3 eps / 2.
KernelParams make_kernel0(double epsilon, double X0);

/// eps(X) = (log log X)^6 / (log X)^theta0.
double epsilon_of(double X);

/// Distribution function of the sum of k independent U[0, 1] variables,
/// evaluated with the cardinal B-spline recurrence (all terms nonnegative).
double irwin_hall_cdf(int k, double x);

/// theta(y). Values strictly between the plateau and the support are
/// clamped into the open interval (0, 1).
double theta_eval(const KernelParams& params, double y);

/// Theta(x), real because theta is even.
double theta_fourier(const KernelParams& params, double x);

/// The three envelope branches 2a, 1/(pi|x|), 1/(pi|x|) (k/(2 pi |x| delta))^k.
struct FourierEnvelope {
    double flat = 0.0;
    double decay = 0.0;
    double smooth = 0.0;
    [[nodiscard]] double min() const noexcept;
};
FourierEnvelope fourier_envelope(const KernelParams& params, double x);

/// CSV "y,theta".
void write_theta_csv(std::ostream& os, const KernelParams& params, std::span<const double> ys);

/// CSV "x,Theta,bound".
void write_fourier_csv(std::ostream& os, const KernelParams& params, std::span<const double> xs);

}  // namespace quinary::kernel
