#include "quinary/kernel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <vector>

#include "quinary/errors.hpp"
#include "quinary/exponents.hpp"
#include "quinary/io.hpp"

namespace quinary::kernel {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double v) noexcept {
    if (std::fabs(v) < 1e-4) {
        const double v2 = v * v;
        return 1.0 - v2 / 6.0 + v2 * v2 / 120.0;
    }
    return std::sin(v) / v;
}

// ceil/floor of log X where values within 1e-9 of an integer count as that
// integer, so X = e^n gives exactly n.
int log_ceil(double X) {
    const double l = std::log(X);
    const double r = std::round(l);
    return std::fabs(l - r) < 1e-9 ? static_cast<int>(r) : static_cast<int>(std::ceil(l));
}

int log_floor(double X) {
    const double l = std::log(X);
    const double r = std::round(l);
    return std::fabs(l - r) < 1e-9 ? static_cast<int>(r) : static_cast<int>(std::floor(l));
}

}  // namespace

void KernelParams::validate() const {
    if (!(a > 0.0) || !(delta > 0.0) || !(delta < a / 4.0)) {
        throw ArgumentError("kernel parameters need 0 < delta < a/4");
    }
    if (k < 1) throw ArgumentError("kernel parameter k must be >= 1");
}

KernelParams make_kernel(double epsilon, double X) {
    if (!(epsilon > 0.0)) throw ArgumentError("make_kernel: epsilon must be positive");
    if (!(X > 1.0)) throw ArgumentError("make_kernel: X must exceed 1");
    KernelParams p{0.9 * epsilon, 0.1 * epsilon, log_ceil(X)};
    p.validate();
    return p;
}

KernelParams make_kernel0(double epsilon, double X0) {
    if (!(epsilon > 0.0)) throw ArgumentError("make_kernel0: epsilon must be positive");
    if (!(X0 >= std::numbers::e)) throw ArgumentError("make_kernel0: X0 must be at least e");
    KernelParams p{1.25 * epsilon, 0.25 * epsilon, log_floor(X0)};
    p.validate();
    return p;
}

double epsilon_of(double X) {
    if (!(X > std::numbers::e)) throw ArgumentError("epsilon_of: X must exceed e");
    const double l = std::log(X);
    return std::pow(std::log(l), 6) / std::pow(l, exponents::theta0().approx);
}

double irwin_hall_cdf(int k, double x) {
    if (k < 1) throw ArgumentError("irwin_hall_cdf: k must be >= 1");
    if (x <= 0.0) return 0.0;
    if (x >= k) return 1.0;
    const double fl = std::floor(x);
    const double u = x - fl;
    const int m = k + 1;
    // v[i] = M_order(u + i), cardinal B-spline of the current order.
    std::vector<double> v(static_cast<std::size_t>(m), 0.0);
    v[0] = 1.0;
    for (int order = 2; order <= m; ++order) {
        for (int i = order - 1; i >= 0; --i) {
            const double t = u + i;
            const double left = v[static_cast<std::size_t>(i)];
            const double right = i > 0 ? v[static_cast<std::size_t>(i - 1)] : 0.0;
            v[static_cast<std::size_t>(i)] = (t * left + (order - t) * right) / (order - 1);
        }
    }
    const int top = std::min(static_cast<int>(fl), k);
    double sum = 0.0;
    for (int i = 0; i <= top; ++i) sum += v[static_cast<std::size_t>(i)];
    return std::min(sum, 1.0);
}

double theta_eval(const KernelParams& params, double y) {
    const double ay = std::fabs(y);
    if (ay <= params.plateau()) return 1.0;
    if (ay >= params.support()) return 0.0;
    // theta(y) = P(Z > |y| - a), Z = h (2W - k), W ~ Irwin-Hall(k), h = delta/k.
    const double h = params.delta / params.k;
    const double w = 0.5 * ((ay - params.a) / h + params.k);
    double value;
    if (w >= 0.5 * params.k) {
        value = irwin_hall_cdf(params.k, params.k - w);
    } else {
        value = 1.0 - irwin_hall_cdf(params.k, w);
    }
    constexpr double below_one = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
    return std::clamp(value, std::numeric_limits<double>::denorm_min(), below_one);
}

double theta_fourier(const KernelParams& params, double x) {
    const double box = 2.0 * params.a * sinc(2.0 * kPi * params.a * x);
    const double s = sinc(2.0 * kPi * params.delta * x / params.k);
    return box * std::pow(s, params.k);
}

double FourierEnvelope::min() const noexcept { return std::min({flat, decay, smooth}); }

FourierEnvelope fourier_envelope(const KernelParams& params, double x) {
    const double ax = std::fabs(x);
    FourierEnvelope env;
    env.flat = 2.0 * params.a;
    if (ax == 0.0) {
        env.decay = env.smooth = std::numeric_limits<double>::infinity();
        return env;
    }
    env.decay = 1.0 / (kPi * ax);
    env.smooth = env.decay * std::pow(params.k / (2.0 * kPi * ax * params.delta), params.k);
    return env;
}

void write_theta_csv(std::ostream& os, const KernelParams& params, std::span<const double> ys) {
    os << "y,theta\n";
    for (const double y : ys) os << io::fmt(y) << ',' << io::fmt(theta_eval(params, y)) << '\n';
}

void write_fourier_csv(std::ostream& os, const KernelParams& params, std::span<const double> xs) {
    os << "x,Theta,bound\n";
    for (const double x : xs) {
        os << io::fmt(x) << ',' << io::fmt(theta_fourier(params, x)) << ','
           << io::fmt(fourier_envelope(params, x).min()) << '\n';
    }
}

}  // namespace quinary::kernel
