#include "quinary/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "quinary/errors.hpp"
#include "quinary/io.hpp"
#include "quinary/kernel.hpp"
#include "quinary/quadrature.hpp"

namespace quinary::expsum {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_exponent(double c) {
    if (!(c > 1.0 && c < 3.0) || c == 2.0) throw ArgumentError("exponent c must lie in (1, 3) and differ from 2");
}

// Integers n with lo < n <= hi.
std::pair<u64, u64> integer_span(Interval J) {
    if (!(J.lo >= 0.0) || !(J.hi >= J.lo)) throw ArgumentError("interval must satisfy 0 <= lo <= hi");
    return {static_cast<u64>(std::floor(J.lo)) + 1, static_cast<u64>(std::floor(J.hi))};
}

// --- Oscillatory quadrature ------------------------------------------------
//
// With u = y^c the integral becomes int g(u) e(t u) du, g(u) = u^{1/c-1}/c,
// which is smooth and non-oscillating on u > 0. Each panel [m-h, m+h] has
// relative width at most 1/16. On a panel g is replaced by its degree-8
// interpolant at Chebyshev nodes; the product with e(t u) is integrated
// exactly through the moments of s^j e^{i kappa s}, kappa = 2 pi t h, when
// |kappa| >= 9 (upward recurrence is stable there) and by Gauss-Legendre on
// short subpanels otherwise.

constexpr int kDegree = 8;
constexpr int kNodes = kDegree + 1;
constexpr double kPanelRatio = 1.0 + 1.0 / 16.0;
constexpr double kInterpTol = 1e-13;

struct Interpolator {
    std::array<double, kNodes> nodes{};
    std::array<std::array<long double, kNodes>, kNodes> inverse{};  // monomial coefficients = inverse * values

    Interpolator() {
        for (int i = 0; i < kNodes; ++i) {
            nodes[static_cast<std::size_t>(i)] = std::cos(std::numbers::pi * (2 * i + 1) / (2.0 * kNodes));
        }
        // Gauss-Jordan on [V | I] in extended precision.
        std::array<std::array<long double, 2 * kNodes>, kNodes> m{};
        for (int i = 0; i < kNodes; ++i) {
            long double p = 1;
            for (int j = 0; j < kNodes; ++j) {
                m[i][j] = p;
                p *= nodes[static_cast<std::size_t>(i)];
            }
            m[i][kNodes + i] = 1;
        }
        for (int col = 0; col < kNodes; ++col) {
            int piv = col;
            for (int r = col + 1; r < kNodes; ++r) {
                if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
            }
            std::swap(m[col], m[piv]);
            const long double d = m[col][col];
            for (auto& v : m[col]) v /= d;
            for (int r = 0; r < kNodes; ++r) {
                if (r == col) continue;
                const long double f = m[r][col];
                for (int j = 0; j < 2 * kNodes; ++j) m[r][j] -= f * m[col][j];
            }
        }
        // m now holds [I | V^{-1}]; row j of V^{-1} yields coefficient j.
        for (int i = 0; i < kNodes; ++i) {
            for (int j = 0; j < kNodes; ++j) inverse[i][j] = m[i][kNodes + j];
        }
    }
};

const Interpolator& interpolator() {
    static const Interpolator interp;
    return interp;
}

struct Integrand {
    double exponent;  // 1/c - 1
    double scale;     // 1/c
    [[nodiscard]] double operator()(long double u) const {
        return scale * std::pow(static_cast<double>(u), exponent);
    }
};

Complex phase_at(double t, long double u) { return unit_phase(static_cast<long double>(t) * u); }

Complex gauss_panel(const Integrand& g, double t, long double a, long double b) {
    const auto& rule = quad::gauss20();
    const long double mid = 0.5L * (a + b);
    const long double half = 0.5L * (b - a);
    CompensatedComplexSum sum;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const long double u = mid + half * rule.nodes[i];
        sum += rule.weights[i] * g(u) * phase_at(t, u);
    }
    return sum.value() * static_cast<double>(half);
}

Complex filon_panel(const std::array<long double, kNodes>& coef, double t, long double a, long double b) {
    const long double half = 0.5L * (b - a);
    const double kappa = kTwoPi * static_cast<double>(static_cast<long double>(t) * half);
    const Complex Eb = phase_at(t, b);
    const Complex Ea = phase_at(t, a);
    const Complex inv_ik = Complex(0.0, -1.0 / kappa);
    Complex nu = (Eb - Ea) * inv_ik;
    Complex total = static_cast<double>(coef[0]) * nu;
    for (int j = 1; j < kNodes; ++j) {
        const Complex boundary = (j % 2 == 0) ? Eb - Ea : Eb + Ea;
        nu = (boundary - static_cast<double>(j) * nu) * inv_ik;
        total += static_cast<double>(coef[static_cast<std::size_t>(j)]) * nu;
    }
    return total * static_cast<double>(half);
}

Complex integrate_panel(const Integrand& g, double t, long double a, long double b, int depth) {
    const Interpolator& ip = interpolator();
    const long double mid = 0.5L * (a + b);
    const long double half = 0.5L * (b - a);
    std::array<double, kNodes> values{};
    for (int i = 0; i < kNodes; ++i) values[static_cast<std::size_t>(i)] = g(mid + half * ip.nodes[static_cast<std::size_t>(i)]);
    std::array<long double, kNodes> coef{};
    for (int j = 0; j < kNodes; ++j) {
        long double s = 0;
        for (int i = 0; i < kNodes; ++i) s += ip.inverse[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * values[static_cast<std::size_t>(i)];
        coef[static_cast<std::size_t>(j)] = s;
    }
    // Interpolation residual at off-node points.
    double residual = 0.0;
    for (const double s : {-0.98, -0.55, 0.1, 0.6, 0.99}) {
        long double p = 0;
        for (int j = kDegree; j >= 0; --j) p = p * s + coef[static_cast<std::size_t>(j)];
        residual = std::max(residual, std::fabs(static_cast<double>(p) - g(mid + half * s)));
    }
    if (residual > kInterpTol * std::fabs(g(mid))) {
        if (depth >= 30) {
            std::ostringstream msg;
            msg << "oscillatory_integral: interpolation residual " << residual << " on panel ["
                << static_cast<double>(a) << ", " << static_cast<double>(b) << "] after " << depth << " splits";
            throw NumericError(msg.str());
        }
        return integrate_panel(g, t, a, mid, depth + 1) + integrate_panel(g, t, mid, b, depth + 1);
    }
    const double kappa = std::fabs(kTwoPi * static_cast<double>(static_cast<long double>(t) * half));
    if (kappa >= kNodes) return filon_panel(coef, t, a, b);
    const int pieces = std::max(1, static_cast<int>(std::ceil(kappa / 4.0)));
    Complex total = 0.0;
    for (int k = 0; k < pieces; ++k) {
        const long double lo = a + (b - a) * k / pieces;
        const long double hi = k + 1 == pieces ? b : a + (b - a) * (k + 1) / pieces;
        total += gauss_panel(g, t, lo, hi);
    }
    return total;
}

}  // namespace

void ExpSumQuery::validate() const {
    check_exponent(c);
    if (!(X >= 2.0)) throw ArgumentError("X must be at least 2");
    const double slack = 1e-12 * X;
    if (!(J.lo >= 0.5 * X - slack) || !(J.hi <= X + slack) || !(J.lo <= J.hi)) {
        throw ArgumentError("interval J must lie inside (X/2, X]");
    }
    if (d == 0) throw ArgumentError("modulus d must be positive");
    if (std::gcd(l, d) != 1) throw ArgumentError("residue l must be coprime to d");
}

ExpSumQuery full_query(double X, double c, double t) {
    ExpSumQuery q;
    q.X = X;
    q.c = c;
    q.t = t;
    q.J = {0.5 * X, X};
    return q;
}

PhaseSum PhaseSum::primes(const arith::PrimeTable& table, Interval J, double c, u64 l, u64 d) {
    const auto [first, last] = integer_span(J);
    PhaseSum s;
    if (first > last) return s;
    if (!table.covers(first - 1, last)) throw StateError("prime table does not cover the requested interval");
    if (d == 0) throw ArgumentError("modulus d must be positive");
    const u64 r = l % d;
    CompensatedSum total;
    for (const u64 p : table.in_range(first - 1, last)) {
        if (p % d != r) continue;
        const double w = std::log(static_cast<double>(p));
        s.power_.push_back(std::pow(static_cast<long double>(p), static_cast<long double>(c)));
        s.weight_.push_back(w);
        total += w;
    }
    s.total_ = total.value();
    return s;
}

PhaseSum PhaseSum::integers(Interval J, double c) {
    const auto [first, last] = integer_span(J);
    PhaseSum s;
    for (u64 n = first; n <= last && first <= last; ++n) {
        s.power_.push_back(std::pow(static_cast<long double>(n), static_cast<long double>(c)));
        s.weight_.push_back(1.0);
    }
    s.total_ = static_cast<double>(s.power_.size());
    return s;
}

PhaseSum PhaseSum::mangoldt(const arith::MangoldtTable& table, Interval J, double c, u64 a, u64 d) {
    const auto [first, last] = integer_span(J);
    PhaseSum s;
    if (first > last) return s;
    if (last > table.n_max()) throw StateError("von Mangoldt table does not cover the requested interval");
    if (d == 0) throw ArgumentError("modulus d must be positive");
    const u64 r = a % d;
    u64 n = first + (r + d - first % d) % d;
    CompensatedSum total;
    for (; n <= last; n += d) {
        const double w = table(n);
        if (w == 0.0) continue;
        s.power_.push_back(std::pow(static_cast<long double>(n), static_cast<long double>(c)));
        s.weight_.push_back(w);
        total += w;
    }
    s.total_ = total.value();
    return s;
}

Complex PhaseSum::operator()(double t) const {
    const auto tl = static_cast<long double>(t);
    CompensatedComplexSum sum;
    for (std::size_t i = 0; i < power_.size(); ++i) sum += weight_[i] * unit_phase(tl * power_[i]);
    return sum.value();
}

Complex eval_S(const ExpSumQuery& query, const arith::PrimeTable& table) {
    query.validate();
    return PhaseSum::primes(table, query.J, query.c, query.l, query.d)(query.t);
}

Complex eval_A(double X, double c, double t) {
    check_exponent(c);
    if (!(X >= 4.0)) throw ArgumentError("eval_A: X must be at least 4");
    const auto [first, last] = integer_span({0.5 * X, X});
    const auto tl = static_cast<long double>(t);
    const auto cl = static_cast<long double>(c);
    CompensatedComplexSum sum;
    for (u64 n = first; n <= last; ++n) sum += unit_phase(tl * std::pow(static_cast<long double>(n), cl));
    return sum.value();
}

Complex oscillatory_integral(double c, double t, double lo, double hi) {
    check_exponent(c);
    if (!(lo > 0.0) || !(hi >= lo)) throw ArgumentError("oscillatory_integral: need 0 < lo <= hi");
    if (hi == lo) return 0.0;
    if (t == 0.0) return hi - lo;
    const Integrand g{1.0 / c - 1.0, 1.0 / c};
    const long double U0 = std::pow(static_cast<long double>(lo), static_cast<long double>(c));
    const long double U1 = std::pow(static_cast<long double>(hi), static_cast<long double>(c));
    CompensatedComplexSum sum;
    for (long double a = U0; a < U1;) {
        const long double b = std::min(U1, a * kPanelRatio);
        sum += integrate_panel(g, t, a, b, 0);
        a = b;
    }
    const Complex v = sum.value();
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NumericError("oscillatory_integral: non-finite result");
    return v;
}

Complex eval_I(double X, double c, double t, Interval J) {
    ExpSumQuery q = full_query(X, c, t);
    q.J = J;
    q.validate();
    return oscillatory_integral(c, t, J.lo, J.hi);
}

Complex eval_I(double X, double c, double t) { return eval_I(X, c, t, {0.5 * X, X}); }

Complex eval_E(const arith::MangoldtTable& table, double y, double mu, double c, double t, u64 d, u64 a) {
    check_exponent(c);
    if (!(mu > 0.0 && mu < 1.0)) throw ArgumentError("eval_E: mu must lie in (0, 1)");
    if (!(y > 1.0)) throw ArgumentError("eval_E: y must exceed 1");
    if (d == 0 || std::gcd(a, d) != 1) throw ArgumentError("eval_E: need d >= 1 and gcd(a, d) = 1");
    const Complex sum = PhaseSum::mangoldt(table, {mu * y, y}, c, a, d)(t);
    const Complex integral = oscillatory_integral(c, t, mu * y, y);
    return sum - integral / static_cast<double>(arith::euler_phi(d));
}

BVTable bv_table(const arith::MangoldtTable& table, double X, double c, double t, double A, double mu, int y_points) {
    check_exponent(c);
    if (!(X > std::numbers::e)) throw ArgumentError("bv_table: X must exceed e");
    if (y_points < 1) throw ArgumentError("bv_table: need at least one y point");
    if (X > static_cast<double>(table.n_max())) throw StateError("von Mangoldt table does not cover X");
    const double L = std::log(X);
    BVTable out;
    out.X = X;
    out.A = A;
    out.d_max = std::sqrt(X) / std::pow(L, A + 5.0);
    out.majorant = X / std::pow(L, A);
    const auto dmax = static_cast<u64>(std::floor(out.d_max));
    if (static_cast<double>(dmax) * y_points * X > 4e9) throw ResourceError("bv_table: work estimate exceeds budget");
    std::vector<double> ys;
    for (int k = 0; k < y_points; ++k) {
        const double frac = y_points == 1 ? 1.0 : static_cast<double>(k) / (y_points - 1);
        ys.push_back(X * std::pow(2.0, -4.0 * (1.0 - frac)));
    }
    CompensatedSum total;
    for (u64 d = 1; d <= dmax; ++d) {
        BVRow row;
        row.d = d;
        const double phi = static_cast<double>(arith::euler_phi(d));
        for (const double y : ys) {
            if (!(mu * y > 0.0) || y <= 1.0) continue;
            const Complex integral = oscillatory_integral(c, t, mu * y, y) / phi;
            // One pass over (mu y, y] accumulates every residue class.
            std::vector<CompensatedComplexSum> by_class(d);
            const auto [first, last] = integer_span({mu * y, y});
            const auto tl = static_cast<long double>(t);
            const auto cl = static_cast<long double>(c);
            for (u64 n = first; n <= last; ++n) {
                const double w = table(n);
                if (w == 0.0) continue;
                by_class[n % d] += w * unit_phase(tl * std::pow(static_cast<long double>(n), cl));
            }
            for (u64 a = 0; a < d; ++a) {
                if (std::gcd(a, d) != 1) continue;
                const double e = std::abs(by_class[a].value() - integral);
                if (e > row.max_abs_E) {
                    row.max_abs_E = e;
                    row.worst_a = a;
                    row.worst_y = y;
                }
            }
        }
        total += row.max_abs_E;
        out.rows.push_back(row);
    }
    out.total = total.value();
    return out;
}

double level_D(double X, double A) {
    if (!(X > 1.0)) throw ArgumentError("level_D: X must exceed 1");
    return std::sqrt(X) / std::pow(std::log(X), A);
}

Complex eval_K(const arith::PrimeTable& table, double X, double c, double t, double D) {
    check_exponent(c);
    if (!(X >= 4.0)) throw ArgumentError("eval_K: X must be at least 4");
    if (!(D > 0.0)) throw ArgumentError("eval_K: D must be positive");
    const auto [first, last] = integer_span({0.5 * X, X});
    if (!table.covers(first - 1, last)) throw StateError("prime table does not cover (X/2, X]");
    const auto primes = table.in_range(first - 1, last);
    const auto tl = static_cast<long double>(t);
    const auto cl = static_cast<long double>(c);
    std::vector<Complex> terms(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const auto p = static_cast<long double>(primes[i]);
        terms[i] = std::log(static_cast<double>(primes[i])) * unit_phase(tl * std::pow(p, cl));
    }
    CompensatedComplexSum sum;
    for (u64 m = 2; static_cast<double>(m) < D; m += 2) {
        const double lo = std::max(1.0 + static_cast<double>(m) * X / D, 0.5 * X);
        if (lo >= X) continue;
        const u64 mod = 4 * m;
        const u64 plus = 1 + m;       // j = +1, chi4 = +1
        const u64 minus = 3 * m + 1;  // j = -1, i.e. 1 - m mod 4m, chi4 = -1
        for (std::size_t i = 0; i < primes.size(); ++i) {
            if (static_cast<double>(primes[i]) <= lo) continue;
            const u64 r = primes[i] % mod;
            if (r == plus) {
                sum += terms[i];
            } else if (r == minus) {
                sum += -terms[i];
            }
        }
    }
    return sum.value();
}

double vdc_bound(double Y, double X, const exponents::ExponentPair& pair) {
    if (!(Y > 0.0) || !(X >= 1.0)) throw ArgumentError("vdc_bound: need Y > 0 and X >= 1");
    if (!pair.in_range()) throw ArgumentError("vdc_bound: pair outside the exponent-pair range");
    return std::pow(Y, pair.kappa.to_double()) * std::pow(X, pair.lambda.to_double()) + 1.0 / Y;
}

double A_envelope(double X, double c, double t) {
    if (t == 0.0) return X;
    const double at = std::fabs(t);
    return std::min(std::sqrt(at * std::pow(X, c - 1.0)) * std::sqrt(X) + std::pow(X, 1.0 - c) / at, X);
}

std::array<Complex, 6> telescoping_terms(Complex S1, Complex S2, Complex I1, Complex I2) {
    const Complex dS = S1 - I1;
    const Complex I1_2 = I1 * I1;
    const Complex I1_3 = I1_2 * I1;
    const Complex I1_4 = I1_3 * I1;
    return {I1_4 * I2,
            (S2 - I2) * I1_4,
            S2 * dS * I1_3,
            S1 * S2 * dS * I1_2,
            S1 * S1 * S2 * dS * I1,
            S1 * S1 * S1 * S2 * dS};
}

double weyl_vdc_rhs(std::span<const Complex> a, int Q) {
    if (Q < 1) throw ArgumentError("weyl_vdc_rhs: Q must be a positive integer");
    const auto N = a.size();
    CompensatedSum inner;
    for (const Complex& z : a) inner += std::norm(z);
    for (int q = 1; q < Q && static_cast<std::size_t>(q) < N; ++q) {
        CompensatedSum corr;
        for (std::size_t n = 0; n + static_cast<std::size_t>(q) < N; ++n) {
            corr += (a[n + static_cast<std::size_t>(q)] * std::conj(a[n])).real();
        }
        inner += 2.0 * (1.0 - static_cast<double>(q) / Q) * corr.value();
    }
    return (1.0 + static_cast<double>(N) / Q) * inner.value();
}

double minor_arc_start(double X, double c) { return std::pow(X, 0.25 - c); }

namespace {

// Trapezoid of f on [0, b] with doubling; returns integral, final nodes and
// last relative change.
template <class F>
std::tuple<double, int, double> trapezoid_doubling(F&& f, double b, const MomentOptions& opt) {
    int intervals = std::max(2, opt.initial_points - 1);
    std::vector<double> values(static_cast<std::size_t>(intervals) + 1);
    for (int i = 0; i <= intervals; ++i) values[static_cast<std::size_t>(i)] = f(b * i / intervals);
    auto rule = [&](const std::vector<double>& v, int n) {
        CompensatedSum s;
        s += 0.5 * (v.front() + v.back());
        for (int i = 1; i < n; ++i) s += v[static_cast<std::size_t>(i)];
        return s.value() * b / n;
    };
    double prev = rule(values, intervals);
    for (int pass = 0; pass < opt.max_doublings; ++pass) {
        std::vector<double> next(2 * static_cast<std::size_t>(intervals) + 1);
        for (int i = 0; i <= intervals; ++i) next[2 * static_cast<std::size_t>(i)] = values[static_cast<std::size_t>(i)];
        for (int i = 0; i < intervals; ++i) {
            next[2 * static_cast<std::size_t>(i) + 1] = f(b * (2 * i + 1) / (2.0 * intervals));
        }
        intervals *= 2;
        values = std::move(next);
        const double cur = rule(values, intervals);
        const double change = std::fabs(cur - prev) / std::max(std::fabs(cur), 1e-300);
        if (change < opt.tolerance) return {cur, intervals + 1, change};
        prev = cur;
    }
    throw NumericError("trapezoid rule did not reach the requested relative change");
}

}  // namespace

double pair_sum_moment(const PhaseSum& sum, double t0, double t1) {
    const auto P = sum.powers();
    const auto w = sum.weights();
    const long double a = t0, b = t1;
    CompensatedSum total;
    for (std::size_t i = 0; i < P.size(); ++i) total += w[i] * w[i] * (t1 - t0);
    for (std::size_t i = 0; i < P.size(); ++i) {
        CompensatedSum row;
        for (std::size_t j = i + 1; j < P.size(); ++j) {
            const long double delta = P[j] - P[i];
            const long double xb = b * delta, xa = a * delta;
            const double fb = static_cast<double>(xb - std::round(xb));
            const double fa = static_cast<double>(xa - std::round(xa));
            const double value = (std::sin(kTwoPi * fb) - std::sin(kTwoPi * fa)) / (kTwoPi * static_cast<double>(delta));
            row += w[j] * value;
        }
        total += 2.0 * w[i] * row.value();
    }
    return total.value();
}

MomentReport moment_report(const arith::PrimeTable& table, double X, double c, double n, const MomentOptions& options) {
    check_exponent(c);
    if (!(X >= 8.0) || X > 1e6) throw ArgumentError("moment_report: X must lie in [8, 1e6]");
    MomentReport r;
    r.X = X;
    r.c = c;
    r.n = n;
    r.Delta = minor_arc_start(X, c);
    const double L = std::log(X);
    const PhaseSum S = PhaseSum::primes(table, {0.5 * X, X}, c);

    auto [i1, n1, ch1] = trapezoid_doubling([&](double t) { return std::norm(S(t)); }, r.Delta, options);
    auto [i2, n2, ch2] = trapezoid_doubling([&](double t) { return std::norm(eval_I(X, c, t)); }, r.Delta, options);
    // |S(-t)| = |S(t)|, so the symmetric integrals are twice the half-range ones.
    r.integral = {2.0 * i1, 2.0 * i2, pair_sum_moment(S, n, n + 1.0)};
    r.grid_points = {n1, n2};
    r.last_change = {ch1, ch2};
    r.majorant = {std::pow(X, 2.0 - c) * L * L * L, std::pow(X, 2.0 - c) * L, X * L * L * L};
    for (std::size_t k = 0; k < 3; ++k) r.ratio[k] = r.integral[k] / r.majorant[k];
    return r;
}

std::string moment_json(const MomentReport& r) {
    nlohmann::ordered_json j;
    j["X"] = r.X;
    j["c"] = r.c;
    j["Delta"] = r.Delta;
    for (std::size_t k = 0; k < 3; ++k) {
        const std::string s = std::to_string(k + 1);
        j["integral_" + s] = r.integral[k];
        j["majorant_" + s] = r.majorant[k];
        j["ratio_" + s] = r.ratio[k];
    }
    j["grid_points_1"] = r.grid_points[0];
    j["grid_points_2"] = r.grid_points[1];
    j["unit_interval_start"] = r.n;
    return j.dump(2);
}

GapReport sum_integral_gap(const arith::PrimeTable& table, double X, double c, double t) {
    check_exponent(c);
    if (std::fabs(t) > minor_arc_start(X, c) * (1.0 + 1e-12)) throw ArgumentError("sum_integral_gap: need |t| <= X^{1/4-c}");
    const Complex S = eval_S(full_query(X, c, t), table);
    const Complex I = eval_I(X, c, t);
    GapReport g;
    g.S_abs = std::abs(S);
    g.I_abs = std::abs(I);
    g.gap = std::abs(S - I);
    g.relative = g.gap / g.I_abs;
    g.over_X = g.gap / X;
    return g;
}

double minor_arc_end(double X) {
    const double L = std::log(X);
    return L * L / kernel::epsilon_of(X);
}

KMoment k_moment(const arith::PrimeTable& table, double X, double c, double A, int points) {
    check_exponent(c);
    if (points < 2) throw ArgumentError("k_moment: need at least two grid points");
    KMoment out;
    out.D = level_D(X, A);
    const double L = std::log(X);
    out.majorant = X * std::pow(L, 7);
    out.grid_points = points;
    if (out.D <= 2.0) return out;  // no even m < D
    const double eps = kernel::epsilon_of(X);
    const kernel::KernelParams kp = kernel::make_kernel(eps, X);
    const double lo = minor_arc_start(X, c);
    const double hi = minor_arc_end(X);
    if (!(hi > lo)) return out;
    CompensatedSum sum;
    const double h = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) {
        const double t = lo + h * i;
        const double v = std::norm(eval_K(table, X, c, t, out.D)) * std::fabs(kernel::theta_fourier(kp, t));
        sum += (i == 0 || i == points - 1) ? 0.5 * v : v;
    }
    out.integral = sum.value() * h;
    out.ratio = out.integral / out.majorant;
    return out;
}

void write_sum_csv(std::ostream& os, std::span<const double> ts, std::span<const Complex> values) {
    if (ts.size() != values.size()) throw ArgumentError("write_sum_csv: size mismatch");
    os << "t,re,im,abs\n";
    for (std::size_t i = 0; i < ts.size(); ++i) {
        os << io::fmt(ts[i]) << ',' << io::fmt(values[i].real()) << ',' << io::fmt(values[i].imag()) << ','
           << io::fmt(std::abs(values[i])) << '\n';
    }
}

}  // namespace quinary::expsum
