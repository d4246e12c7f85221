#pragma once

// Exponential sums over primes, integers and prime powers with phase t n^c,
// the matching oscillatory integrals, and desk-scale moment statistics.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "quinary/arith.hpp"
#include "quinary/exponents.hpp"
#include "quinary/numeric.hpp"

namespace quinary::expsum {

using arith::u64;

/// Half-open real interval (lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    [[nodiscard]] double length() const noexcept { return hi - lo; }
};

/// Selects sum over p in J, p = l (mod d), of e(t p^c) log p.
struct ExpSumQuery {
    double X = 0.0;
    double c = 0.0;
    double t = 0.0;
    Interval J;
    u64 l = 1;
    u64 d = 1;

    /// c in (1, 3) minus {2}, J inside (X/2, X], d >= 1, gcd(l, d) = 1.
    void validate() const;
};

/// Query over the full range (X/2, X] with trivial residue class.
ExpSumQuery full_query(double X, double c, double t);

/// Terms w_n e(t n^c) with n^c precomputed in extended precision, for
/// repeated evaluation at many t.
class PhaseSum {
public:
    /// Primes in (J.lo, J.hi] congruent to l mod d, weight log p.
    static PhaseSum primes(const arith::PrimeTable& table, Interval J, double c, u64 l = 1, u64 d = 1);
    /// Integers in (J.lo, J.hi], weight 1.
    static PhaseSum integers(Interval J, double c);
    /// Integers n in (J.lo, J.hi] with n = a mod d, weight Lambda(n).
    static PhaseSum mangoldt(const arith::MangoldtTable& table, Interval J, double c, u64 a = 1, u64 d = 1);

    [[nodiscard]] Complex operator()(double t) const;
    [[nodiscard]] std::size_t size() const noexcept { return power_.size(); }
    /// Sum of the weights, the value at t = 0.
    [[nodiscard]] double total_weight() const noexcept { return total_; }
    [[nodiscard]] std::span<const long double> powers() const noexcept { return power_; }
    [[nodiscard]] std::span<const double> weights() const noexcept { return weight_; }

private:
    std::vector<long double> power_;
    std::vector<double> weight_;
    double total_ = 0.0;
};

/// S_{l,d;J}(t). Throws StateError if the table does not cover J.
Complex eval_S(const ExpSumQuery& query, const arith::PrimeTable& table);

/// A(t) = sum over integers n in (X/2, X] of e(t n^c). Requires X >= 4.
Complex eval_A(double X, double c, double t);

/// Integral of g(u) e(t u) over [u0, u1] for smooth positive g with
/// nonvanishing derivative of the phase; here specialized to the
/// substitution u = y^c. Public for reuse by E and the moment code.
Complex oscillatory_integral(double c, double t, double lo, double hi);

/// I_J(t) = integral over J of e(t y^c) dy, J inside (X/2, X].
Complex eval_I(double X, double c, double t, Interval J);
/// I(t) over (X/2, X].
Complex eval_I(double X, double c, double t);

/// E(y, t, d, a): the Lambda-weighted progression sum over (mu y, y] minus
/// the integral over the same range divided by phi(d).
Complex eval_E(const arith::MangoldtTable& table, double y, double mu, double c, double t, u64 d, u64 a);

struct BVRow {
    u64 d = 0;
    double max_abs_E = 0.0;
    u64 worst_a = 0;
    double worst_y = 0.0;
};

struct BVTable {
    double X = 0.0;
    double A = 0.0;
    double d_max = 0.0;       // sqrt(X) / (log X)^{A+5}
    std::vector<BVRow> rows;  // empty when d_max < 1
    double total = 0.0;       // sum of max_abs_E
    double majorant = 0.0;    // X / (log X)^A
};

/// Maximum of |E| over coprime residues a and over y on a grid of
/// `y_points` values in [X/16, X], for each d <= d_max.
BVTable bv_table(const arith::MangoldtTable& table, double X, double c, double t, double A, double mu = 0.5,
                 int y_points = 16);

/// D = sqrt(X) / (log X)^A.
double level_D(double X, double A);

/// K(t): sum over even m < D and j = +-1 of chi4(j) S_{1+jm, 4m; J_m}(t),
/// J_m = (max(1 + mX/D, X/2), X]. Zero when D <= 2.
Complex eval_K(const arith::PrimeTable& table, double X, double c, double t, double D);

/// Y^kappa X^lambda + 1/Y.
double vdc_bound(double Y, double X, const exponents::ExponentPair& pair);

/// Majorant of |A(t)| from the (1/2, 1/2) pair: min((|t| X^{c-1})^{1/2} X^{1/2} + X^{1-c}/|t|, X).
double A_envelope(double X, double c, double t);

/// The six terms on the right of the telescoping identity
/// S1^4 S2 = I1^4 I2 + (S2 - I2) I1^4 + S2 (S1 - I1) I1^3 + S1 S2 (S1 - I1) I1^2
///           + S1^2 S2 (S1 - I1) I1 + S1^3 S2 (S1 - I1).
std::array<Complex, 6> telescoping_terms(Complex S1, Complex S2, Complex I1, Complex I2);

/// Right side of the Weyl-van der Corput inequality for the sequence a over
/// an interval of length N = a.size():
/// (1 + N/Q) sum_{|q| < Q} (1 - |q|/Q) sum_n a(n+q) conj(a(n)).
double weyl_vdc_rhs(std::span<const Complex> a, int Q);

struct MomentOptions {
    int initial_points = 256;     // trapezoid nodes on [0, Delta] at the first pass
    int max_doublings = 12;
    double tolerance = 0.01;      // relative change between passes
};

struct MomentReport {
    double X = 0.0;
    double c = 0.0;
    double Delta = 0.0;
    std::array<double, 3> integral{};   // (i) |S|^2 on [-Delta, Delta], (ii) |I|^2 there, (iii) |S|^2 on [n, n+1]
    std::array<double, 3> majorant{};   // X^{2-c} log^3 X, X^{2-c} log X, X log^3 X
    std::array<double, 3> ratio{};
    std::array<int, 2> grid_points{};   // final trapezoid node counts for (i), (ii)
    std::array<double, 2> last_change{};
    double n = 0.0;                     // left end of the unit interval in (iii)
};

/// Delta = X^{1/4 - c}.
double minor_arc_start(double X, double c);

/// H = log^2 X / eps(X), the far end of the t range handled by the bounds.
double minor_arc_end(double X);

/// Moments (i)-(iii). (i) and (ii) use the trapezoid rule on a uniform grid
/// with doubling until the relative change is below tolerance; (iii) uses the
/// exact pair sum of the unit-interval integral. Throws NumericError when the
/// trapezoid does not converge.
MomentReport moment_report(const arith::PrimeTable& table, double X, double c, double n = 0.0,
                           const MomentOptions& options = {});

/// Exact integral over [t0, t1] of |sum_p w_p e(t p^c)|^2 by pairing terms.
double pair_sum_moment(const PhaseSum& sum, double t0, double t1);

/// JSON object {X, c, Delta, integral_1..3, majorant_1..3, ratio_1..3}.
std::string moment_json(const MomentReport& report);

struct GapReport {
    double S_abs = 0.0;
    double I_abs = 0.0;
    double gap = 0.0;          // |S(t) - I(t)|
    double relative = 0.0;     // gap / |I(t)|
    double over_X = 0.0;       // gap / X
};

/// Compares S(t) and I(t) on (X/2, X]. Requires |t| <= Delta.
GapReport sum_integral_gap(const arith::PrimeTable& table, double X, double c, double t);

struct KMoment {
    double D = 0.0;
    double integral = 0.0;     // int_Delta^H |K|^2 |Theta| dt, trapezoid
    double majorant = 0.0;     // X log^7 X
    double ratio = 0.0;
    int grid_points = 0;
};

/// Trapezoid estimate of the K moment on [Delta, H] with the kernel built
/// from eps(X); `points` nodes, uniform.
KMoment k_moment(const arith::PrimeTable& table, double X, double c, double A, int points);

/// CSV "t,re,im,abs".
void write_sum_csv(std::ostream& os, std::span<const double> ts, std::span<const Complex> values);

}  // namespace quinary::expsum
