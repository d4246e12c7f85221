#pragma once

// Prime solutions of |p1^c + ... + p5^c - N| < eps with p1 = x^2 + y^2 + 1:
// budgeted meet-in-the-middle search, the weighted counts Gamma and Gamma_0
// with their divisor-range split, the four-prime counter, the Euler product
// in Linnik's asymptotic, and divisor-window statistics of p - 1.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quinary/arith.hpp"

namespace quinary::counting {

using arith::u64;

/// dyadic: primes in (X/2, X]; exhaustive: primes in (1, N^{1/c}].
enum class PrimeRange { dyadic, exhaustive };

struct SearchParams {
    double N = 0.0;
    double c = 0.0;
    double epsilon = 0.0;
    bool require_linnik = false;
    PrimeRange range = PrimeRange::dyadic;

    /// X = (N/4)^{1/c}.
    [[nodiscard]] double X() const;
    /// N > 0 finite, 1 <= c < 5363/3900, epsilon >= 0 finite.
    void validate() const;
};

/// (log log N)^6 / (log N)^{theta_0}, the tolerance in the asymptotic statement.
double formula_epsilon(double N);

struct Quintuple {
    std::array<u64, 5> p{};
    std::optional<arith::LinnikCertificate> certificate;  // for p[0]
    long double residual = 0.0L;                          // |sum p_i^c - N|
    friend bool operator==(const Quintuple& a, const Quintuple& b) { return a.p == b.p; }
};

/// |sum p_i^c - N| in extended precision, terms added in index order.
long double residual(const std::array<u64, 5>& p, double c, double N);

struct SearchBudget {
    /// Largest number of (p1, p2, p3) complement lookups.
    u64 max_lookups = u64{1} << 32;
    unsigned threads = 1;
};

struct SearchResult {
    std::vector<Quintuple> solutions;  // ordered tuples, lexicographic
    double X = 0.0;
    double p_lo = 0.0, p_hi = 0.0;     // primes searched lie in (p_lo, p_hi]
    u64 primes = 0;
    u64 first_primes = 0;              // admissible p1 values
    u64 pairs = 0;                     // size of the (p4, p5) table
    u64 lookups = 0;
    u64 lookups_needed = 0;
    u64 first_primes_searched = 0;     // p1 values fully processed, in increasing order
    bool complete = false;             // false when the budget cut the search short
    double formula_epsilon = 0.0;
};

/// Sorted pair sums p4^c + p5^c, complements located by binary search.
/// Work is split across p1 in a fixed order, so the result does not depend
/// on the thread count. An incomplete search is not a nonexistence claim.
SearchResult search_solutions(const SearchParams& params, const SearchBudget& budget = {});

/// CSV "p1,p2,p3,p4,p5,x,y,residual"; x, y empty without a certificate.
void write_solutions_csv(std::ostream& os, std::span<const Quintuple> solutions);

struct GammaReport {
    double X = 0.0;
    u64 primes = 0;
    u64 count = 0;           // tuples with |sum - N| < eps
    double gamma = 0.0;      // sum of r(p1 - 1) prod log p_k over those tuples
    double gamma0 = 0.0;     // same with the indicator replaced by theta(sum - N)
};

/// Gamma and Gamma_0 over primes in (X/2, X]. Throws ResourceError for
/// X > 3000 and StateError unless gamma >= gamma0 >= 0.
GammaReport gamma_report(const SearchParams& params, unsigned threads = 1);

/// gamma (weighted) or count (unweighted) from gamma_report.
double gamma_count(const SearchParams& params, bool weighted);

struct GammaSplit {
    double D = 0.0;
    double gamma0 = 0.0;
    std::array<double, 3> parts{};  // Gamma_1, Gamma_2, Gamma_3
    /// 4 (Gamma_1 + Gamma_2 + Gamma_3) == Gamma_0 in exact binary arithmetic
    /// over the same per-p1 weights.
    bool exact = false;
};

/// Divisor ranges of p1 - 1: d <= D, D < d < X/D, and d > D with d >= X/D.
/// For D <= sqrt(X) the last is d >= X/D; for larger D it keeps the ranges
/// disjoint so the split stays a partition.
GammaSplit split_gamma(const SearchParams& params, double D, unsigned threads = 1);

/// Ordered prime 4-tuples with |p1^c + ... + p4^c - N0| < eps. Requires
/// 1 <= c < 3 and at most 5 * 10^7 prime pairs.
u64 count_quaternary(double N0, double c, double epsilon, unsigned threads = 1);

/// prod_{2 < p <= P_cut} (1 + chi4(p) / (p (p - 1))).
double singular_series(u64 P_cut);

/// sum_{d <= D} chi4(d) / phi(d).
double char_phi_partial(double D);

struct LinnikCensus {
    u64 X = 0;
    u64 r_sum = 0;           // sum_{p <= X} r(p - 1)
    u64 prime_count = 0;
    u64 linnik_count = 0;    // p <= X with p - 1 a sum of two squares
    u64 product_cut = 0;
    double product = 0.0;
    double main_term = 0.0;  // pi * product * X / log X
    double ratio = 0.0;      // r_sum / main_term
};

/// Requires 3 <= X <= 10^7.
LinnikCensus linnik_census(u64 X, u64 product_cut = 1000000);

struct WindowStat {
    u64 X = 0;
    double omega = 0.0;
    double lo = 0.0, hi = 0.0;  // open window (sqrt X (log X)^{-omega}, sqrt X (log X)^{omega})
    double sum_sq = 0.0;        // sum_{p <= X} |sum_{d | p-1, d in window} chi4(d)|^2
    u64 f_count = 0;            // p <= X with a divisor of p - 1 in the window
    u64 prime_count = 0;
};

/// Requires 2 <= X <= 10^7 and omega >= 0.
WindowStat hooley_stats(u64 X, double omega = 1.0);

std::string census_json(const LinnikCensus& census);
std::string window_json(const WindowStat& stat);
std::string gamma_json(const GammaReport& report, const GammaSplit* split);
std::string search_json(const SearchResult& result);

}  // namespace quinary::counting
