#pragma once

// Primes, the character mod 4, r(n), sums of two squares, Linnik-prime
// certificates and the classical arithmetic functions phi, mu, Lambda.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace quinary::arith {

using u64 = std::uint64_t;

/// Sorted primes in the half-open interval (lo, hi].
struct PrimeTable {
    u64 lo = 0;
    u64 hi = 0;
    std::vector<u64> primes;

    [[nodiscard]] bool covers(u64 a, u64 b) const noexcept { return lo <= a && b <= hi; }

    /// Primes in (a, b]. Throws StateError if (a, b] is not inside (lo, hi].
    [[nodiscard]] std::span<const u64> in_range(u64 a, u64 b) const;

    /// Number of primes <= x, for lo = 0 tables.
    [[nodiscard]] std::size_t count_upto(u64 x) const;
};

struct SieveOptions {
    std::size_t segment_size = std::size_t{1} << 20;
    /// Largest hi - lo accepted before a ResourceError.
    u64 max_span = u64{1} << 32;
    unsigned threads = 1;
};

/// Segmented sieve of Eratosthenes over (lo, hi].
PrimeTable sieve_primes(u64 lo, u64 hi, const SieveOptions& options = {});

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(u64 n) noexcept;

/// The non-principal character modulo 4.
constexpr int chi4(u64 k) noexcept {
    switch (k & 3u) {
        case 1: return 1;
        case 3: return -1;
        default: return 0;
    }
}

struct PrimePower {
    u64 p = 0;
    unsigned e = 0;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};
using Factorization = std::vector<PrimePower>;

/// Factorization of n >= 1 by trial division and Pollard-Brent. Sorted by p.
Factorization factorize(u64 n);

/// Smallest-prime-factor table up to a fixed limit. Immutable after
/// construction, so one instance can be shared across threads.
class FactorizationCache {
public:
    explicit FactorizationCache(u64 limit);

    [[nodiscard]] u64 limit() const noexcept { return limit_; }
    [[nodiscard]] Factorization factorize(u64 n) const;

private:
    u64 limit_;
    std::vector<std::uint32_t> spf_;
};

/// Sum of chi4(d) over the divisors d of n, evaluated multiplicatively.
std::int64_t chi4_divisor_sum(const Factorization& f) noexcept;

/// r(n) = 4 * sum_{d | n} chi4(d). Throws ArgumentError for n = 0.
u64 r_count(u64 n);
u64 r_count(u64 n, const FactorizationCache& cache);

struct TwoSquares {
    u64 x = 0;
    u64 y = 0;
    friend bool operator==(const TwoSquares&, const TwoSquares&) = default;
};

/// A representation n = x^2 + y^2 with x >= y >= 0. Among all
/// representations the one with the largest x is returned.
std::optional<TwoSquares> two_squares_decompose(u64 n);
std::optional<TwoSquares> two_squares_decompose(u64 n, const Factorization& f);

struct LinnikCertificate {
    u64 p = 0;
    u64 x = 0;
    u64 y = 0;

    /// x^2 + y^2 + 1 == p in exact integer arithmetic.
    [[nodiscard]] bool verify() const noexcept;
    friend bool operator==(const LinnikCertificate&, const LinnikCertificate&) = default;
};

/// Certificate p = x^2 + y^2 + 1 when one exists. Throws ArgumentError if p
/// is not prime.
std::optional<LinnikCertificate> linnik_certificate(u64 p);
std::optional<LinnikCertificate> linnik_certificate(u64 p, const FactorizationCache& cache);

enum class ArithKind { phi, mu, lambda };

/// phi, mu or Lambda at n >= 1, returned as a double. Lambda uses the
/// natural logarithm.
double arith_function(ArithKind kind, u64 n);

u64 euler_phi(u64 n);
u64 euler_phi(const Factorization& f) noexcept;
int moebius(u64 n);
int moebius(const Factorization& f) noexcept;
double von_mangoldt(u64 n);

/// Lambda(n) for all n <= n_max. Stores the prime base of each prime power.
class MangoldtTable {
public:
    explicit MangoldtTable(u64 n_max);

    [[nodiscard]] u64 n_max() const noexcept { return base_.size() - 1; }
    [[nodiscard]] double operator()(u64 n) const noexcept {
        const auto p = base_[n];
        return p == 0 ? 0.0 : std::log(static_cast<double>(p));
    }
    [[nodiscard]] u64 base(u64 n) const noexcept { return base_[n]; }

private:
    std::vector<std::uint32_t> base_;
};

/// mu(n) for n in [0, n_max]; entry 0 is 0.
std::vector<std::int8_t> moebius_table(u64 n_max);

/// One decimal prime per line.
void write_prime_table(std::ostream& os, const PrimeTable& table);

/// CSV with header p,x,y.
void write_certificates_csv(std::ostream& os, std::span<const LinnikCertificate> certs);

}  // namespace quinary::arith
