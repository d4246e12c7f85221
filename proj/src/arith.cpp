#include "quinary/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>
#include <thread>

#include "quinary/errors.hpp"

namespace quinary::arith {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

u64 mulmod(u64 a, u64 b, u64 m) noexcept { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) noexcept {
    u64 result = 1 % m;
    base %= m;
    while (exp != 0) {
        if ((exp & 1u) != 0) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 isqrt(u64 n) noexcept {
    auto r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::vector<u64> simple_sieve(u64 limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<u64> primes;
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

// Primes in (lo, hi] given all primes up to sqrt(hi).
void sieve_block(u64 lo, u64 hi, std::span<const u64> base, std::size_t segment,
                 std::vector<u64>& out) {
    std::vector<char> mark;
    for (u64 start = lo + 1; start <= hi;) {
        const u64 len = std::min<u64>(segment, hi - start + 1);
        mark.assign(len, 1);
        for (const u64 p : base) {
            const u64 p2 = p * p;
            if (p2 > start + len - 1) break;
            u64 first = std::max(p2, (start + p - 1) / p * p);
            for (u64 m = first; m < start + len; m += p) mark[m - start] = 0;
        }
        for (u64 i = 0; i < len; ++i) {
            const u64 n = start + i;
            if (mark[i] != 0 && n >= 2) out.push_back(n);
        }
        if (len < segment) break;
        start += len;
    }
}

bool miller_rabin_witness(u64 n, u64 a, u64 d, unsigned s) noexcept {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

u64 pollard_brent(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        const u64 m = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    const u64 d = pollard_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

Factorization collect(std::vector<u64>& ps) {
    std::sort(ps.begin(), ps.end());
    Factorization f;
    for (const u64 p : ps) {
        if (!f.empty() && f.back().p == p) {
            ++f.back().e;
        } else {
            f.push_back({p, 1});
        }
    }
    return f;
}

struct Gaussian {
    i128 re = 0;
    i128 im = 0;
};

Gaussian operator*(Gaussian a, Gaussian b) noexcept {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

// a^2 + b^2 = p for a prime p = 1 (mod 4), via a square root of -1 and the
// Euclidean descent of Hermite-Serret.
Gaussian prime_two_squares(u64 p) {
    if (p == 2) return {1, 1};
    u64 root = 0;
    for (u64 c = 2;; ++c) {
        if (powmod(c, (p - 1) / 2, p) == p - 1) {
            root = powmod(c, (p - 1) / 4, p);
            break;
        }
    }
    u64 a = p, b = root;
    const u64 limit = isqrt(p);
    while (b > limit) {
        const u64 r = a % b;
        a = b;
        b = r;
    }
    const u64 rest = p - b * b;
    const u64 c = isqrt(rest);
    if (c * c == rest) return {static_cast<i128>(b), static_cast<i128>(c)};
    for (u64 y = 0;; ++y) {
        const u64 x2 = p - y * y;
        const u64 x = isqrt(x2);
        if (x * x == x2) return {static_cast<i128>(x), static_cast<i128>(y)};
    }
}

}  // namespace

std::span<const u64> PrimeTable::in_range(u64 a, u64 b) const {
    if (a > b) return {};
    if (!covers(a, b)) {
        throw StateError("prime table (" + std::to_string(lo) + ", " + std::to_string(hi) +
                         "] does not cover (" + std::to_string(a) + ", " + std::to_string(b) + "]");
    }
    const auto first = std::upper_bound(primes.begin(), primes.end(), a);
    const auto last = std::upper_bound(first, primes.end(), b);
    return {first, last};
}

std::size_t PrimeTable::count_upto(u64 x) const {
    if (lo != 0) throw StateError("count_upto needs a table starting at 0");
    if (x > hi) throw StateError("count_upto beyond table range");
    return static_cast<std::size_t>(std::upper_bound(primes.begin(), primes.end(), x) - primes.begin());
}

PrimeTable sieve_primes(u64 lo, u64 hi, const SieveOptions& options) {
    if (lo >= hi) throw ArgumentError("sieve_primes: need lo < hi");
    if (hi > (u64{1} << 63) - 1) throw ArgumentError("sieve_primes: hi exceeds 2^63 - 1");
    if (hi - lo > options.max_span) {
        throw ResourceError("sieve_primes: range of " + std::to_string(hi - lo) +
                            " integers exceeds the configured span " + std::to_string(options.max_span));
    }
    if (options.segment_size == 0) throw ArgumentError("sieve_primes: segment size must be positive");

    const u64 root = isqrt(hi);
    const std::vector<u64> base =
        root <= (u64{1} << 22) ? simple_sieve(root) : sieve_primes(0, root, options).primes;

    PrimeTable table{lo, hi, {}};
    const unsigned threads = std::max(1u, options.threads);
    const u64 span = hi - lo;
    if (threads == 1 || span < u64{threads} * options.segment_size) {
        sieve_block(lo, hi, base, options.segment_size, table.primes);
        return table;
    }
    std::vector<std::vector<u64>> parts(threads);
    std::vector<std::thread> workers;
    const u64 chunk = (span + threads - 1) / threads;
    for (unsigned i = 0; i < threads; ++i) {
        const u64 a = lo + std::min<u64>(span, chunk * i);
        const u64 b = lo + std::min<u64>(span, chunk * (i + 1));
        if (a >= b) continue;
        workers.emplace_back([&, a, b, i] { sieve_block(a, b, base, options.segment_size, parts[i]); });
    }
    for (auto& w : workers) w.join();
    for (auto& part : parts) table.primes.insert(table.primes.end(), part.begin(), part.end());
    return table;
}

bool is_prime(u64 n) noexcept {
    if (n < 2) return false;
    for (const u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1u) == 0) {
        d >>= 1;
        ++s;
    }
    for (const u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
}

Factorization factorize(u64 n) {
    if (n == 0) throw ArgumentError("factorize: n must be positive");
    std::vector<u64> ps;
    for (u64 p = 2; p < 64 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            ps.push_back(p);
            n /= p;
        }
    }
    factor_rec(n, ps);
    return collect(ps);
}

FactorizationCache::FactorizationCache(u64 limit) : limit_(limit), spf_(limit + 1, 0) {
    if (limit > (u64{1} << 32)) throw ResourceError("FactorizationCache: limit above 2^32");
    for (u64 i = 2; i <= limit; ++i) {
        if (spf_[i] != 0) continue;
        spf_[i] = static_cast<std::uint32_t>(i);
        if (i > limit / i) continue;
        for (u64 j = i * i; j <= limit; j += i) {
            if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
        }
    }
}

Factorization FactorizationCache::factorize(u64 n) const {
    if (n == 0) throw ArgumentError("factorize: n must be positive");
    if (n > limit_) return arith::factorize(n);
    Factorization f;
    while (n > 1) {
        const u64 p = spf_[n];
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.push_back({p, e});
    }
    return f;
}

std::int64_t chi4_divisor_sum(const Factorization& f) noexcept {
    std::int64_t product = 1;
    for (const auto& [p, e] : f) {
        switch (p & 3u) {
            case 1: product *= static_cast<std::int64_t>(e) + 1; break;
            case 3: product *= (e % 2 == 0) ? 1 : 0; break;
            default: break;
        }
    }
    return product;
}

u64 r_count(u64 n) {
    if (n == 0) throw ArgumentError("r_count: n must be >= 1");
    return 4 * static_cast<u64>(chi4_divisor_sum(factorize(n)));
}

u64 r_count(u64 n, const FactorizationCache& cache) {
    if (n == 0) throw ArgumentError("r_count: n must be >= 1");
    return 4 * static_cast<u64>(chi4_divisor_sum(cache.factorize(n)));
}

std::optional<TwoSquares> two_squares_decompose(u64 n) {
    if (n == 0) return TwoSquares{0, 0};
    return two_squares_decompose(n, factorize(n));
}

std::optional<TwoSquares> two_squares_decompose(u64 n, const Factorization& f) {
    if (n == 0) return TwoSquares{0, 0};
    // Scalar part from 2 and from primes 3 mod 4, then every product of
    // Gaussian prime powers over the primes 1 mod 4.
    Gaussian scalar{1, 0};
    std::vector<std::pair<Gaussian, unsigned>> split;
    for (const auto& [p, e] : f) {
        if (p == 2) {
            for (unsigned i = 0; i < e; ++i) scalar = scalar * Gaussian{1, 1};
        } else if ((p & 3u) == 3) {
            if (e % 2 != 0) return std::nullopt;
            for (unsigned i = 0; i < e / 2; ++i) scalar = scalar * Gaussian{static_cast<i128>(p), 0};
        } else {
            split.emplace_back(prime_two_squares(p), e);
        }
    }

    std::vector<Gaussian> reps{scalar};
    for (const auto& [pi, e] : split) {
        const Gaussian conj{pi.re, -pi.im};
        std::vector<Gaussian> powers_pi(e + 1), powers_conj(e + 1);
        powers_pi[0] = powers_conj[0] = Gaussian{1, 0};
        for (unsigned i = 1; i <= e; ++i) {
            powers_pi[i] = powers_pi[i - 1] * pi;
            powers_conj[i] = powers_conj[i - 1] * conj;
        }
        std::vector<Gaussian> next;
        next.reserve(reps.size() * (e + 1));
        for (const auto& g : reps) {
            for (unsigned j = 0; j <= e; ++j) next.push_back(g * (powers_pi[j] * powers_conj[e - j]));
        }
        reps = std::move(next);
    }

    TwoSquares best{0, 0};
    bool found = false;
    for (const auto& g : reps) {
        auto a = static_cast<u64>(g.re < 0 ? -g.re : g.re);
        auto b = static_cast<u64>(g.im < 0 ? -g.im : g.im);
        if (a < b) std::swap(a, b);
        if (!found || a > best.x) best = {a, b};
        found = true;
    }
    return best;
}

bool LinnikCertificate::verify() const noexcept {
    return static_cast<u128>(x) * x + static_cast<u128>(y) * y + 1 == p && x >= y;
}

std::optional<LinnikCertificate> linnik_certificate(u64 p) {
    if (!is_prime(p)) throw ArgumentError("linnik_certificate: " + std::to_string(p) + " is not prime");
    const auto sq = p == 1 ? std::nullopt : two_squares_decompose(p - 1);
    if (!sq) return std::nullopt;
    return LinnikCertificate{p, sq->x, sq->y};
}

std::optional<LinnikCertificate> linnik_certificate(u64 p, const FactorizationCache& cache) {
    if (!is_prime(p)) throw ArgumentError("linnik_certificate: " + std::to_string(p) + " is not prime");
    const auto sq = two_squares_decompose(p - 1, cache.factorize(p - 1));
    if (!sq) return std::nullopt;
    return LinnikCertificate{p, sq->x, sq->y};
}

u64 euler_phi(const Factorization& f) noexcept {
    u64 result = 1;
    for (const auto& [p, e] : f) {
        result *= p - 1;
        for (unsigned i = 1; i < e; ++i) result *= p;
    }
    return result;
}

u64 euler_phi(u64 n) {
    if (n == 0) throw ArgumentError("euler_phi: n must be >= 1");
    return euler_phi(factorize(n));
}

int moebius(const Factorization& f) noexcept {
    for (const auto& pe : f) {
        if (pe.e > 1) return 0;
    }
    return f.size() % 2 == 0 ? 1 : -1;
}

int moebius(u64 n) {
    if (n == 0) throw ArgumentError("moebius: n must be >= 1");
    return moebius(factorize(n));
}

double von_mangoldt(u64 n) {
    if (n == 0) throw ArgumentError("von_mangoldt: n must be >= 1");
    const auto f = factorize(n);
    return f.size() == 1 ? std::log(static_cast<double>(f.front().p)) : 0.0;
}

double arith_function(ArithKind kind, u64 n) {
    switch (kind) {
        case ArithKind::phi: return static_cast<double>(euler_phi(n));
        case ArithKind::mu: return moebius(n);
        case ArithKind::lambda: return von_mangoldt(n);
    }
    throw ArgumentError("arith_function: unknown kind");
}

MangoldtTable::MangoldtTable(u64 n_max) : base_(n_max + 1, 0) {
    if (n_max > (u64{1} << 32)) throw ResourceError("MangoldtTable: n_max above 2^32");
    const auto primes = simple_sieve(n_max);
    for (const u64 p : primes) {
        for (u64 q = p; q <= n_max; q *= p) {
            base_[q] = static_cast<std::uint32_t>(p);
            if (q > n_max / p) break;
        }
    }
}

std::vector<std::int8_t> moebius_table(u64 n_max) {
    std::vector<std::int8_t> mu(n_max + 1, 1);
    std::vector<bool> composite(n_max + 1, false);
    std::vector<u64> primes;
    mu[0] = 0;
    for (u64 i = 2; i <= n_max; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            mu[i] = -1;
        }
        for (const u64 p : primes) {
            if (p * i > n_max) break;
            composite[p * i] = true;
            if (i % p == 0) {
                mu[p * i] = 0;
                break;
            }
            mu[p * i] = static_cast<std::int8_t>(-mu[i]);
        }
    }
    return mu;
}

void write_prime_table(std::ostream& os, const PrimeTable& table) {
    for (const u64 p : table.primes) os << p << '\n';
}

void write_certificates_csv(std::ostream& os, std::span<const LinnikCertificate> certs) {
    os << "p,x,y\n";
    for (const auto& c : certs) os << c.p << ',' << c.x << ',' << c.y << '\n';
}

}  // namespace quinary::arith
