#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "counting_oracles.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "quinary/counting.hpp"
#include "quinary/errors.hpp"
#include "quinary/kernel.hpp"

using namespace quinary;
using namespace quinary::counting;

namespace {

std::vector<oracle_count::Tuple> tuples(const SearchResult& r) {
    std::vector<oracle_count::Tuple> out;
    for (const auto& s : r.solutions) out.push_back(s.p);
    return out;
}

SearchParams exhaustive(double N, double c, double eps, bool linnik) {
    return {N, c, eps, linnik, PrimeRange::exhaustive};
}

}  // namespace

TEST_CASE("search parameters") {
    const SearchParams p{1e4, 1.2, 0.01, true};
    CHECK(p.X() == doctest::Approx(std::pow(2500.0, 1 / 1.2)));
    CHECK_THROWS_AS((SearchParams{1e4, 1.4, 0.01}.validate()), ArgumentError);
    CHECK_THROWS_AS((SearchParams{1e4, 0.9, 0.01}.validate()), ArgumentError);
    CHECK_THROWS_AS((SearchParams{-1, 1.2, 0.01}.validate()), ArgumentError);
    CHECK_THROWS_AS((SearchParams{1e4, 1.2, -0.1}.validate()), ArgumentError);
    const double theta0 = 0.5 - std::numbers::e * std::log(2.0) / 4;
    CHECK(formula_epsilon(1e6) == doctest::Approx(std::pow(std::log(std::log(1e6)), 6) / std::pow(std::log(1e6), theta0)));
}

TEST_CASE("constructed target is found with its certificate") {
    const double c = 1.2;
    long double N = 0;
    for (u64 p : {2, 3, 5, 7, 11}) N += oracle_count::power(p, c);
    const SearchResult r = search_solutions(exhaustive(static_cast<double>(N), c, 1e-6, true));
    CHECK(r.complete);
    const oracle_count::Tuple want = {2, 3, 5, 7, 11};
    const auto it = std::find_if(r.solutions.begin(), r.solutions.end(), [&](const Quintuple& q) { return q.p == want; });
    REQUIRE(it != r.solutions.end());
    REQUIRE(it->certificate.has_value());
    CHECK(it->certificate->x == 1);
    CHECK(it->certificate->y == 0);
    // Every permutation with p1 in {2, 3, 5, 11} (7 - 1 = 6 is not a sum of two squares).
    CHECK(r.solutions.size() == 96);
    for (const auto& q : r.solutions) CHECK(q.p[0] != 7);
}

TEST_CASE("search agrees with the exhaustive oracle") {
    const SearchResult r = search_solutions(exhaustive(1e4, 1.2, 0.01, true));
    CHECK(r.complete);
    const auto oracle = oracle_count::exhaustive_solutions(1e4, 1.2, 0.01, true);
    CHECK(oracle.size() > 1000);
    CHECK(tuples(r) == oracle);
    for (const auto& q : r.solutions) {
        REQUIRE(q.certificate.has_value());
        CHECK(q.certificate->p == q.p[0]);
        CHECK(q.certificate->x * q.certificate->x + q.certificate->y * q.certificate->y + 1 == q.p[0]);
        CHECK(oracle_count::residual(q.p, 1.2, 1e4) < 0.01L);
        CHECK(residual(q.p, 1.2, 1e4) == q.residual);
    }
}

TEST_CASE("search without the Linnik condition and across ranges") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 4; ++i) {
        const double N = 300 + 500 * U(rng), c = 1.1 + 0.27 * U(rng), eps = 0.001 + 0.01 * U(rng);
        const SearchResult all = search_solutions(exhaustive(N, c, eps, false));
        CHECK(tuples(all) == oracle_count::exhaustive_solutions(N, c, eps, false));
        // Restricting to (X/2, X] keeps a subset.
        const SearchResult narrow = search_solutions({N, c, eps, false, PrimeRange::dyadic});
        const auto all_t = tuples(all);
        const std::set<oracle_count::Tuple> full(all_t.begin(), all_t.end());
        for (const auto& q : narrow.solutions) {
            CHECK(full.count(q.p) == 1);
            for (u64 p : q.p) {
                CHECK(static_cast<double>(p) > narrow.X / 2);
                CHECK(static_cast<double>(p) <= narrow.X);
            }
        }
    }
}

TEST_CASE("thread count does not change the result") {
    SearchBudget one, three;
    three.threads = 3;
    const SearchResult a = search_solutions(exhaustive(3000, 1.15, 0.02, true), one);
    const SearchResult b = search_solutions(exhaustive(3000, 1.15, 0.02, true), three);
    CHECK(tuples(a) == tuples(b));
    std::ostringstream x, y;
    write_solutions_csv(x, a.solutions);
    write_solutions_csv(y, b.solutions);
    CHECK(x.str() == y.str());
}

TEST_CASE("budget cuts the search at a deterministic point") {
    const SearchParams p = exhaustive(1000, 1.15, 0.002, false);
    const SearchResult full = search_solutions(p);
    SearchBudget small;
    small.max_lookups = full.lookups_needed / 3;
    const SearchResult part = search_solutions(p, small);
    CHECK(!part.complete);
    CHECK(part.lookups <= small.max_lookups);
    CHECK(part.first_primes_searched < part.first_primes);
    CHECK(part.lookups_needed == full.lookups_needed);
    const auto full_t = tuples(full);
    const std::set<oracle_count::Tuple> all(full_t.begin(), full_t.end());
    for (const auto& q : part.solutions) CHECK(all.count(q.p) == 1);
    small.max_lookups = 0;
    const SearchResult none = search_solutions(p, small);
    CHECK(none.solutions.empty());
    CHECK(!none.complete);
}

TEST_CASE("counts are monotone in epsilon") {
    std::size_t prev = 0;
    for (double eps : {0.0, 0.001, 0.002, 0.004, 0.008, 0.016}) {
        const std::size_t n = search_solutions(exhaustive(2500, 1.1, eps, true)).solutions.size();
        CHECK(n >= prev);
        prev = n;
    }
    u64 q = 0;
    for (double eps : {0.01, 0.02, 0.04, 0.08}) {
        const u64 n = count_quaternary(3000, 1.2, eps);
        CHECK(n >= q);
        q = n;
    }
}

TEST_CASE("solution CSV") {
    Quintuple q;
    q.p = {2, 3, 5, 7, 11};
    q.certificate = arith::LinnikCertificate{2, 1, 0};
    q.residual = 0.25L;
    Quintuple r;
    r.p = {7, 3, 5, 2, 11};
    r.residual = 0.5L;
    std::ostringstream os;
    write_solutions_csv(os, std::vector<Quintuple>{q, r});
    CHECK(os.str() == "p1,p2,p3,p4,p5,x,y,residual\n2,3,5,7,11,1,0,0.25\n7,3,5,2,11,,,0.5\n");
}

TEST_CASE("Gamma against five nested loops") {
    // The c -> 1 limit: primes in (3.5, 7] can not sum to within 1/2 of 28.
    const GammaReport g28 = gamma_report({28, 1.0, 0.5});
    const auto o28 = oracle_count::naive_gamma(28, 1.0, 0.5, [](double) { return 0.0; });
    CHECK(g28.count == o28.count);
    CHECK(g28.count == 0);
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 5; ++i) {
        const double c = 1.0 + 0.37 * U(rng), X = 60 + 80 * U(rng), eps = 0.2 + U(rng);
        const double N = 4 * std::pow(X, c) * (0.9 + 0.2 * U(rng));
        const SearchParams p{N, c, eps};
        const kernel::KernelParams kp = kernel::make_kernel(eps, p.X());
        const auto o = oracle_count::naive_gamma(N, c, eps, [&](double y) { return kernel::theta_eval(kp, y); });
        const GammaReport g = gamma_report(p);
        CHECK(g.count == o.count);
        CHECK(g.gamma == doctest::Approx(static_cast<double>(o.gamma)).epsilon(1e-12));
        CHECK(g.gamma0 == doctest::Approx(static_cast<double>(o.gamma0)).epsilon(1e-12));
        CHECK(gamma_count(p, false) == static_cast<double>(o.count));
        CHECK(gamma_count(p, true) == doctest::Approx(static_cast<double>(o.gamma)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(gamma_report({4 * std::pow(4000.0, 1.2), 1.2, 0.5}), ResourceError);
}

TEST_CASE("Gamma at epsilon = 0 and the kernel sandwich") {
    const GammaReport z = gamma_report({1234.567, 1.2, 0.0});
    CHECK(z.count == 0);
    CHECK(z.gamma == 0.0);
    CHECK(z.gamma0 == 0.0);
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 20; ++i) {
        const double c = 1.0 + 0.37 * U(rng), X = 80 + 300 * U(rng), eps = 0.05 + 2 * U(rng);
        const GammaReport g = gamma_report({4 * std::pow(X, c) * (0.8 + 0.4 * U(rng)), c, eps});
        CHECK(g.gamma0 >= 0.0);
        CHECK(g.gamma >= g.gamma0);
    }
}

TEST_CASE("divisor-range split of Gamma_0") {
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> U(0, 1);
    double sum1 = 0, sum23 = 0;
    for (int i = 0; i < 20; ++i) {
        const double c = 1.0 + 0.37 * U(rng), X = 80 + 300 * U(rng), eps = 0.05 + 2 * U(rng);
        const SearchParams p{4 * std::pow(X, c) * (0.8 + 0.4 * U(rng)), c, eps};
        const double D = 1 + (p.X() - 1) * U(rng);
        const GammaSplit s = split_gamma(p, D);
        CHECK(s.exact);
        CHECK(4 * (s.parts[0] + s.parts[1] + s.parts[2]) == doctest::Approx(s.gamma0).epsilon(1e-12));
        const GammaSplit r = split_gamma(p, std::sqrt(p.X()));
        sum1 += std::fabs(r.parts[0]);
        sum23 += std::fabs(r.parts[1]) + std::fabs(r.parts[2]);
        const GammaSplit big = split_gamma(p, p.X());
        CHECK(big.parts[1] == 0.0);
        CHECK(big.parts[2] == 0.0);
        CHECK(4 * big.parts[0] == doctest::Approx(big.gamma0).epsilon(1e-12));
    }
    CHECK(sum1 > sum23);
    CHECK_THROWS_AS(split_gamma({1000, 1.2, 0.5}, 0.0), ArgumentError);
}

TEST_CASE("split parts against the definition") {
    const double c = 1.17, X = 97.0, eps = 0.8, N = 4 * std::pow(X, c);
    const SearchParams p{N, c, eps};
    const kernel::KernelParams kp = kernel::make_kernel(eps, p.X());
    const double D = 5.5;
    std::array<long double, 3> want{};
    const auto P = oracle_count::primes_in(static_cast<u64>(p.X() / 2), static_cast<u64>(p.X()));
    for (u64 a : P) {
        std::array<long double, 3> chi{};
        for (u64 d = 1; d <= a - 1; ++d) {
            if ((a - 1) % d) continue;
            const int k = d <= D ? 0 : (static_cast<double>(d) < p.X() / D ? 1 : 2);
            chi[static_cast<std::size_t>(k)] += arith::chi4(d);
        }
        long double w = 0;
        for (u64 b : P)
            for (u64 d : P)
                for (u64 e : P)
                    for (u64 f : P) {
                        const long double y = oracle_count::power(a, c) + oracle_count::power(b, c) + oracle_count::power(d, c) +
                                              oracle_count::power(e, c) + oracle_count::power(f, c) - N;
                        w += kernel::theta_eval(kp, static_cast<double>(y)) * std::log(static_cast<long double>(a)) *
                             std::log(static_cast<long double>(b)) * std::log(static_cast<long double>(d)) *
                             std::log(static_cast<long double>(e)) * std::log(static_cast<long double>(f));
                    }
        for (std::size_t k = 0; k < 3; ++k) want[k] += chi[k] * w;
    }
    const GammaSplit s = split_gamma(p, D);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(s.parts[k] == doctest::Approx(static_cast<double>(want[k])).epsilon(1e-10).scale(1e-6 * static_cast<double>(std::fabs(want[0]))));
    }
}

TEST_CASE("four-prime counter") {
    CHECK(count_quaternary(17, 1.0, 0.5) == 32);
    CHECK(count_quaternary(17, 1.0, 0.5) == oracle_count::naive_quaternary(17, 1.0, 0.5));
    CHECK(count_quaternary(17, 1.0, 0.0) == 0);
    std::mt19937_64 rng(35);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 6; ++i) {
        const double N0 = 50 + 1500 * U(rng), c = 1.0 + 1.5 * U(rng), eps = 0.01 + 0.5 * U(rng);
        CHECK_MESSAGE(count_quaternary(N0, c, eps, 2) == oracle_count::naive_quaternary(N0, c, eps),
                      "N0=" << N0 << " c=" << c);
    }
    CHECK_THROWS_AS(count_quaternary(100, 3.5, 0.1), ArgumentError);
}

TEST_CASE("four-prime counter scaling table") {
    std::vector<double> norm;
    for (double N0 : {1e3, 1e4, 1e5}) {
        const double L = std::log(N0);
        norm.push_back(static_cast<double>(count_quaternary(N0, 1.2, 0.1)) / (0.1 * std::pow(N0, 4 / 1.2 - 1) / std::pow(L, 4)));
    }
    const auto [lo, hi] = std::minmax_element(norm.begin(), norm.end());
    CHECK(*hi <= 3 * *lo);
}

TEST_CASE("Euler product and the character sum") {
    CHECK(char_phi_partial(1) == 1.0);
    CHECK(char_phi_partial(5) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(char_phi_partial(0.5) == 0.0);
    const double p5 = singular_series(100000), p6 = singular_series(1000000);
    CHECK(std::fabs(p6 - p5) <= 1e-6);
    CHECK(singular_series(2) == 1.0);
    CHECK(singular_series(5) == doctest::Approx((1 - 1.0 / 6) * (1 + 1.0 / 20)).epsilon(1e-15));
    // The partial sums approach (pi/4) times the product.
    double prev = 1.0;
    for (double D : {1e3, 1e4, 1e5, 1e6}) {
        const double gap = std::fabs(char_phi_partial(D) - std::numbers::pi / 4 * p6);
        CHECK(gap <= std::pow(D, -1.0 / 20));
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("Linnik census") {
    const LinnikCensus c10 = linnik_census(10);
    CHECK(c10.r_sum == 12);
    CHECK(c10.prime_count == 4);
    CHECK(c10.linnik_count == 3);
    const LinnikCensus c = linnik_census(3000, 10000);
    u64 r = 0, lin = 0, n = 0;
    for (u64 p : oracle_count::primes_in(1, 3000)) {
        const u64 k = oracle::lattice_count(p - 1);
        r += k;
        lin += k > 0;
        ++n;
    }
    CHECK(c.r_sum == r);
    CHECK(c.linnik_count == lin);
    CHECK(c.prime_count == n);
    CHECK(c.main_term == doctest::Approx(std::numbers::pi * singular_series(10000) * 3000 / std::log(3000.0)));
    const LinnikCensus big = linnik_census(1000000);
    CHECK(big.ratio >= 0.5);
    CHECK(big.ratio <= 2.0);
    CHECK_THROWS_AS(linnik_census(2), ArgumentError);
}

TEST_CASE("divisor-window statistics") {
    auto naive = [](u64 X, double omega) {
        const double L = std::log(static_cast<double>(X)), r = std::sqrt(static_cast<double>(X));
        const double lo = r * std::pow(L, -omega), hi = r * std::pow(L, omega);
        double sq = 0;
        u64 f = 0;
        for (u64 p : oracle_count::primes_in(1, X)) {
            long long s = 0;
            bool any = false;
            for (u64 d = 1; d <= p - 1; ++d) {
                if ((p - 1) % d || !(static_cast<double>(d) > lo && static_cast<double>(d) < hi)) continue;
                s += arith::chi4(d);
                any = true;
            }
            sq += static_cast<double>(s * s);
            f += any;
        }
        return std::pair<double, u64>(sq, f);
    };
    const WindowStat w100 = hooley_stats(100, 1.0);
    CHECK(w100.lo == doctest::Approx(10 / std::log(100.0)));
    CHECK(w100.hi == doctest::Approx(10 * std::log(100.0)));
    const auto [sq100, f100] = naive(100, 1.0);
    CHECK(w100.sum_sq == sq100);
    CHECK(w100.f_count == f100);
    std::mt19937_64 rng(36);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 8; ++i) {
        const u64 X = 3 + rng() % 4000;
        const double omega = 2 * U(rng);
        const WindowStat w = hooley_stats(X, omega);
        const auto [sq, f] = naive(X, omega);
        CHECK(w.sum_sq == sq);
        CHECK(w.f_count == f);
        CHECK(w.f_count <= w.prime_count);
        CHECK(w.sum_sq >= 0.0);
    }
    const WindowStat empty = hooley_stats(2, 10.0);
    CHECK(empty.lo > 2.0);
    CHECK(empty.sum_sq == 0.0);
    CHECK(empty.f_count == 0);
    const WindowStat zero = hooley_stats(1000, 0.0);
    CHECK(zero.f_count == 0);
    double prev = 1.0;
    for (u64 X : {10000, 100000, 1000000}) {
        const WindowStat w = hooley_stats(X, 1.0);
        const double ratio = static_cast<double>(w.f_count) / static_cast<double>(w.prime_count);
        CHECK(ratio <= prev);
        prev = ratio;
    }
}

TEST_CASE("JSON reports") {
    const auto c = nlohmann::json::parse(census_json(linnik_census(100)));
    CHECK(c["r_sum"].get<u64>() == linnik_census(100).r_sum);
    const auto w = nlohmann::json::parse(window_json(hooley_stats(100)));
    CHECK(w.contains("f_ratio"));
    const SearchParams p{2000, 1.2, 0.5};
    const GammaSplit s = split_gamma(p, 3.0);
    const auto g = nlohmann::json::parse(gamma_json(gamma_report(p), &s));
    CHECK(g["partition_exact"] == true);
    CHECK(g["tuples"] == "ordered");
    const auto j = nlohmann::json::parse(search_json(search_solutions(exhaustive(500, 1.1, 0.01, true))));
    CHECK(j["complete"] == true);
}
