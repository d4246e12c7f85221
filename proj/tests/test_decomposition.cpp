#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "json.hpp"
#include "oracles.hpp"
#include "quinary/decomposition.hpp"
#include "quinary/errors.hpp"
#include "quinary/expsum.hpp"

using namespace quinary;
using namespace quinary::decomposition;

namespace {

std::complex<long double> naive_e(long double x) { return std::polar(1.0L, 2 * std::numbers::pi_v<long double> * x); }

// Sum of Lambda(n) e(t n^c) over X/2 < n <= X with Lambda by trial division.
Complex naive_mangoldt_sum(double X, double c, double t) {
    std::complex<long double> s = 0;
    for (u64 n = static_cast<u64>(std::floor(X / 2)) + 1; n <= static_cast<u64>(std::floor(X)); ++n) {
        const double w = oracle::mangoldt(n);
        if (w != 0.0) s += static_cast<long double>(w) * naive_e(t * std::pow(static_cast<long double>(n), static_cast<long double>(c)));
    }
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

const Decomposition& hb4() {
    static const Decomposition d = decompose(1e4, Identity::heath_brown);
    return d;
}

const Decomposition& va4() {
    static const Decomposition d = decompose(1e4, Identity::vaughan);
    return d;
}

// Independent double loop for one piece: every integer l in (L_lo, L_hi]
// with its weight recomputed from the piece description.
Complex naive_piece(const Piece& p, double c, double t) {
    std::complex<long double> s = 0;
    for (std::size_t i = 0; i < p.m.size(); ++i) {
        for (u64 l = p.L_lo + 1; l <= p.L_hi; ++l) {
            const u64 n = p.m[i] * l;
            if (n <= p.n_lo || n > p.n_hi) continue;
            double w = 0.0;
            if (p.weight == InnerWeight::one) {
                w = 1.0;
            } else if (p.weight == InnerWeight::log) {
                w = std::log(static_cast<double>(l));
            } else {
                const auto it = std::lower_bound(p.l.begin(), p.l.end(), l);
                if (it != p.l.end() && *it == l) w = p.b[static_cast<std::size_t>(it - p.l.begin())];
            }
            s += static_cast<long double>(p.a[i] * w) * naive_e(t * std::pow(static_cast<long double>(n), static_cast<long double>(c)));
        }
    }
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

}  // namespace

TEST_CASE("standard parameters and validation") {
    const DecompositionParams p = standard_params(1e4);
    CHECK(p.U == doctest::Approx(std::pow(1e4, 1.0 / 9)));
    CHECK(p.V == doctest::Approx(std::cbrt(1e4)));
    CHECK(p.Z == 59.5);
    CHECK_NOTHROW(p.validate());
    DecompositionParams bad = p;
    bad.Z = 59.0;
    CHECK_THROWS_AS(bad.validate(), ArgumentError);
    bad = p;
    bad.U = 1.5;
    CHECK_THROWS_AS(bad.validate(), ArgumentError);
    bad = p;
    bad.V = 70.0;  // V > Z
    CHECK_THROWS_AS(bad.validate(), ArgumentError);
    bad = p;
    bad.V = 5.0;   // V^3 far below X
    CHECK_THROWS_AS(bad.validate(), ArgumentError);
    bad = p;
    bad.Z = 199.5;  // X << Z^2 U
    CHECK_THROWS_AS(bad.validate(), ArgumentError);
    CHECK_THROWS_AS(decompose(standard_params(2e7)), ResourceError);
}

TEST_CASE("reconstruction at t = 0 equals the Chebyshev difference") {
    double psi = 0;
    for (u64 n = 5001; n <= 10000; ++n) psi += oracle::mangoldt(n);
    for (const Decomposition* d : {&hb4(), &va4()}) {
        const PowerTable pw(10000, 1.2);
        const Complex v = eval_decomposition(*d, pw, 0.0);
        CHECK(v.real() == doctest::Approx(psi).epsilon(1e-9));
        CHECK(std::fabs(v.imag()) <= 1e-9 * psi);
    }
}

TEST_CASE("reconstruction on random t in [Delta, H]") {
    const double X = 1e4, c = 1.2;
    const double lo = expsum::minor_arc_start(X, c), hi = expsum::minor_arc_end(X);
    const PowerTable pw(10000, c);
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 20; ++i) {
        const double t = lo + (hi - lo) * U(rng);
        const Complex expect = naive_mangoldt_sum(X, c, t);
        for (const Decomposition* d : {&hb4(), &va4()}) {
            const Complex v = eval_decomposition(*d, pw, t);
            CHECK_MESSAGE(std::abs(v - expect) <= 1e-8 * std::abs(expect), "t=" << t);
        }
    }
}

TEST_CASE("reconstruction for other X and c") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 6; ++i) {
        const double X = 500 + 30000 * U(rng), c = 1.05 + 0.9 * U(rng), t = 0.5 * U(rng);
        const PowerTable pw(static_cast<u64>(X), c);
        const Complex expect = naive_mangoldt_sum(X, c, t);
        for (Identity id : {Identity::heath_brown, Identity::vaughan}) {
            const Decomposition d = decompose(X, id);
            CHECK_MESSAGE(std::abs(eval_decomposition(d, pw, t) - expect) <= 1e-8 * std::max(std::abs(expect), 1.0),
                          "X=" << X << " c=" << c << " t=" << t);
        }
    }
}

TEST_CASE("piece kinds respect their ranges") {
    for (double X : {1e3, 1e4, 1e5}) {
        const Decomposition d = decompose(X);
        const double C = d.params.slack;
        CHECK(d.max_depth_used <= d.params.max_depth);
        CHECK(d.count_constant < 1.0);
        for (const Piece& p : d.pieces) {
            CHECK(p.kind != PieceKind::bilinear);
            CHECK(p.M_lo < p.M_hi);
            CHECK(p.L_lo < p.L_hi);
            // The product constraint keeps ML comparable to X.
            CHECK(static_cast<double>(p.M_hi) * static_cast<double>(p.L_hi) > X / 2);
            CHECK(static_cast<double>(p.M_lo) * static_cast<double>(p.L_lo) < X);
            if (p.kind == PieceKind::type_i) {
                CHECK(p.weight != InnerWeight::table);
                CHECK(static_cast<double>(p.L_lo + 1) >= d.params.Z / C);
            } else {
                CHECK(static_cast<double>(p.L_lo + 1) >= d.params.U / C);
                CHECK(static_cast<double>(p.L_hi) <= d.params.V * C);
            }
        }
    }
    // Vaughan leaves bilinear blocks with the prime-power side beyond V.
    int bilinear = 0;
    for (const Piece& p : va4().pieces) {
        if (p.kind != PieceKind::bilinear) continue;
        ++bilinear;
        CHECK(static_cast<double>(p.L_hi) > 2 * va4().params.V);
    }
    CHECK(bilinear > 0);
}

TEST_CASE("refinement depth cap") {
    DecompositionParams p = standard_params(1e4);
    p.max_depth = 3;
    CHECK_THROWS_AS(decompose(p), StateError);
}

TEST_CASE("coefficient bounds") {
    const arith::FactorizationCache cache(100000);
    for (const Decomposition* d : {&hb4(), &va4()}) {
        for (const Piece& p : d->pieces) CHECK(coefficient_ratio(p, d->params.X, cache) <= 1.0 + 1e-12);
    }
    const Decomposition d5 = decompose(1e5);
    for (const Piece& p : d5.pieces) CHECK(coefficient_ratio(p, 1e5, cache) <= 1.0 + 1e-12);
}

TEST_CASE("eval_piece at t = 0 and against a naive double loop") {
    const PowerTable pw(10000, 1.3);
    for (const Piece& p : hb4().pieces) {
        if (p.kind != PieceKind::type_i || p.weight != InnerWeight::one) continue;
        double expect = 0;
        for (std::size_t i = 0; i < p.m.size(); ++i) {
            const u64 lo = std::max(p.L_lo, p.n_lo / p.m[i]), hi = std::min(p.L_hi, p.n_hi / p.m[i]);
            expect += p.a[i] * static_cast<double>(hi > lo ? hi - lo : 0);
        }
        CHECK(eval_piece(p, pw, 0.0).real() == doctest::Approx(expect).epsilon(1e-13));
    }
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 25; ++i) {
        const Decomposition& d = i % 2 ? hb4() : va4();
        const Piece& p = d.pieces[rng() % d.pieces.size()];
        const double t = 0.7 * U(rng);
        const Complex a = eval_piece(p, pw, t), b = eval_piece(p, 1.3, t), ref = naive_piece(p, 1.3, t);
        const double scale = std::max(std::abs(ref), 1e-3 * static_cast<double>(p.n_terms));
        CHECK(std::abs(a - ref) <= 1e-10 * scale);
        CHECK(std::abs(b - ref) <= 1e-10 * scale);
    }
}

TEST_CASE("Type I report") {
    const double X = 1e4, c = 1.2;
    const double lo = expsum::minor_arc_start(X, c), hi = expsum::minor_arc_end(X);
    CHECK_THROWS_AS(bound_report_typeI(hb4(), c, lo / 2), ArgumentError);
    CHECK_THROWS_AS(bound_report_typeI(hb4(), c, 2 * hi), ArgumentError);
    const BoundReport r = bound_report_typeI(hb4(), c, std::sqrt(lo * hi));
    REQUIRE(!r.pieces.empty());
    CHECK(r.target == doctest::Approx(std::pow(X, 1817.0 / 1950)));
    for (const PieceBound& b : r.pieces) {
        CHECK(b.abs_value <= b.trivial * (1 + 1e-12));
        CHECK(b.ratio == doctest::Approx(b.abs_value / r.target));
    }
    const nlohmann::json j = nlohmann::json::parse(bound_json(r));
    CHECK(j["pieces"].size() == r.pieces.size());
}

TEST_CASE("Type I fitted constant does not grow across X") {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> U(0, 1);
    std::vector<double> worst;
    for (double X : {1e3, 1e4, 1e5}) {
        const Decomposition d = decompose(X);
        const double lo = expsum::minor_arc_start(X, 1.2), hi = expsum::minor_arc_end(X);
        double w = 0;
        for (int i = 0; i < 10; ++i) w = std::max(w, bound_report_typeI(d, 1.2, lo * std::pow(hi / lo, U(rng))).max_ratio);
        worst.push_back(w);
    }
    CHECK(worst[0] <= 10.0);
    CHECK(worst[1] <= 2 * worst[0]);
    CHECK(worst[2] <= 2 * worst[0]);
}

TEST_CASE("short-M case boundary") {
    const double X = 1e5;
    const double edge = std::pow(X, 763.0 / 1950);  // about 90
    const Piece below = synthetic_typeI(X, static_cast<u64>(std::floor(edge / 2)));
    const Piece above = synthetic_typeI(X, static_cast<u64>(std::ceil(edge)));
    CHECK(typeI_case(below, X) == 1);
    CHECK(typeI_case(above, X) == 2);
    CHECK(eval_piece(below, 1.2, 0.0).real() == doctest::Approx(static_cast<double>(below.n_terms)));
    Decomposition d;
    d.params = standard_params(X);
    d.pieces = {below, above};
    const BoundReport r = bound_report_typeI(d, 1.2, 0.01);
    REQUIRE(r.pieces.size() == 2);
    CHECK(r.pieces[0].typeI_case == 1);
    CHECK(r.pieces[1].typeI_case == 2);
    CHECK_THROWS_AS(synthetic_typeI(X, 0), ArgumentError);
}

TEST_CASE("Type II report: Cauchy and shifted-sum majorants") {
    std::mt19937_64 rng(25);
    std::uniform_real_distribution<double> U(0, 1);
    for (double X : {1e3, 1e4}) {
        const Decomposition d = decompose(X);
        const double lo = expsum::minor_arc_start(X, 1.2), hi = expsum::minor_arc_end(X);
        for (int i = 0; i < 5; ++i) {
            const double t = lo * std::pow(hi / lo, U(rng));
            for (int Q : {0, 1, 2, 5, 17}) {
                const BoundReport r = bound_report_typeII(d, 1.2, t, Q);
                REQUIRE(!r.pieces.empty());
                CHECK(r.Q >= 1);
                for (const PieceBound& b : r.pieces) {
                    CHECK(b.abs_value <= b.cauchy_rhs * (1 + 1e-12) + 1e-9);
                    CHECK(b.cauchy_rhs <= b.shifted_majorant * (1 + 1e-12) + 1e-9);
                    CHECK(b.abs_value <= b.trivial * (1 + 1e-12));
                }
            }
        }
    }
    CHECK(bound_report_typeII(hb4(), 1.2, 0.01).Q == static_cast<int>(std::lround(std::pow(1e4, 857.0 / 3900))));
}

TEST_CASE("prime sum and von Mangoldt sum differ by prime powers only") {
    const auto primes = arith::sieve_primes(0, 100000);
    for (double X : {1e3, 1e4, 1e5}) {
        for (double t : {0.0, 0.01, 0.3}) {
            const Complex S = expsum::eval_S(expsum::full_query(X, 1.2, t), primes);
            const Complex Sstar = naive_mangoldt_sum(X, 1.2, t);
            const double L = std::log(X);
            CHECK(std::abs(S - Sstar) <= std::sqrt(X) * L * L);
        }
    }
}

TEST_CASE("inventory JSON") {
    const nlohmann::json j = nlohmann::json::parse(inventory_json(hb4()));
    CHECK(j["identity"] == "heath-brown");
    CHECK(j["piece_count"] == hb4().pieces.size());
    REQUIRE(j["pieces"].size() == hb4().pieces.size());
    for (const char* key : {"kind", "M_lo", "M_hi", "L_lo", "L_hi", "n_terms"}) CHECK(j["pieces"][0].contains(key));
    u64 total = 0;
    for (const auto& e : j["pieces"]) total += e["n_terms"].get<u64>();
    CHECK(total > 5000);
}
