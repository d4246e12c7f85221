#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>

#include "quinary/errors.hpp"
#include "quinary/exponents.hpp"

using namespace quinary;
using namespace quinary::exponents;

namespace {

Rational q(long long n, long long d) { return {BigInt(n), BigInt(d)}; }

// Independent fraction type on 64-bit integers for cross-checking small values.
struct Frac {
    long long n, d;
    Frac(long long a, long long b = 1) : n(a), d(b) {
        const long long g = std::gcd(n, d);
        n /= g;
        d /= g;
        if (d < 0) {
            n = -n;
            d = -d;
        }
    }
    Frac operator+(Frac o) const { return {n * o.d + o.n * d, d * o.d}; }
    Frac operator-(Frac o) const { return {n * o.d - o.n * d, d * o.d}; }
    Frac operator*(Frac o) const { return {n * o.n, d * o.d}; }
    Frac operator/(Frac o) const { return {n * o.d, d * o.n}; }
    [[nodiscard]] Rational r() const { return q(n, d); }
};

}  // namespace

TEST_CASE("rational normalizes and orders") {
    CHECK(q(6, -4) == q(-3, 2));
    CHECK(q(-3, 2).den() == 2);
    CHECK(q(1, 3) < q(1, 2));
    CHECK(Rational::parse("5363/3900").str() == "5363/3900");
    CHECK(Rational::parse("-10/4") == q(-5, 2));
    CHECK(q(5363, 3900).decimal(5) == "1.37512");
    CHECK(q(5363, 3900).to_double() == doctest::Approx(5363.0 / 3900.0).epsilon(1e-15));
    CHECK(Rational::from_double(0.375) == q(3, 8));
    CHECK_THROWS_AS(Rational::parse("1/0"), ArgumentError);
    CHECK_THROWS_AS(Rational::parse("abc"), ArgumentError);
    CHECK_THROWS_AS(q(1, 2) / Rational(0), ArgumentError);
}

TEST_CASE("process A and B on small pairs") {
    CHECK(process_B({0, 1}) == ExponentPair{q(1, 2), q(1, 2)});
    CHECK(process_A({0, 1}) == ExponentPair{0, 1});
    CHECK(process_A({q(1, 2), q(1, 2)}) == ExponentPair{q(1, 6), q(2, 3)});
    CHECK(apply_word("BA") == ExponentPair{q(1, 6), q(2, 3)});
    CHECK_THROWS_AS(apply_word("AC"), ArgumentError);
}

TEST_CASE("process words stay inside the pair range and B is an involution") {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 500; ++trial) {
        const int len = static_cast<int>(rng() % 9);
        std::string word;
        for (int i = 0; i < len; ++i) word += (rng() & 1U) ? 'A' : 'B';
        const ExponentPair p = apply_word(word);
        CHECK_MESSAGE(p.in_range(), word);
        CHECK(process_B(process_B(p)) == p);
    }
}

TEST_CASE("type I exponent") {
    const ExponentExpr e = typeI_exponent(typeI_pair(), typeI_M_cap());
    // (2c+31)/40 + (9/40)(763/1950), recomputed with the independent fraction type.
    const Frac alpha = Frac(31, 40) + Frac(9, 40) * Frac(763, 1950);
    CHECK(e.alpha == alpha.r());
    CHECK(e.beta == q(1, 20));
    CHECK(typeI_exponent(q(5363, 3900), typeI_pair(), typeI_M_cap()) == q(1817, 1950));
    const Rational at_one = typeI_exponent(1, typeI_pair(), typeI_M_cap());
    CHECK(at_one == q(33, 40) + q(6867, 78000));
    CHECK(at_one < q(1817, 1950));
    CHECK(typeI_exponent(q(6, 5), typeI_pair(), 0) == (Frac(2) * Frac(6, 5) + Frac(31)).r() / 40);
}

TEST_CASE("threshold from both balances") {
    const Rational c1 = solve_c0_typeI();
    const Rational c2 = solve_c0_final();
    CHECK(c1 == q(5363, 3900));
    CHECK(c2 == q(5363, 3900));
    CHECK(c1 == c2);
    CHECK(Rational(1) < c1);
    CHECK(c1 < q(3, 2));
    CHECK(c1.decimal(5) == "1.37512");
    // Independent solve of (2c+31)/40 + 9*763/(40*1950) = 1817/1950.
    const Frac c_oracle = (Frac(1817, 1950) - Frac(31, 40) - Frac(9, 40) * Frac(763, 1950)) / Frac(2, 40);
    CHECK(c1 == c_oracle.r());
    // s + (22469/3900 - c)/2 + 1/2 = 5 - c  <=>  c/2 = 5 - s - 22469/7800 - 1/2.
    const Frac c_final = (Frac(5) - Frac(1817, 1950) - Frac(22469, 7800) - Frac(1, 2)) * Frac(2);
    CHECK(c2 == c_final.r());
}

TEST_CASE("final balance slack is positive below the threshold") {
    CHECK(final_balance_slack(q(4, 3)) > Rational(0));
    CHECK(final_balance_slack(q(5363, 3900)) == Rational(0));
    CHECK(final_balance_slack(q(7, 5)) < Rational(0));
}

TEST_CASE("moment chain") {
    const Rational c = q(5363, 3900);
    const auto chain = chain_exponents(c);
    CHECK(chain_step(chain, "sup").value == q(1817, 1950));
    CHECK(chain_step(chain, "fifth_lead").expr == ExponentExpr{q(2792, 975), q(-1, 2)});
    CHECK(chain_step(chain, "fifth").expr == ExponentExpr{q(4742, 975), -1});
    CHECK(chain_step(chain, "fifth_tail").expr == ExponentExpr{q(18, 4), q(-3, 4)});
    CHECK(chain_step(chain, "sixth_lead").expr == ExponentExpr{q(2597, 780), q(-1, 2)});
    CHECK(chain_step(chain, "sixth").expr == ExponentExpr{q(22469, 3900), -1});
    CHECK(chain_step(chain, "sixth_tail").expr == ExponentExpr{q(10459, 1950), q(-3, 4)});
    CHECK(chain_step(chain, "fifth_main").dominant);
    CHECK(chain_step(chain, "sixth_main").dominant);
    CHECK_THROWS_AS(chain_step(chain, "seventh"), ArgumentError);

    // Independent arithmetic for the displayed constants.
    const Frac s(1817, 1950);
    CHECK((Frac(1) + Frac(2) * s).r() == q(2792, 975));
    CHECK((Frac(1) + Frac(2) * s + Frac(2)).r() == q(4742, 975));
    CHECK((Frac(1) + Frac(5, 2) * s).r() == q(2597, 780));
    CHECK((Frac(2597, 780) + Frac(4742, 975) / Frac(2)).r() == q(22469, 3900));
}

TEST_CASE("trivial sup bound collapses the chain") {
    const auto chain = chain_exponents(q(6, 5), 1);
    CHECK(chain_step(chain, "fifth").expr == ExponentExpr{5, -1});
    CHECK(chain_step(chain, "sixth").expr == ExponentExpr{6, -1});
}

TEST_CASE("chain rejects c outside (1, 2)") {
    CHECK_THROWS_AS(chain_exponents(1), ArgumentError);
    CHECK_THROWS_AS(chain_exponents(2), ArgumentError);
}

TEST_CASE("type II check") {
    const TypeIIVerdict v = typeII_exponent_check(q(5363, 3900));
    REQUIRE(v.terms.size() == 3);
    CHECK(v.terms[0].exponent == q(6943, 3900));
    CHECK(v.terms[0].exponent <= v.target);
    CHECK(v.pass);
    // Both L-dependent terms are binding at the top of the L range.
    CHECK(v.terms[1].exponent == q(7268, 3900));
    CHECK(v.terms[1].worst_L == q(1, 3));
    CHECK(v.terms[2].exponent == q(7268, 3900));
    CHECK(v.target == q(7268, 3900));
    const Frac t2 = Frac(1) - Frac(857, 3900) + Frac(32, 205) * Frac(1463, 3900) + Frac(269, 410) * Frac(2, 3) +
                    Frac(237, 205) * Frac(857, 3900) + Frac(1, 3);
    CHECK(v.terms[1].exponent == t2.r());

    const TypeIIVerdict bad = typeII_exponent_check(q(3, 2));
    CHECK_FALSE(bad.pass);
}

TEST_CASE("Sargos-Wu bound") {
    CHECK(sargos_wu_bound(0, 0, 0) == Rational(0));
    const Rational c = q(5363, 3900);
    const Rational M = typeI_M_cap();
    const Rational b = sargos_wu_bound(c, M, Rational(1) - M);
    CHECK(b <= sup_exponent());
    CHECK(b.to_double() == doctest::Approx(0.92189).epsilon(1e-4));
    const auto terms = sargos_wu_terms(c, M, Rational(1) - M);
    // Term (F M^6 L^6)^{1/8} is the largest here.
    CHECK(terms[7] == b);
    CHECK(terms[7] == (Frac(5363, 3900) + Frac(6) * Frac(763, 1950) + Frac(6) * Frac(1187, 1950)).r() / 8);

    const LargeMVerdict lm = typeI_large_M_check(c);
    CHECK(lm.pass);
    CHECK(lm.worst_M == q(5, 9));
}

TEST_CASE("Sargos-Wu bound is monotone in each exponent") {
    std::mt19937_64 rng(7);
    auto draw = [&] { return q(static_cast<long long>(rng() % 2001), 1000); };
    for (int trial = 0; trial < 300; ++trial) {
        const Rational F = draw(), M = draw(), L = draw(), d = q(static_cast<long long>(rng() % 100 + 1), 1000);
        const Rational base = sargos_wu_bound(F, M, L);
        CHECK(sargos_wu_bound(F, M + d, L) >= base);
        CHECK(sargos_wu_bound(F, M, L + d) >= base);
        // All F coefficients except the last term are nonnegative.
        const auto lo = sargos_wu_terms(F, M, L);
        const auto hi = sargos_wu_terms(F + d, M, L);
        for (std::size_t i = 0; i + 1 < lo.size(); ++i) CHECK(hi[i] >= lo[i]);
    }
}

TEST_CASE("theta0") {
    const ThetaZero t = theta0();
    CHECK(t.approx > 0.0289);
    CHECK(t.approx < 0.0290);
    CHECK(2 * t.approx < 0.5);
}

TEST_CASE("derivation trace") {
    const auto trace = derivation_trace();
    bool saw_typeI = false, saw_final = false;
    for (const auto& s : trace) {
        if (s.label == "typeI.c0") saw_typeI = s.value == q(5363, 3900);
        if (s.label == "final.c0") saw_final = s.value == q(5363, 3900);
    }
    CHECK(saw_typeI);
    CHECK(saw_final);
    const std::string js = trace_json(trace);
    CHECK(js.find("\"5363/3900\"") != std::string::npos);
    CHECK(js.find("1.375128205128") != std::string::npos);
}

TEST_CASE("expression printing and solving") {
    CHECK(ExponentExpr{q(4742, 975), -1}.str() == "4742/975 - c");
    CHECK(ExponentExpr{0, q(1, 2)}.str() == "(1/2)*c");
    CHECK_THROWS_AS((void)constant(1).solve(0), ArgumentError);
}
