#include "quinary/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"

#include "quinary/errors.hpp"

namespace quinary::exponents {

namespace {

Rational frac(long long n, long long d) { return {BigInt(n), BigInt(d)}; }

}  // namespace

Rational default_slack() { return frac(1, 1000); }

bool ExponentPair::in_range() const {
    const Rational half = frac(1, 2);
    return Rational(0) <= kappa && kappa <= half && half <= lambda && lambda <= Rational(1);
}

ExponentPair process_A(const ExponentPair& pair) {
    const Rational den = 2 * pair.kappa + 2;
    return {pair.kappa / den, (pair.kappa + pair.lambda + 1) / den};
}

ExponentPair process_B(const ExponentPair& pair) {
    const Rational half = frac(1, 2);
    return {pair.lambda - half, pair.kappa + half};
}

ExponentPair apply_word(std::string_view word, ExponentPair start) {
    for (const char ch : word) {
        if (ch == 'A') {
            start = process_A(start);
        } else if (ch == 'B') {
            start = process_B(start);
        } else {
            throw ArgumentError(std::string("apply_word: unknown process '") + ch + "'");
        }
    }
    return start;
}

ExponentPair typeI_pair() { return {frac(2, 40), frac(33, 40)}; }
ExponentPair typeII_pair() { return {frac(32, 205), frac(269, 410)}; }

Rational ExponentExpr::solve(const Rational& target) const {
    if (beta == Rational(0)) throw ArgumentError("ExponentExpr::solve: expression does not depend on c");
    return (target - alpha) / beta;
}

std::string ExponentExpr::str() const {
    if (beta == Rational(0)) return alpha.str();
    std::string out = alpha == Rational(0) ? "" : alpha.str();
    const bool neg = beta < Rational(0);
    const Rational mag = neg ? -beta : beta;
    if (out.empty()) {
        out = neg ? "-" : "";
    } else {
        out += neg ? " - " : " + ";
    }
    if (mag != Rational(1)) out += "(" + mag.str() + ")*";
    return out + "c";
}

Rational sup_exponent() { return frac(1817, 1950); }
Rational typeI_M_cap() { return frac(763, 1950); }
Rational typeII_Q() { return frac(857, 3900); }
ExponentExpr delta_exponent() { return {frac(1, 4), -1}; }

ExponentExpr typeI_exponent(const ExponentPair& pair, const Rational& M_cap) {
    // sum over m ~ M of (X^c / L)^kappa L^lambda with L = X / M.
    const Rational one(1);
    return {pair.lambda - pair.kappa + M_cap * (one - pair.lambda + pair.kappa), pair.kappa};
}

Rational typeI_exponent(const Rational& c, const ExponentPair& pair, const Rational& M_cap) {
    return typeI_exponent(pair, M_cap).at(c);
}

Rational solve_c0_typeI() { return typeI_exponent(typeI_pair(), typeI_M_cap()).solve(sup_exponent()); }

namespace {

struct ChainExprs {
    ExponentExpr fifth_lead, fifth_main, fifth_tail;
    ExponentExpr sixth_lead, sixth_main, sixth_tail;
};

// Expressions of the chain with both branches of each moment. `fifth_for_sixth`
// is the fifth-moment expression fed into the sixth-moment step.
ChainExprs chain_exprs(const Rational& s, const ExponentExpr* fifth_for_sixth) {
    const Rational half = frac(1, 2);
    const ExponentExpr fourth = {4, -1};               // integral of |S|^4 |Theta|
    const ExponentExpr large_sieve = {half, frac(1, 4)};  // X^{(c+2)/4}
    ChainExprs e;
    // sqrt(X^{2-c} max|G| int|G|) with |G| <= |S|^4 |Theta|, max|S| = X^s.
    e.fifth_lead = ExponentExpr{1, -half} + constant(2 * s);
    e.fifth_main = e.fifth_lead + half * fourth;
    e.fifth_tail = large_sieve + fourth;
    const ExponentExpr& fifth = fifth_for_sixth != nullptr ? *fifth_for_sixth : e.fifth_main;
    e.sixth_lead = ExponentExpr{1, -half} + constant(frac(5, 2) * s);
    e.sixth_main = e.sixth_lead + half * fifth;
    e.sixth_tail = large_sieve + fifth;
    return e;
}

}  // namespace

std::vector<ChainStep> chain_exponents(const Rational& c, const Rational& s) {
    if (!(Rational(1) < c && c < Rational(2))) throw ArgumentError("chain_exponents: need 1 < c < 2");
    const ChainExprs first = chain_exprs(s, nullptr);
    const bool fifth_main_wins = first.fifth_main.at(c) >= first.fifth_tail.at(c);
    const ExponentExpr fifth = fifth_main_wins ? first.fifth_main : first.fifth_tail;
    const ChainExprs e = chain_exprs(s, &fifth);
    const bool sixth_main_wins = e.sixth_main.at(c) >= e.sixth_tail.at(c);
    const ExponentExpr sixth = sixth_main_wins ? e.sixth_main : e.sixth_tail;

    auto step = [&](std::string label, const ExponentExpr& expr, bool dominant) {
        return ChainStep{std::move(label), expr, expr.at(c), dominant};
    };
    return {
        step("sup", constant(s), true),
        step("fifth_lead", e.fifth_lead, true),
        step("fifth_main", e.fifth_main, fifth_main_wins),
        step("fifth_tail", e.fifth_tail, !fifth_main_wins),
        step("fifth", fifth, true),
        step("sixth_lead", e.sixth_lead, true),
        step("sixth_main", e.sixth_main, sixth_main_wins),
        step("sixth_tail", e.sixth_tail, !sixth_main_wins),
        step("sixth", sixth, true),
    };
}

const ChainStep& chain_step(const std::vector<ChainStep>& chain, std::string_view label) {
    const auto it = std::find_if(chain.begin(), chain.end(), [&](const ChainStep& s) { return s.label == label; });
    if (it == chain.end()) throw ArgumentError("chain_step: no step '" + std::string(label) + "'");
    return *it;
}

namespace {

// (5 - c) - (s + sixth/2 + 1/2), linear in c.
ExponentExpr final_balance(const ExponentExpr& sixth) {
    const Rational half = frac(1, 2);
    return ExponentExpr{5, -1} - (constant(sup_exponent() + half) + half * sixth);
}

}  // namespace

Rational solve_c0_final() {
    const ChainExprs e = chain_exprs(sup_exponent(), nullptr);
    const Rational c = final_balance(e.sixth_main).solve(0);
    if (!(e.fifth_main.at(c) >= e.fifth_tail.at(c)) || !(e.sixth_main.at(c) >= e.sixth_tail.at(c))) {
        throw StateError("solve_c0_final: main branch does not dominate at the solution");
    }
    return c;
}

Rational final_balance_slack(const Rational& c) {
    return final_balance(chain_step(chain_exponents(c), "sixth").expr).at(c);
}

TypeIIVerdict typeII_exponent_check(const Rational& c, const ExponentPair& pair, const Rational& Q_exp,
                                    const Rational& slack) {
    const Rational one(1);
    const Rational& q = Q_exp;
    const Rational kappa = pair.kappa;
    const Rational lambda = pair.lambda;
    // Each term is (X^2/Q) times the inner bound, as a function of l = log L / log X.
    auto t_diag = [&](const Rational&) { return Rational(2) - q; };
    auto t_pair = [&](const Rational& l) {
        // sum_{q<=Q} sum_l (q X^{c-1})^kappa M^lambda with M = X / L.
        return one - q + kappa * (c - one) + lambda * (one - l) + (one + kappa) * q + l;
    };
    auto t_recip = [&](const Rational& l) {
        // sum_{q<=Q} sum_l (|t| q X^{c-1})^{-1} with |t| >= X^{1/4-c}.
        return one - q + (one - c) - delta_exponent().at(c) + l;
    };
    const std::array<Rational, 2> ends = {frac(1, 9), frac(1, 3)};

    TypeIIVerdict v;
    v.target = 2 * sup_exponent();
    auto add = [&](const std::string& label, auto&& f) {
        TypeIITerm term{label, f(ends[0]), ends[0]};
        const Rational hi = f(ends[1]);
        if (hi > term.exponent) {
            term.exponent = hi;
            term.worst_L = ends[1];
        }
        v.terms.push_back(std::move(term));
    };
    add("diagonal", t_diag);
    add("pair", t_pair);
    add("reciprocal", t_recip);
    v.pass = true;
    for (std::size_t i = 0; i < v.terms.size(); ++i) {
        if (v.terms[i].exponent > v.terms[v.binding].exponent) v.binding = i;
        if (v.terms[i].exponent > v.target + slack) v.pass = false;
    }
    return v;
}

std::array<Rational, 11> sargos_wu_terms(const Rational& F, const Rational& M, const Rational& L) {
    struct Row {
        Rational f, m, l;
    };
    static const std::array<Row, 11> rows = {{
        {frac(4, 42), frac(31, 42), frac(34, 42)},
        {frac(6, 66), frac(53, 66), frac(51, 66)},
        {frac(6, 56), frac(46, 56), frac(41, 56)},
        {frac(2, 40), frac(38, 40), frac(29, 40)},
        {frac(3, 46), frac(43, 46), frac(32, 46)},
        {frac(1, 10), frac(9, 10), frac(6, 10)},
        {frac(2, 10), frac(7, 10), frac(6, 10)},
        {frac(1, 8), frac(6, 8), frac(6, 8)},
        {0, frac(1, 2), 1},
        {0, 1, frac(1, 2)},
        {frac(-1, 2), 1, 1},
    }};
    std::array<Rational, 11> out;
    for (std::size_t i = 0; i < rows.size(); ++i) out[i] = rows[i].f * F + rows[i].m * M + rows[i].l * L;
    return out;
}

Rational sargos_wu_bound(const Rational& F, const Rational& M, const Rational& L) {
    const auto terms = sargos_wu_terms(F, M, L);
    return *std::max_element(terms.begin(), terms.end());
}

LargeMVerdict typeI_large_M_check(const Rational& c, const Rational& slack) {
    // F = |t| X^c ranges over [X^{1/4}, X^c] on the minor arc; every term is
    // affine in F and M, so endpoints suffice.
    LargeMVerdict v;
    bool first = true;
    for (const Rational& M : {typeI_M_cap(), frac(5, 9)}) {
        for (const Rational& F : {frac(1, 4), c}) {
            const Rational b = sargos_wu_bound(F, M, Rational(1) - M);
            if (first || b > v.worst) {
                v.worst = b;
                v.worst_M = M;
                first = false;
            }
        }
    }
    v.pass = v.worst <= sup_exponent() + slack;
    return v;
}

ThetaZero theta0() {
    return {"1/2 - e*log(2)/4", 0.5 - std::numbers::e * std::numbers::ln2 / 4.0};
}

std::vector<TraceStep> derivation_trace() {
    std::vector<TraceStep> out;
    const Rational s = sup_exponent();
    const ExponentExpr t1 = typeI_exponent(typeI_pair(), typeI_M_cap());
    out.push_back({"typeI.kappa", typeI_pair().kappa});
    out.push_back({"typeI.lambda", typeI_pair().lambda});
    out.push_back({"typeI.M_cap", typeI_M_cap()});
    out.push_back({"typeI.alpha", t1.alpha});
    out.push_back({"typeI.beta", t1.beta});
    out.push_back({"typeI.target", s});
    const Rational c1 = solve_c0_typeI();
    out.push_back({"typeI.c0", c1});
    const Rational c2 = solve_c0_final();
    for (const ChainStep& step : chain_exponents(c2)) {
        out.push_back({"chain." + step.label + ".alpha", step.expr.alpha});
        out.push_back({"chain." + step.label + ".beta", step.expr.beta});
    }
    out.push_back({"final.c0", c2});
    out.push_back({"agree", c1 == c2 ? 1 : 0});
    return out;
}

std::string trace_json(const std::vector<TraceStep>& trace, int digits) {
    nlohmann::json arr = nlohmann::json::array();
    for (const TraceStep& s : trace) {
        arr.push_back({{"label", s.label}, {"exact", s.value.str()}, {"decimal", s.value.decimal(digits)}});
    }
    return arr.dump(2);
}

}  // namespace quinary::exponents
