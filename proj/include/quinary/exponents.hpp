#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "quinary/rational.hpp"

// Exponent bookkeeping in exact arithmetic. Every quantity is the exponent of
// X in a bound; powers of log X, epsilon and H = log^2 X / epsilon count as
// X^0, and the arbitrarily small eta is kept out of the algebra and only
// enters verdicts as an additive slack.
namespace quinary::exponents {

/// Default additive slack standing in for X^eta in verdict comparisons.
Rational default_slack();

/// (kappa, lambda) with 0 <= kappa <= 1/2 <= lambda <= 1.
struct ExponentPair {
    Rational kappa;
    Rational lambda;

    [[nodiscard]] bool in_range() const;
    friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

/// (kappa/(2kappa+2), (kappa+lambda+1)/(2kappa+2)).
ExponentPair process_A(const ExponentPair& pair);
/// (lambda - 1/2, kappa + 1/2). An involution.
ExponentPair process_B(const ExponentPair& pair);
/// Applies the letters of `word` (each 'A' or 'B') left to right.
ExponentPair apply_word(std::string_view word, ExponentPair start = {0, 1});

/// Pair used for the smooth-variable sum over l in the Type I estimate.
ExponentPair typeI_pair();
/// Pair used for the differenced sum in the Type II estimate.
ExponentPair typeII_pair();

/// alpha + beta * c.
struct ExponentExpr {
    Rational alpha;
    Rational beta;

    [[nodiscard]] Rational at(const Rational& c) const { return alpha + beta * c; }
    /// The c with at(c) == target. Throws ArgumentError when beta == 0.
    [[nodiscard]] Rational solve(const Rational& target) const;
    [[nodiscard]] std::string str() const;

    friend ExponentExpr operator+(const ExponentExpr& a, const ExponentExpr& b) {
        return {a.alpha + b.alpha, a.beta + b.beta};
    }
    friend ExponentExpr operator-(const ExponentExpr& a, const ExponentExpr& b) {
        return {a.alpha - b.alpha, a.beta - b.beta};
    }
    friend ExponentExpr operator*(const Rational& s, const ExponentExpr& e) { return {s * e.alpha, s * e.beta}; }
    friend bool operator==(const ExponentExpr&, const ExponentExpr&) = default;
};

/// The exponent c itself.
inline ExponentExpr c_var() { return {0, 1}; }
/// Constant exponent.
inline ExponentExpr constant(const Rational& r) { return {r, 0}; }

/// Target exponent of |S(t)| on the minor arc.
Rational sup_exponent();
/// Largest Type I coefficient range handled by the exponent-pair route.
Rational typeI_M_cap();
/// Log-length of the Type II Cauchy-Schwarz parameter Q.
Rational typeII_Q();
/// Lower end of the minor arc, |t| >= X^{1/4 - c}.
ExponentExpr delta_exponent();

/// Main term of the Type I bound with a general pair:
/// c*kappa + (lambda - kappa) + M_cap*(1 - lambda + kappa).
/// For the standard pair this is (2c+31)/40 + (9/40) M_cap.
ExponentExpr typeI_exponent(const ExponentPair& pair, const Rational& M_cap);
/// Same, evaluated at c.
Rational typeI_exponent(const Rational& c, const ExponentPair& pair, const Rational& M_cap);

/// Solves typeI_exponent(c) = sup_exponent() with M at its cap.
Rational solve_c0_typeI();

/// One labelled exponent of the moment chain.
struct ChainStep {
    std::string label;
    ExponentExpr expr;
    Rational value;     // expr.at(c)
    bool dominant;      // false for a branch that is absorbed by its sibling at this c
};

/// The fifth and sixth moment chain at c with sup bound s.
/// Labels, in order: sup, fifth_lead, fifth_main, fifth_tail, fifth,
/// sixth_lead, sixth_main, sixth_tail, sixth. The unsuffixed entries hold the
/// larger of main/tail at c.
std::vector<ChainStep> chain_exponents(const Rational& c, const Rational& s = sup_exponent());

/// Looks up a step by label. Throws ArgumentError if absent.
const ChainStep& chain_step(const std::vector<ChainStep>& chain, std::string_view label);

/// Solves s + sixth/2 + 1/2 = 5 - c with sixth the main branch of the sixth
/// moment, then checks that both main branches dominate at the solution.
Rational solve_c0_final();

/// Slack of the final balance at c: (5 - c) - (s + sixth(c)/2 + 1/2).
Rational final_balance_slack(const Rational& c);

struct TypeIITerm {
    std::string label;
    Rational exponent;   // maximum over L in [1/9, 1/3]
    Rational worst_L;
};

struct TypeIIVerdict {
    std::vector<TypeIITerm> terms;
    std::size_t binding = 0;   // index of the largest term
    Rational target;           // 2 * sup_exponent()
    bool pass = false;
};

/// Exponents of the terms under the square root of the Type II estimate after
/// Cauchy-Schwarz and Weyl differencing with parameter Q, maximized over the
/// admissible L range. Passes when every term is <= target + slack.
TypeIIVerdict typeII_exponent_check(const Rational& c, const ExponentPair& pair = typeII_pair(),
                                    const Rational& Q_exp = typeII_Q(), const Rational& slack = default_slack());

/// Exponents of the eleven terms of the Sargos-Wu double sum bound.
std::array<Rational, 11> sargos_wu_terms(const Rational& F_exp, const Rational& M_exp, const Rational& L_exp);
/// Maximum of sargos_wu_terms.
Rational sargos_wu_bound(const Rational& F_exp, const Rational& M_exp, const Rational& L_exp);

struct LargeMVerdict {
    Rational worst;      // max over M in [M_cap, 5/9] and F in [1/4, c]
    Rational worst_M;
    bool pass = false;
};

/// Type I bound for M beyond the cap, via the Sargos-Wu estimate with L = 1 - M.
LargeMVerdict typeI_large_M_check(const Rational& c, const Rational& slack = default_slack());

/// theta_0 = 1/2 - e log 2 / 4.
struct ThetaZero {
    std::string symbolic;
    double approx;
};
ThetaZero theta0();

/// One line of a printed derivation.
struct TraceStep {
    std::string label;
    Rational value;
};

/// Both derivations of the threshold with their intermediate exponents.
std::vector<TraceStep> derivation_trace();

/// JSON array of {label, exact, decimal}.
std::string trace_json(const std::vector<TraceStep>& trace, int digits = 12);

}  // namespace quinary::exponents
