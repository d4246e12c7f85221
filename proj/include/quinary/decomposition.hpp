#pragma once

// Explicit Type I / Type II decomposition of the von Mangoldt weighted sum
// S*(t) = sum_{X/2 < n <= X} Lambda(n) e(t n^c). Every piece is a double sum
// sum_m a(m) sum_l b(l) e(t (ml)^c) over m in (M_lo, M_hi], l in (L_lo, L_hi],
// ml in (X/2, X], and the pieces add up to S*(t) identically in t.

#include <cstdint>
#include <string>
#include <vector>

#include "quinary/arith.hpp"
#include "quinary/numeric.hpp"

namespace quinary::decomposition {

using arith::u64;

/// Heath-Brown's identity with three factors, or Vaughan's identity.
enum class Identity { heath_brown, vaughan };

/// type_i: l is a smooth variable with L >= Z/slack.
/// type_ii: L inside [U/slack, slack V].
/// bilinear: a Vaughan bilinear block whose short side misses [U, V].
enum class PieceKind { type_i, type_ii, bilinear };

/// Weight on the inner variable: 1, log l, or a stored table b(l).
enum class InnerWeight { one, log, table };

struct DecompositionParams {
    double X = 0.0;
    double U = 0.0;
    double V = 0.0;
    double Z = 0.0;
    /// Multiplicative constant hidden in the range conditions of both kinds
    /// and in the shape constraints on U, V, Z.
    double slack = 2.0;
    Identity identity = Identity::heath_brown;
    /// Cap on the number of range splits along one refinement path.
    int max_depth = 40;

    /// 2 < U < V < Z < X, Z - 1/2 an integer, X >= Z^2 U / slack^2,
    /// Z >= U^2 / slack^2, V^3 >= X / slack^2. Throws ArgumentError.
    void validate() const;
};

/// U = X^{1/9}, V = X^{1/3}, Z = floor(X^{4/9}) + 1/2.
DecompositionParams standard_params(double X, Identity identity = Identity::heath_brown);

struct Piece {
    PieceKind kind = PieceKind::type_i;
    u64 M_lo = 0, M_hi = 0;  // m in (M_lo, M_hi]
    u64 L_lo = 0, L_hi = 0;  // l in (L_lo, L_hi]
    u64 n_lo = 0, n_hi = 0;  // ml in (n_lo, n_hi]
    std::vector<u64> m;      // support of a, increasing
    std::vector<double> a;
    InnerWeight weight = InnerWeight::one;
    std::vector<u64> l;      // support of b when weight == table, increasing
    std::vector<double> b;
    u64 n_terms = 0;         // pairs (m, l) with nonzero coefficients and ml in range
    /// Factor structure, e.g. "mu*mu*1 | log": M-side factors, then L-side.
    std::string factors;
    /// |a(m)| <= scale * tau_{k_M}(m) * log^{logs_M} X, likewise for b.
    double scale = 1.0;
    int k_M = 0, logs_M = 0, k_L = 0, logs_L = 0;
    int depth = 0;           // splits used to reach this piece
};

struct Decomposition {
    DecompositionParams params;
    u64 rough_cut = 0;       // Heath-Brown: Mobius variables run over [1, rough_cut]
    std::vector<Piece> pieces;
    int max_depth_used = 0;
    /// pieces.size() / log^10 X.
    double count_constant = 0.0;
};

/// Builds the pieces. Throws ArgumentError on bad parameters, ResourceError
/// for X > 10^7 and StateError if a box stays unclassified at max_depth.
Decomposition decompose(const DecompositionParams& params);
Decomposition decompose(double X, Identity identity = Identity::heath_brown);

/// n^c for n <= n_max in extended precision.
class PowerTable {
public:
    PowerTable(u64 n_max, double c);
    [[nodiscard]] long double operator[](u64 n) const noexcept { return power_[n]; }
    [[nodiscard]] u64 n_max() const noexcept { return power_.size() - 1; }
    [[nodiscard]] double c() const noexcept { return c_; }

private:
    std::vector<long double> power_;
    double c_;
};

/// The double sum of one piece, phases taken from the table.
Complex eval_piece(const Piece& piece, const PowerTable& powers, double t);
/// Same with m^c l^c formed directly.
Complex eval_piece(const Piece& piece, double c, double t);

/// Sum of all pieces.
Complex eval_decomposition(const Decomposition& d, const PowerTable& powers, double t);

/// Largest |a(m)| / (scale tau_k(m) log^j X) over the piece, and the same for b.
double coefficient_ratio(const Piece& piece, double X, const arith::FactorizationCache& cache);

/// Type I piece with a = 1 on (M, 2M] and unweighted l, for probing a
/// chosen M directly.
Piece synthetic_typeI(double X, u64 M);

/// 1 when M_hi <= X^{763/1950} (the short-M case), else 2.
int typeI_case(const Piece& piece, double X);

struct PieceBound {
    std::size_t index = 0;
    PieceKind kind = PieceKind::type_i;
    double abs_value = 0.0;
    double trivial = 0.0;          // sum |a(m)| sum_l |b(l)|
    double ratio = 0.0;            // abs_value / X^{1817/1950}
    int typeI_case = 0;
    double cauchy_rhs = 0.0;       // Type II: sqrt(sum |a|^2 * sum_m |inner_m|^2)
    double shifted_majorant = 0.0; // Type II: Cauchy then the shifted-sum inequality in l
};

struct BoundReport {
    double X = 0.0;
    double c = 0.0;
    double t = 0.0;
    int Q = 0;                     // Type II only
    double target = 0.0;           // X^{1817/1950}
    std::vector<PieceBound> pieces;
    double max_abs = 0.0;
    double max_ratio = 0.0;
};

/// |S_I| for every Type I piece. Requires Delta <= |t| <= H.
BoundReport bound_report_typeI(const Decomposition& d, double c, double t);
BoundReport bound_report_typeI(double X, double c, double t);

/// |S_II|, the Cauchy bound and the explicit shifted-sum majorant with shift
/// range Q for every Type II piece. Q <= 0 selects round(X^{857/3900}).
BoundReport bound_report_typeII(const Decomposition& d, double c, double t, int Q = 0);
BoundReport bound_report_typeII(double X, double c, double t, int Q = 0);

std::string kind_name(PieceKind kind);
std::string identity_name(Identity identity);

/// {X, U, V, Z, identity, piece_count, count_constant, max_depth,
///  pieces: [{kind, M_lo, M_hi, L_lo, L_hi, n_terms}]}.
std::string inventory_json(const Decomposition& d);

/// JSON for a bound report.
std::string bound_json(const BoundReport& report);

}  // namespace quinary::decomposition
