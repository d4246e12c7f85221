#include "quinary/decomposition.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "quinary/errors.hpp"
#include "quinary/expsum.hpp"

namespace quinary::decomposition {

namespace {

enum class Coef { mobius, one, log, mangoldt };

// Integer variable v in (lo, hi] carrying the weight w(v).
struct Var {
    u64 lo = 0;
    u64 hi = 0;
    Coef coef = Coef::one;
};

bool smooth(Coef c) { return c == Coef::one || c == Coef::log; }
bool log_like(Coef c) { return c == Coef::log || c == Coef::mangoldt; }

const char* coef_name(Coef c) {
    switch (c) {
        case Coef::mobius: return "mu";
        case Coef::one: return "1";
        case Coef::log: return "log";
        case Coef::mangoldt: return "Lambda";
    }
    return "?";
}

// Shared lookup tables up to n_hi.
struct Tables {
    std::vector<std::int8_t> mu;
    arith::MangoldtTable lambda;
    std::vector<double> logs;

    explicit Tables(u64 n) : mu(arith::moebius_table(n)), lambda(n), logs(n + 1, 0.0) {
        for (u64 k = 2; k <= n; ++k) logs[k] = std::log(static_cast<double>(k));
    }

    [[nodiscard]] double weight(Coef c, u64 v) const {
        switch (c) {
            case Coef::mobius: return mu[v];
            case Coef::one: return 1.0;
            case Coef::log: return logs[v];
            case Coef::mangoldt: return lambda(v);
        }
        return 0.0;
    }
};

// Products of (lo + 1) and hi over a subset, in long double to avoid overflow.
long double min_product(const std::vector<Var>& vars, unsigned mask) {
    long double p = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (mask >> i & 1u) p *= static_cast<long double>(vars[i].lo + 1);
    }
    return p;
}

long double max_product(const std::vector<Var>& vars, unsigned mask) {
    long double p = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (mask >> i & 1u) p *= static_cast<long double>(vars[i].hi);
    }
    return p;
}

u64 clamp_u64(long double x, u64 cap) { return x >= static_cast<long double>(cap) ? cap : static_cast<u64>(x); }

// Dirichlet convolution of the variables in `mask`, restricted to products
// in (floor, cap]. Returns the nonzero entries in increasing order.
void convolve(const std::vector<Var>& vars, unsigned mask, u64 floor_, u64 cap, const Tables& tab,
              std::vector<u64>& support, std::vector<double>& values) {
    support.clear();
    values.clear();
    std::vector<double> cur(cap + 1, 0.0);
    std::vector<u64> live = {1};
    cur[1] = 1.0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (!(mask >> i & 1u)) continue;
        const Var& v = vars[i];
        std::vector<double> next(cap + 1, 0.0);
        std::vector<u64> next_live;
        for (u64 m : live) {
            const double am = cur[m];
            const u64 top = std::min(v.hi, cap / m);
            for (u64 k = v.lo + 1; k <= top; ++k) {
                const double w = tab.weight(v.coef, k);
                if (w == 0.0) continue;
                const u64 mk = m * k;
                if (next[mk] == 0.0) next_live.push_back(mk);
                next[mk] += am * w;
            }
        }
        cur.swap(next);
        std::sort(next_live.begin(), next_live.end());
        next_live.erase(std::unique(next_live.begin(), next_live.end()), next_live.end());
        live.swap(next_live);
    }
    for (u64 m : live) {
        if (m > floor_ && cur[m] != 0.0) {
            support.push_back(m);
            values.push_back(cur[m]);
        }
    }
}

std::string describe(const std::vector<Var>& vars, unsigned mask) {
    std::string s;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (!(mask >> i & 1u)) continue;
        if (!s.empty()) s += '*';
        s += coef_name(vars[i].coef);
    }
    return s.empty() ? "1" : s;
}

// l in (lo, hi] with ml in (n_lo, n_hi].
std::pair<u64, u64> inner_span(const Piece& p, u64 m) {
    const u64 lo = std::max(p.L_lo, p.n_lo / m);
    const u64 hi = std::min(p.L_hi, p.n_hi / m);
    return {lo, std::max(lo, hi)};
}

class Builder {
public:
    Builder(const DecompositionParams& params, const Tables& tab)
        : P_(params), tab_(tab), n_lo_(static_cast<u64>(std::floor(params.X / 2))),
          n_hi_(static_cast<u64>(std::floor(params.X))) {}

    std::vector<Piece> pieces;
    int max_depth = 0;

    [[nodiscard]] u64 n_lo() const { return n_lo_; }
    [[nodiscard]] u64 n_hi() const { return n_hi_; }

    // A box whose product range misses (n_lo, n_hi] contributes nothing.
    [[nodiscard]] bool empty(const std::vector<Var>& vars) const {
        const unsigned all = (1u << vars.size()) - 1;
        return min_product(vars, all) > n_hi_ || max_product(vars, all) <= n_lo_;
    }

    // Heath-Brown: classify or split geometrically.
    void refine(std::vector<Var> vars, double scale, double sign, int depth) {
        if (empty(vars)) return;
        const unsigned all = (1u << vars.size()) - 1;
        const double C = P_.slack;
        // Type I: one smooth variable already beyond Z / slack.
        int best = -1;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (smooth(vars[i].coef) && static_cast<double>(vars[i].lo + 1) >= P_.Z / C &&
                (best < 0 || vars[i].lo > vars[static_cast<std::size_t>(best)].lo)) {
                best = static_cast<int>(i);
            }
        }
        if (best >= 0) {
            const unsigned L = 1u << best;
            emit(vars, all & ~L, L, PieceKind::type_i, scale, sign, depth);
            return;
        }
        // Type II: some sub-product confined to [U / slack, slack V]; fewest factors first.
        for (int size = 1; size < static_cast<int>(vars.size()); ++size) {
            for (unsigned L = 1; L < all; ++L) {
                if (std::popcount(L) != size) continue;
                if (min_product(vars, L) >= P_.U / C && max_product(vars, L) <= P_.V * C) {
                    emit(vars, all & ~L, L, PieceKind::type_ii, scale, sign, depth);
                    return;
                }
            }
        }
        // Split the variable with the widest ratio at its geometric midpoint.
        int pick = -1;
        long double widest = 0;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (vars[i].hi - vars[i].lo < 2) continue;
            const long double r = static_cast<long double>(vars[i].hi) / static_cast<long double>(vars[i].lo + 1);
            if (r > widest) {
                widest = r;
                pick = static_cast<int>(i);
            }
        }
        if (pick < 0) throw StateError("decompose: a single-point box admits neither Type I nor Type II form");
        if (depth >= P_.max_depth) throw StateError("decompose: refinement depth cap reached");
        Var& v = vars[static_cast<std::size_t>(pick)];
        u64 mid = static_cast<u64>(std::floor(std::sqrt(static_cast<long double>(v.lo + 1) * v.hi)));
        mid = std::clamp(mid, v.lo + 1, v.hi - 1);
        std::vector<Var> left = vars, right = vars;
        left[static_cast<std::size_t>(pick)].hi = mid;
        right[static_cast<std::size_t>(pick)].lo = mid;
        refine(std::move(left), scale, sign, depth + 1);
        refine(std::move(right), scale, sign, depth + 1);
    }

    // Vaughan and synthetic pieces: classify after the fact.
    void emit_classified(const std::vector<Var>& vars, unsigned M, unsigned L, double scale, double sign) {
        if (empty(vars)) return;
        const double C = P_.slack;
        const long double Lmin = std::max(min_product(vars, L), static_cast<long double>(n_lo_ + 1) / max_product(vars, M));
        const long double Lmax = std::min(max_product(vars, L), static_cast<long double>(n_hi_) / min_product(vars, M));
        PieceKind kind = PieceKind::bilinear;
        if (std::popcount(L) == 1 && smooth(vars[static_cast<std::size_t>(std::countr_zero(L))].coef) && Lmin >= P_.Z / C) {
            kind = PieceKind::type_i;
        } else if (Lmin >= P_.U / C && Lmax <= P_.V * C) {
            kind = PieceKind::type_ii;
        }
        emit(vars, M, L, kind, scale, sign, 0);
    }

private:
    void emit(const std::vector<Var>& vars, unsigned M, unsigned L, PieceKind kind, double scale, double sign,
              int depth) {
        Piece p;
        p.kind = kind;
        p.n_lo = n_lo_;
        p.n_hi = n_hi_;
        p.scale = scale;
        p.depth = depth;
        max_depth = std::max(max_depth, depth);
        const long double Mmin = min_product(vars, M), Lmin = min_product(vars, L);
        p.M_lo = clamp_u64(std::floor(std::max(Mmin - 1,
                                               static_cast<long double>(n_lo_) / max_product(vars, L))),
                           n_hi_);
        p.M_hi = clamp_u64(std::min(max_product(vars, M), static_cast<long double>(n_hi_) / Lmin), n_hi_);
        p.L_lo = clamp_u64(std::floor(std::max(Lmin - 1, static_cast<long double>(n_lo_) / max_product(vars, M))), n_hi_);
        p.L_hi = clamp_u64(std::min(max_product(vars, L), static_cast<long double>(n_hi_) / Mmin), n_hi_);
        if (p.M_hi <= p.M_lo || p.L_hi <= p.L_lo) return;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            const bool in_M = M >> i & 1u;
            (in_M ? p.k_M : p.k_L) += 1;
            if (log_like(vars[i].coef)) (in_M ? p.logs_M : p.logs_L) += 1;
        }
        p.factors = describe(vars, M) + " | " + describe(vars, L);
        convolve(vars, M, p.M_lo, p.M_hi, tab_, p.m, p.a);
        for (double& x : p.a) x *= sign * scale;
        const bool single = std::popcount(L) == 1;
        const Coef lc = vars[static_cast<std::size_t>(std::countr_zero(L))].coef;
        if (single && lc == Coef::one) {
            p.weight = InnerWeight::one;
        } else if (single && lc == Coef::log) {
            p.weight = InnerWeight::log;
        } else {
            p.weight = InnerWeight::table;
            convolve(vars, L, p.L_lo, p.L_hi, tab_, p.l, p.b);
        }
        for (u64 m : p.m) {
            const auto [lo, hi] = inner_span(p, m);
            if (p.weight == InnerWeight::table) {
                p.n_terms += static_cast<u64>(std::upper_bound(p.l.begin(), p.l.end(), hi) -
                                              std::upper_bound(p.l.begin(), p.l.end(), lo));
            } else {
                // log 1 = 0 drops l = 1 from the log weight.
                const u64 from = p.weight == InnerWeight::log ? std::max<u64>(lo, 1) : lo;
                p.n_terms += hi > from ? hi - from : 0;
            }
        }
        if (p.n_terms > 0) pieces.push_back(std::move(p));
    }

    const DecompositionParams& P_;
    const Tables& tab_;
    u64 n_lo_;
    u64 n_hi_;
};

u64 icbrt(u64 n) {
    auto r = static_cast<u64>(std::cbrt(static_cast<double>(n)));
    while (r * r * r > n) --r;
    while ((r + 1) * (r + 1) * (r + 1) <= n) ++r;
    return r;
}

void check_exponent(double c) {
    if (!(c > 1.0 && c < 3.0) || c == 2.0) throw ArgumentError("exponent c must lie in (1, 3) and differ from 2");
}

void check_t_range(double X, double c, double t) {
    const double lo = expsum::minor_arc_start(X, c), hi = expsum::minor_arc_end(X);
    if (!(std::fabs(t) >= lo * (1 - 1e-12)) || !(std::fabs(t) <= hi * (1 + 1e-12))) {
        throw ArgumentError("bound report: need Delta <= |t| <= H");
    }
}

// Inner sum sum_l b(l) e(t (ml)^c) for one m, as a callback over (l, weight).
template <class F>
void for_each_inner(const Piece& p, u64 m, F&& f) {
    const auto [lo, hi] = inner_span(p, m);
    if (p.weight == InnerWeight::table) {
        auto it = std::upper_bound(p.l.begin(), p.l.end(), lo);
        for (; it != p.l.end() && *it <= hi; ++it) f(*it, p.b[static_cast<std::size_t>(it - p.l.begin())]);
    } else {
        for (u64 l = lo + 1; l <= hi; ++l) {
            const double w = p.weight == InnerWeight::one ? 1.0 : std::log(static_cast<double>(l));
            if (w != 0.0) f(l, w);
        }
    }
}

double tau_k(const arith::Factorization& f, int k) {
    double r = 1.0;
    for (const auto& pp : f) {
        // binom(e + k - 1, k - 1)
        double b = 1.0;
        for (int i = 1; i < k; ++i) b = b * (pp.e + i) / i;
        r *= b;
    }
    return r;
}

}  // namespace

void DecompositionParams::validate() const {
    if (!(X >= 8.0) || !std::isfinite(X)) throw ArgumentError("decompose: X must be finite and at least 8");
    if (!(U > 2.0 && U < V && V < Z && Z < X)) throw ArgumentError("decompose: need 2 < U < V < Z < X");
    if (std::fabs(Z - 0.5 - std::round(Z - 0.5)) > 1e-9) throw ArgumentError("decompose: Z - 1/2 must be an integer");
    if (!(slack >= 1.0)) throw ArgumentError("decompose: slack must be at least 1");
    const double s2 = slack * slack;
    if (!(X * s2 >= Z * Z * U)) throw ArgumentError("decompose: need X >> Z^2 U");
    if (!(Z * s2 >= U * U)) throw ArgumentError("decompose: need Z >> U^2");
    if (!(V * V * V * s2 >= X)) throw ArgumentError("decompose: need V^3 >> X");
    if (max_depth < 1) throw ArgumentError("decompose: max_depth must be positive");
}

DecompositionParams standard_params(double X, Identity identity) {
    DecompositionParams p;
    p.X = X;
    p.U = std::pow(X, 1.0 / 9.0);
    p.V = std::cbrt(X);
    p.Z = std::floor(std::pow(X, 4.0 / 9.0)) + 0.5;
    p.identity = identity;
    return p;
}

Decomposition decompose(const DecompositionParams& params) {
    params.validate();
    if (params.X > 1e7) throw ResourceError("decompose: X above 10^7 is beyond desk scale");
    const Tables tab(static_cast<u64>(std::floor(params.X)));
    Builder b(params, tab);
    Decomposition out;
    out.params = params;
    const u64 N = b.n_hi();
    if (params.identity == Identity::heath_brown) {
        // Lambda = sum_{j=1}^{3} (-1)^{j-1} binom(3, j) mu_{<=z}^{*j} * 1^{*(j-1)} * log,
        // valid for n < (z + 1)^3, so z = floor(cbrt(X)) covers n <= X.
        const u64 z = icbrt(N);
        out.rough_cut = z;
        constexpr std::array<double, 3> binom = {3.0, 3.0, 1.0};
        for (int j = 1; j <= 3; ++j) {
            std::vector<Var> vars;
            for (int i = 0; i < j; ++i) vars.push_back({0, z, Coef::mobius});
            for (int i = 1; i < j; ++i) vars.push_back({0, N, Coef::one});
            vars.push_back({0, N, Coef::log});
            b.refine(std::move(vars), binom[static_cast<std::size_t>(j - 1)], j % 2 == 1 ? 1.0 : -1.0, 0);
        }
    } else {
        // Lambda(n) = mu_{<=V} * log - mu_{<=V} * Lambda_{<=U} * 1 + mu_{>V} * Lambda_{>U} * 1 for n > U.
        const u64 Ui = static_cast<u64>(std::floor(params.U)), Vi = static_cast<u64>(std::floor(params.V));
        b.emit_classified({{0, Vi, Coef::mobius}, {0, N, Coef::log}}, 1u, 2u, 1.0, 1.0);
        b.emit_classified({{0, Vi, Coef::mobius}, {0, Ui, Coef::mangoldt}, {0, N, Coef::one}}, 3u, 4u, 1.0, -1.0);
        for (u64 lo = Ui; lo < N; lo = lo * 2) {
            const u64 hi = std::min(N, 2 * lo);
            b.emit_classified({{Vi, N, Coef::mobius}, {0, N, Coef::one}, {lo, hi, Coef::mangoldt}}, 3u, 4u, 1.0, 1.0);
        }
    }
    out.pieces = std::move(b.pieces);
    out.max_depth_used = b.max_depth;
    out.count_constant = static_cast<double>(out.pieces.size()) / std::pow(std::log(params.X), 10);
    return out;
}

Decomposition decompose(double X, Identity identity) { return decompose(standard_params(X, identity)); }

PowerTable::PowerTable(u64 n_max, double c) : power_(n_max + 1, 0.0L), c_(c) {
    for (u64 n = 1; n <= n_max; ++n) power_[n] = std::pow(static_cast<long double>(n), static_cast<long double>(c));
}

Complex eval_piece(const Piece& piece, const PowerTable& powers, double t) {
    if (powers.n_max() < piece.n_hi) throw StateError("eval_piece: power table too short");
    const long double tl = t;
    CompensatedComplexSum outer;
    for (std::size_t i = 0; i < piece.m.size(); ++i) {
        const u64 m = piece.m[i];
        Complex inner = 0;
        for_each_inner(piece, m, [&](u64 l, double w) { inner += w * unit_phase(tl * powers[m * l]); });
        outer += piece.a[i] * inner;
    }
    return outer.value();
}

Complex eval_piece(const Piece& piece, double c, double t) {
    const long double tl = t, cl = c;
    CompensatedComplexSum outer;
    for (std::size_t i = 0; i < piece.m.size(); ++i) {
        const long double mc = std::pow(static_cast<long double>(piece.m[i]), cl);
        Complex inner = 0;
        for_each_inner(piece, piece.m[i], [&](u64 l, double w) {
            inner += w * unit_phase(tl * mc * std::pow(static_cast<long double>(l), cl));
        });
        outer += piece.a[i] * inner;
    }
    return outer.value();
}

Complex eval_decomposition(const Decomposition& d, const PowerTable& powers, double t) {
    CompensatedComplexSum s;
    for (const Piece& p : d.pieces) s += eval_piece(p, powers, t);
    return s.value();
}

double coefficient_ratio(const Piece& piece, double X, const arith::FactorizationCache& cache) {
    const double L = std::log(X);
    double worst = 0.0;
    auto check = [&](u64 n, double v, int k, int logs) {
        const double bound = piece.scale * tau_k(cache.factorize(n), std::max(k, 1)) * std::pow(L, logs);
        worst = std::max(worst, std::fabs(v) / bound);
    };
    for (std::size_t i = 0; i < piece.m.size(); ++i) check(piece.m[i], piece.a[i], piece.k_M, piece.logs_M);
    // b is unscaled: the binomial factor lives in a.
    for (std::size_t i = 0; i < piece.l.size(); ++i) {
        const double bound = tau_k(cache.factorize(piece.l[i]), std::max(piece.k_L, 1)) * std::pow(L, piece.logs_L);
        worst = std::max(worst, std::fabs(piece.b[i]) / bound);
    }
    return worst;
}

Piece synthetic_typeI(double X, u64 M) {
    if (!(X >= 8.0) || M < 1 || static_cast<double>(M) > X / 4) throw ArgumentError("synthetic_typeI: need 1 <= M <= X/4");
    Piece p;
    p.kind = PieceKind::type_i;
    p.n_lo = static_cast<u64>(std::floor(X / 2));
    p.n_hi = static_cast<u64>(std::floor(X));
    p.M_lo = M;
    p.M_hi = 2 * M;
    p.L_lo = p.n_lo / p.M_hi;
    p.L_hi = p.n_hi / (M + 1);
    p.weight = InnerWeight::one;
    p.factors = "1 | 1";
    p.k_M = 1;
    p.k_L = 1;
    for (u64 m = M + 1; m <= 2 * M; ++m) {
        p.m.push_back(m);
        p.a.push_back(1.0);
        const auto [lo, hi] = inner_span(p, m);
        p.n_terms += hi - lo;
    }
    return p;
}

int typeI_case(const Piece& piece, double X) {
    return static_cast<double>(piece.M_hi) <= std::pow(X, 763.0 / 1950.0) ? 1 : 2;
}

BoundReport bound_report_typeI(const Decomposition& d, double c, double t) {
    check_exponent(c);
    const double X = d.params.X;
    check_t_range(X, c, t);
    BoundReport r;
    r.X = X;
    r.c = c;
    r.t = t;
    r.target = std::pow(X, 1817.0 / 1950.0);
    const PowerTable pw(static_cast<u64>(std::floor(X)), c);
    for (std::size_t i = 0; i < d.pieces.size(); ++i) {
        const Piece& p = d.pieces[i];
        if (p.kind != PieceKind::type_i) continue;
        PieceBound b;
        b.index = i;
        b.kind = p.kind;
        b.abs_value = std::abs(eval_piece(p, pw, t));
        for (std::size_t k = 0; k < p.m.size(); ++k) {
            double inner = 0.0;
            for_each_inner(p, p.m[k], [&](u64, double w) { inner += std::fabs(w); });
            b.trivial += std::fabs(p.a[k]) * inner;
        }
        b.ratio = b.abs_value / r.target;
        b.typeI_case = typeI_case(p, X);
        r.max_abs = std::max(r.max_abs, b.abs_value);
        r.max_ratio = std::max(r.max_ratio, b.ratio);
        r.pieces.push_back(b);
    }
    return r;
}

BoundReport bound_report_typeI(double X, double c, double t) { return bound_report_typeI(decompose(X), c, t); }

BoundReport bound_report_typeII(const Decomposition& d, double c, double t, int Q) {
    check_exponent(c);
    const double X = d.params.X;
    check_t_range(X, c, t);
    if (Q <= 0) Q = std::max(1, static_cast<int>(std::lround(std::pow(X, 857.0 / 3900.0))));
    BoundReport r;
    r.X = X;
    r.c = c;
    r.t = t;
    r.Q = Q;
    r.target = std::pow(X, 1817.0 / 1950.0);
    const PowerTable pw(static_cast<u64>(std::floor(X)), c);
    const long double tl = t;
    for (std::size_t i = 0; i < d.pieces.size(); ++i) {
        const Piece& p = d.pieces[i];
        if (p.kind != PieceKind::type_ii) continue;
        PieceBound b;
        b.index = i;
        b.kind = p.kind;
        double a2 = 0.0, inner2 = 0.0, shifted = 0.0;
        CompensatedComplexSum total;
        std::vector<Complex> seq;
        for (std::size_t k = 0; k < p.m.size(); ++k) {
            const u64 m = p.m[k];
            const auto [lo, hi] = inner_span(p, m);
            if (hi <= lo) continue;
            // Dense sequence over the integer interval (lo, hi] for the shifted-sum bound.
            seq.assign(hi - lo, Complex(0.0));
            Complex inner = 0;
            double absinner = 0.0;
            for_each_inner(p, m, [&](u64 l, double w) {
                const Complex z = w * unit_phase(tl * pw[m * l]);
                seq[l - lo - 1] = z;
                inner += z;
                absinner += std::fabs(w);
            });
            total += p.a[k] * inner;
            a2 += p.a[k] * p.a[k];
            inner2 += std::norm(inner);
            shifted += expsum::weyl_vdc_rhs(seq, Q);
            b.trivial += std::fabs(p.a[k]) * absinner;
        }
        b.abs_value = std::abs(total.value());
        b.cauchy_rhs = std::sqrt(a2 * inner2);
        b.shifted_majorant = std::sqrt(a2 * shifted);
        b.ratio = b.abs_value / r.target;
        r.max_abs = std::max(r.max_abs, b.abs_value);
        r.max_ratio = std::max(r.max_ratio, b.ratio);
        r.pieces.push_back(b);
    }
    return r;
}

BoundReport bound_report_typeII(double X, double c, double t, int Q) {
    return bound_report_typeII(decompose(X), c, t, Q);
}

std::string kind_name(PieceKind kind) {
    switch (kind) {
        case PieceKind::type_i: return "TypeI";
        case PieceKind::type_ii: return "TypeII";
        case PieceKind::bilinear: return "Bilinear";
    }
    return "?";
}

std::string identity_name(Identity identity) {
    return identity == Identity::heath_brown ? "heath-brown" : "vaughan";
}

std::string inventory_json(const Decomposition& d) {
    nlohmann::ordered_json j;
    j["X"] = d.params.X;
    j["U"] = d.params.U;
    j["V"] = d.params.V;
    j["Z"] = d.params.Z;
    j["identity"] = identity_name(d.params.identity);
    j["slack"] = d.params.slack;
    j["piece_count"] = d.pieces.size();
    j["count_constant"] = d.count_constant;
    j["max_depth"] = d.max_depth_used;
    auto arr = nlohmann::ordered_json::array();
    for (const Piece& p : d.pieces) {
        nlohmann::ordered_json e;
        e["kind"] = kind_name(p.kind);
        e["M_lo"] = p.M_lo;
        e["M_hi"] = p.M_hi;
        e["L_lo"] = p.L_lo;
        e["L_hi"] = p.L_hi;
        e["n_terms"] = p.n_terms;
        arr.push_back(std::move(e));
    }
    j["pieces"] = std::move(arr);
    return j.dump(2);
}

std::string bound_json(const BoundReport& r) {
    nlohmann::ordered_json j;
    j["X"] = r.X;
    j["c"] = r.c;
    j["t"] = r.t;
    if (r.Q > 0) j["Q"] = r.Q;
    j["target"] = r.target;
    j["max_abs"] = r.max_abs;
    j["max_ratio"] = r.max_ratio;
    auto arr = nlohmann::ordered_json::array();
    for (const PieceBound& b : r.pieces) {
        nlohmann::ordered_json e;
        e["index"] = b.index;
        e["kind"] = kind_name(b.kind);
        e["abs"] = b.abs_value;
        e["trivial"] = b.trivial;
        e["ratio"] = b.ratio;
        if (b.kind == PieceKind::type_i) {
            e["case"] = b.typeI_case;
        } else {
            e["cauchy"] = b.cauchy_rhs;
            e["shifted_majorant"] = b.shifted_majorant;
        }
        arr.push_back(std::move(e));
    }
    j["pieces"] = std::move(arr);
    return j.dump(2);
}

}  // namespace quinary::decomposition
