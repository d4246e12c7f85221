#include "quinary/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"
#include "quinary/errors.hpp"
#include "quinary/io.hpp"
#include "quinary/kernel.hpp"

namespace quinary::counting {

namespace {

using BigInt = boost::multiprecision::cpp_int;

constexpr double kMaxC = 5363.0 / 3900.0;
constexpr u64 kMaxPairs = 50'000'000;

// Runs f(i) for i in [0, n) on up to `threads` workers; index i always goes
// to worker i % threads, so per-index results are independent of scheduling.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += threads) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

// Exact sum of k * w for integers k and doubles w, held as an integer
// multiple of 2^-kShift.
class ExactSum {
public:
    void add(long long k, double w) {
        if (w == 0.0 || k == 0) return;
        int e = 0;
        const double m = std::frexp(w, &e);
        const auto mant = static_cast<long long>(std::ldexp(m, 53));
        BigInt term = BigInt(mant) * k;
        term <<= static_cast<unsigned>(e - 53 + kShift);
        acc_ += term;
    }
    [[nodiscard]] const BigInt& raw() const noexcept { return acc_; }
    [[nodiscard]] double value() const {
        if (acc_ == 0) return 0.0;
        BigInt a = boost::multiprecision::abs(acc_);
        const auto bits = static_cast<int>(boost::multiprecision::msb(a));
        const int drop = std::max(0, bits - 63);
        a >>= static_cast<unsigned>(drop);
        const double v = std::ldexp(a.convert_to<double>(), drop - kShift);
        return acc_ < 0 ? -v : v;
    }

private:
    static constexpr int kShift = 1200;
    BigInt acc_;
};

struct PairEntry {
    double sum;
    std::uint32_t i;
    std::uint32_t j;
};

// All ordered pairs with sum <= cap, sorted by sum then indices.
std::vector<PairEntry> pair_table(const std::vector<double>& v, double cap) {
    const std::size_t P = v.size();
    if (static_cast<long double>(P) * P > kMaxPairs) throw ResourceError("pair table above 5e7 entries");
    std::vector<PairEntry> out;
    for (std::size_t i = 0; i < P; ++i) {
        for (std::size_t j = 0; j < P && v[i] + v[j] <= cap; ++j) {
            out.push_back({v[i] + v[j], static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
        }
    }
    std::sort(out.begin(), out.end(), [](const PairEntry& a, const PairEntry& b) {
        return a.sum < b.sum || (a.sum == b.sum && (a.i < b.i || (a.i == b.i && a.j < b.j)));
    });
    return out;
}

// Entries with sum in [lo, hi].
std::pair<std::size_t, std::size_t> pair_window(const std::vector<PairEntry>& t, double lo, double hi) {
    const auto b = std::lower_bound(t.begin(), t.end(), lo, [](const PairEntry& e, double x) { return e.sum < x; });
    const auto e = std::upper_bound(b, t.end(), hi, [](double x, const PairEntry& e) { return x < e.sum; });
    return {static_cast<std::size_t>(b - t.begin()), static_cast<std::size_t>(e - t.begin())};
}

// Slack on double-precision windows; survivors are rechecked in long double.
double window_slack(double N) { return 1e-9 * std::max(1.0, std::fabs(N)); }

struct PrimePowers {
    std::vector<u64> p;
    std::vector<long double> pw;
    std::vector<double> pd;
    std::vector<double> logs;
};

PrimePowers prime_powers(u64 lo, u64 hi, double c) {
    PrimePowers out;
    if (hi > lo) out.p = arith::sieve_primes(lo, hi).primes;
    for (u64 p : out.p) {
        const long double v = std::pow(static_cast<long double>(p), static_cast<long double>(c));
        out.pw.push_back(v);
        out.pd.push_back(static_cast<double>(v));
        out.logs.push_back(std::log(static_cast<double>(p)));
    }
    return out;
}

// Per-p1 weights: W = log p1 * sum theta(y) prod_{k>=2} log p_k and the
// same with the strict indicator, plus the raw count.
struct FirstPrimeWeights {
    u64 p1 = 0;
    double theta_weight = 0.0;
    double strict_weight = 0.0;
    u64 count = 0;
};

struct GammaCore {
    double X = 0.0;
    std::vector<FirstPrimeWeights> rows;
};

GammaCore gamma_core(const SearchParams& params, unsigned threads) {
    params.validate();
    GammaCore core;
    core.X = params.X();
    if (core.X > 3000.0) throw ResourceError("gamma: X above 3000 is beyond desk scale");
    const u64 lo = static_cast<u64>(std::floor(core.X / 2)), hi = static_cast<u64>(std::floor(core.X));
    const PrimePowers P = prime_powers(lo, hi, params.c);
    core.rows.resize(P.p.size());
    for (std::size_t i = 0; i < P.p.size(); ++i) core.rows[i].p1 = P.p[i];
    const double eps = params.epsilon;
    if (eps <= 0.0 || P.p.empty()) return core;
    const kernel::KernelParams kp = kernel::make_kernel(eps, core.X);
    const double tol = window_slack(params.N);
    const auto pairs = pair_table(P.pd, params.N + eps + tol);
    const long double N = params.N;
    parallel_for(P.p.size(), threads, [&](std::size_t i1) {
        FirstPrimeWeights& row = core.rows[i1];
        double th = 0.0, st = 0.0;
        for (const PairEntry& a : pairs) {
            const double rest = params.N - P.pd[i1] - a.sum;
            if (rest + eps + tol < 0.0) break;
            const auto [b0, b1] = pair_window(pairs, rest - eps - tol, rest + eps + tol);
            const double wa = P.logs[a.i] * P.logs[a.j];
            for (std::size_t k = b0; k < b1; ++k) {
                const PairEntry& b = pairs[k];
                const long double y = P.pw[i1] + P.pw[a.i] + P.pw[a.j] + P.pw[b.i] + P.pw[b.j] - N;
                const double w = wa * P.logs[b.i] * P.logs[b.j];
                th += kernel::theta_eval(kp, static_cast<double>(y)) * w;
                if (std::fabs(y) < eps) {
                    st += w;
                    ++row.count;
                }
            }
        }
        row.theta_weight = th * P.logs[i1];
        row.strict_weight = st * P.logs[i1];
    });
    return core;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> d = {1};
    for (const auto& pp : arith::factorize(n)) {
        const std::size_t base = d.size();
        u64 q = 1;
        for (unsigned e = 1; e <= pp.e; ++e) {
            q *= pp.p;
            for (std::size_t i = 0; i < base; ++i) d.push_back(d[i] * q);
        }
    }
    return d;
}

void check_X_range(u64 X, u64 lo, const char* what) {
    if (X < lo || X > 10'000'000) throw ArgumentError(std::string(what) + ": X out of range");
}

}  // namespace

double SearchParams::X() const { return std::pow(N / 4.0, 1.0 / c); }

void SearchParams::validate() const {
    if (!(N > 0.0) || !std::isfinite(N)) throw ArgumentError("N must be positive and finite");
    if (!(c >= 1.0 && c < kMaxC)) throw ArgumentError("c must lie in [1, 5363/3900)");
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw ArgumentError("epsilon must be finite and non-negative");
}

double formula_epsilon(double N) {
    if (!(N > std::exp(1.0))) throw ArgumentError("formula_epsilon: need N > e");
    const double theta0 = 0.5 - std::numbers::e * std::log(2.0) / 4.0;
    return std::pow(std::log(std::log(N)), 6) / std::pow(std::log(N), theta0);
}

long double residual(const std::array<u64, 5>& p, double c, double N) {
    long double s = 0;
    for (u64 q : p) s += std::pow(static_cast<long double>(q), static_cast<long double>(c));
    return std::fabs(s - static_cast<long double>(N));
}

SearchResult search_solutions(const SearchParams& params, const SearchBudget& budget) {
    params.validate();
    SearchResult out;
    out.X = params.X();
    if (params.N > std::exp(1.0)) out.formula_epsilon = formula_epsilon(params.N);
    if (params.range == PrimeRange::dyadic) {
        out.p_lo = std::floor(out.X / 2);
        out.p_hi = std::floor(out.X);
    } else {
        out.p_lo = 1;
        out.p_hi = std::floor(std::pow(params.N + params.epsilon, 1.0 / params.c));
    }
    const PrimePowers P = prime_powers(static_cast<u64>(out.p_lo), static_cast<u64>(out.p_hi), params.c);
    out.primes = P.p.size();
    const double eps = params.epsilon, tol = window_slack(params.N);

    // Admissible p1 with certificates.
    std::vector<std::size_t> first;
    std::vector<std::optional<arith::LinnikCertificate>> certs(P.p.size());
    const arith::FactorizationCache cache(std::max<u64>(static_cast<u64>(out.p_hi), 2));
    for (std::size_t i = 0; i < P.p.size(); ++i) {
        certs[i] = arith::linnik_certificate(P.p[i], cache);
        if (!params.require_linnik || certs[i]) first.push_back(i);
    }
    out.first_primes = first.size();
    if (eps <= 0.0 || P.p.empty()) {
        out.complete = true;
        return out;
    }
    const auto pairs = pair_table(P.pd, params.N + eps + tol);
    out.pairs = pairs.size();

    // Lookups per p1, fixed before the search so the budget cut is deterministic.
    std::vector<u64> need(first.size(), 0);
    for (std::size_t k = 0; k < first.size(); ++k) {
        const double v1 = P.pd[first[k]];
        for (std::size_t i2 = 0; i2 < P.p.size() && v1 + P.pd[i2] <= params.N + eps + tol; ++i2) {
            for (std::size_t i3 = 0; i3 < P.p.size() && v1 + P.pd[i2] + P.pd[i3] <= params.N + eps + tol; ++i3) {
                ++need[k];
            }
        }
    }
    std::size_t take = 0;
    for (; take < first.size(); ++take) {
        out.lookups_needed += need[take];
        if (out.lookups + need[take] > budget.max_lookups) break;
        out.lookups += need[take];
    }
    for (std::size_t k = take + 1; k < first.size(); ++k) out.lookups_needed += need[k];
    out.first_primes_searched = take;
    out.complete = take == first.size();

    std::vector<std::vector<Quintuple>> found(take);
    const long double N = params.N;
    parallel_for(take, budget.threads, [&](std::size_t k) {
        const std::size_t i1 = first[k];
        for (std::size_t i2 = 0; i2 < P.p.size(); ++i2) {
            for (std::size_t i3 = 0; i3 < P.p.size(); ++i3) {
                const double rest = params.N - P.pd[i1] - P.pd[i2] - P.pd[i3];
                if (rest + eps + tol < 0.0) break;
                const auto [b0, b1] = pair_window(pairs, rest - eps - tol, rest + eps + tol);
                for (std::size_t q = b0; q < b1; ++q) {
                    const PairEntry& b = pairs[q];
                    const long double y = std::fabs(P.pw[i1] + P.pw[i2] + P.pw[i3] + P.pw[b.i] + P.pw[b.j] - N);
                    if (y < eps) {
                        Quintuple s;
                        s.p = {P.p[i1], P.p[i2], P.p[i3], P.p[b.i], P.p[b.j]};
                        s.certificate = certs[i1];
                        s.residual = y;
                        found[k].push_back(s);
                    }
                }
            }
        }
        std::sort(found[k].begin(), found[k].end(), [](const Quintuple& a, const Quintuple& b) { return a.p < b.p; });
    });
    for (auto& block : found) {
        for (auto& s : block) out.solutions.push_back(std::move(s));
    }
    return out;
}

void write_solutions_csv(std::ostream& os, std::span<const Quintuple> solutions) {
    os << "p1,p2,p3,p4,p5,x,y,residual\n";
    for (const Quintuple& s : solutions) {
        for (u64 p : s.p) os << p << ',';
        if (s.certificate) {
            os << s.certificate->x << ',' << s.certificate->y << ',';
        } else {
            os << ",,";
        }
        os << io::fmt(s.residual) << '\n';
    }
}

GammaReport gamma_report(const SearchParams& params, unsigned threads) {
    const GammaCore core = gamma_core(params, threads);
    GammaReport r;
    r.X = core.X;
    r.primes = core.rows.size();
    ExactSum g, g0;
    for (const auto& row : core.rows) {
        const auto rv = static_cast<long long>(arith::r_count(row.p1 - 1));
        g.add(rv, row.strict_weight);
        g0.add(rv, row.theta_weight);
        r.count += row.count;
    }
    r.gamma = g.value();
    r.gamma0 = g0.value();
    if (!(g0.raw() >= 0) || !(g.raw() >= g0.raw())) throw StateError("gamma: expected Gamma >= Gamma_0 >= 0");
    return r;
}

double gamma_count(const SearchParams& params, bool weighted) {
    const GammaReport r = gamma_report(params);
    return weighted ? r.gamma : static_cast<double>(r.count);
}

GammaSplit split_gamma(const SearchParams& params, double D, unsigned threads) {
    if (!(D > 0.0) || !std::isfinite(D)) throw ArgumentError("split_gamma: D must be positive");
    const GammaCore core = gamma_core(params, threads);
    GammaSplit s;
    s.D = D;
    const double X = core.X;
    ExactSum g0;
    std::array<ExactSum, 3> parts;
    for (const auto& row : core.rows) {
        g0.add(static_cast<long long>(arith::r_count(row.p1 - 1)), row.theta_weight);
        std::array<long long, 3> chi{};
        for (u64 d : divisors(row.p1 - 1)) {
            const auto dd = static_cast<double>(d);
            const int k = dd <= D ? 0 : (dd < X / D ? 1 : 2);
            chi[static_cast<std::size_t>(k)] += arith::chi4(d);
        }
        for (std::size_t k = 0; k < 3; ++k) parts[k].add(chi[k], row.theta_weight);
    }
    s.gamma0 = g0.value();
    for (std::size_t k = 0; k < 3; ++k) s.parts[k] = parts[k].value();
    s.exact = (parts[0].raw() + parts[1].raw() + parts[2].raw()) * 4 == g0.raw();
    return s;
}

u64 count_quaternary(double N0, double c, double epsilon, unsigned threads) {
    if (!(N0 > 0.0) || !std::isfinite(N0)) throw ArgumentError("count_quaternary: N0 must be positive");
    if (!(c >= 1.0 && c < 3.0)) throw ArgumentError("count_quaternary: c must lie in [1, 3)");
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw ArgumentError("count_quaternary: bad epsilon");
    if (epsilon == 0.0) return 0;
    const auto top = static_cast<u64>(std::floor(std::pow(N0 + epsilon, 1.0 / c)));
    const PrimePowers P = prime_powers(1, top, c);
    const double tol = window_slack(N0);
    const auto pairs = pair_table(P.pd, N0 + epsilon + tol);
    const long double N = N0;
    const std::size_t blocks = 64;
    std::vector<u64> counts(blocks, 0);
    parallel_for(blocks, threads, [&](std::size_t blk) {
        for (std::size_t k = blk; k < pairs.size(); k += blocks) {
            const PairEntry& a = pairs[k];
            const double rest = N0 - a.sum;
            const auto [b0, b1] = pair_window(pairs, rest - epsilon - tol, rest + epsilon + tol);
            for (std::size_t q = b0; q < b1; ++q) {
                const PairEntry& b = pairs[q];
                const long double y = P.pw[a.i] + P.pw[a.j] + P.pw[b.i] + P.pw[b.j] - N;
                if (std::fabs(y) < epsilon) ++counts[blk];
            }
        }
    });
    u64 total = 0;
    for (u64 v : counts) total += v;
    return total;
}

double singular_series(u64 P_cut) {
    if (P_cut > 10'000'000) throw ResourceError("singular_series: cut above 10^7");
    long double prod = 1;
    if (P_cut >= 3) {
        for (u64 p : arith::sieve_primes(2, P_cut).primes) {
            const long double pp = p;
            prod *= 1 + arith::chi4(p) / (pp * (pp - 1));
        }
    }
    return static_cast<double>(prod);
}

double char_phi_partial(double D) {
    if (!(D >= 0.0) || !std::isfinite(D)) throw ArgumentError("char_phi_partial: D must be non-negative");
    if (D > 1e8) throw ResourceError("char_phi_partial: D above 10^8");
    const auto n = static_cast<u64>(std::floor(D));
    if (n == 0) return 0.0;
    // Euler phi sieve.
    std::vector<u64> phi(n + 1);
    for (u64 i = 0; i <= n; ++i) phi[i] = i;
    for (u64 i = 2; i <= n; ++i) {
        if (phi[i] != i) continue;
        for (u64 j = i; j <= n; j += i) phi[j] -= phi[j] / i;
    }
    long double s = 0;
    for (u64 d = 1; d <= n; d += 2) s += static_cast<long double>(arith::chi4(d)) / phi[d];
    return static_cast<double>(s);
}

LinnikCensus linnik_census(u64 X, u64 product_cut) {
    check_X_range(X, 3, "linnik_census");
    LinnikCensus c;
    c.X = X;
    c.product_cut = product_cut;
    const auto primes = arith::sieve_primes(0, X);
    const arith::FactorizationCache cache(X);
    for (u64 p : primes.primes) {
        const u64 r = arith::r_count(p - 1, cache);
        c.r_sum += r;
        if (r > 0) ++c.linnik_count;
    }
    c.prime_count = primes.primes.size();
    c.product = singular_series(product_cut);
    c.main_term = std::numbers::pi * c.product * static_cast<double>(X) / std::log(static_cast<double>(X));
    c.ratio = static_cast<double>(c.r_sum) / c.main_term;
    return c;
}

WindowStat hooley_stats(u64 X, double omega) {
    check_X_range(X, 2, "hooley_stats");
    if (!(omega >= 0.0) || !std::isfinite(omega)) throw ArgumentError("hooley_stats: omega must be non-negative");
    WindowStat w;
    w.X = X;
    w.omega = omega;
    const double L = std::log(static_cast<double>(X)), r = std::sqrt(static_cast<double>(X));
    w.lo = r * std::pow(L, -omega);
    w.hi = r * std::pow(L, omega);
    const auto primes = arith::sieve_primes(0, X);
    w.prime_count = primes.primes.size();
    std::vector<std::uint8_t> is_p(X + 1, 0);
    for (u64 p : primes.primes) is_p[p] = 1;
    std::vector<std::int32_t> chi(X + 1, 0);
    std::vector<std::uint8_t> hit(X + 1, 0);
    // Integers strictly inside the open window, and at most X - 1.
    const u64 d0 = static_cast<u64>(std::floor(w.lo)) + 1;
    const double top = std::ceil(w.hi) - 1;
    const u64 d1 = top < 1 ? 0 : std::min<u64>(X - 1, static_cast<u64>(top));
    for (u64 d = d0; d <= d1; ++d) {
        if (!(static_cast<double>(d) > w.lo && static_cast<double>(d) < w.hi)) continue;
        const int ch = arith::chi4(d);
        for (u64 n = d; n + 1 <= X; n += d) {
            if (!is_p[n + 1]) continue;
            chi[n + 1] += ch;
            hit[n + 1] = 1;
        }
    }
    long double sq = 0;
    for (u64 p : primes.primes) {
        sq += static_cast<long double>(chi[p]) * chi[p];
        w.f_count += hit[p];
    }
    w.sum_sq = static_cast<double>(sq);
    return w;
}

std::string census_json(const LinnikCensus& c) {
    nlohmann::ordered_json j;
    j["X"] = c.X;
    j["r_sum"] = c.r_sum;
    j["prime_count"] = c.prime_count;
    j["linnik_count"] = c.linnik_count;
    j["product_cut"] = c.product_cut;
    j["product"] = c.product;
    j["main_term"] = c.main_term;
    j["ratio"] = c.ratio;
    return j.dump(2);
}

std::string window_json(const WindowStat& w) {
    nlohmann::ordered_json j;
    j["X"] = w.X;
    j["omega"] = w.omega;
    j["window_lo"] = w.lo;
    j["window_hi"] = w.hi;
    j["sum_sq"] = w.sum_sq;
    j["f_count"] = w.f_count;
    j["prime_count"] = w.prime_count;
    j["f_ratio"] = w.prime_count ? static_cast<double>(w.f_count) / static_cast<double>(w.prime_count) : 0.0;
    return j.dump(2);
}

std::string gamma_json(const GammaReport& r, const GammaSplit* split) {
    nlohmann::ordered_json j;
    j["X"] = r.X;
    j["primes"] = r.primes;
    j["tuples"] = "ordered";
    j["count"] = r.count;
    j["gamma"] = r.gamma;
    j["gamma0"] = r.gamma0;
    if (split) {
        j["D"] = split->D;
        j["gamma1"] = split->parts[0];
        j["gamma2"] = split->parts[1];
        j["gamma3"] = split->parts[2];
        j["partition_exact"] = split->exact;
    }
    return j.dump(2);
}

std::string search_json(const SearchResult& s) {
    nlohmann::ordered_json j;
    j["X"] = s.X;
    j["p_lo"] = s.p_lo;
    j["p_hi"] = s.p_hi;
    j["tuples"] = "ordered";
    j["primes"] = s.primes;
    j["first_primes"] = s.first_primes;
    j["pairs"] = s.pairs;
    j["lookups"] = s.lookups;
    j["lookups_needed"] = s.lookups_needed;
    j["first_primes_searched"] = s.first_primes_searched;
    j["complete"] = s.complete;
    j["solutions"] = s.solutions.size();
    j["formula_epsilon"] = s.formula_epsilon;
    return j.dump(2);
}

}  // namespace quinary::counting
