// Command-line entry point. Each subcommand wraps one library operation and
// writes CSV, JSON or plain text to --out (default stdout).
//
// A config file given by --config holds flat key=value lines; keys are long
// option names of the chosen subcommand. Its values are spliced in ahead of
// the command-line flags, and every option keeps its last value, so flags
// override the file.

#include <cmath>
#include <fstream>
#include <iostream>
#include <locale>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "quinary/arith.hpp"
#include "quinary/counting.hpp"
#include "quinary/decomposition.hpp"
#include "quinary/errors.hpp"
#include "quinary/exponents.hpp"
#include "quinary/expsum.hpp"
#include "quinary/io.hpp"
#include "quinary/kernel.hpp"

namespace {

using namespace quinary;
using arith::u64;

constexpr int kExitOk = 0;
constexpr int kExitArgument = 2;
constexpr int kExitResource = 3;
constexpr int kExitNumeric = 4;

struct Common {
    std::string out;
    std::string format;  // empty until parsed; then the subcommand default applies
    unsigned threads = 1;
};

/// Output sink: the --out file when given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw ArgumentError("cannot open output file " + path);
            file_.imbue(std::locale::classic());
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

u64 to_u64(double v, const char* name) {
    if (!(v >= 0) || !std::isfinite(v) || v > 1.8e19) throw ArgumentError(std::string(name) + " must be a non-negative integer");
    const double r = std::floor(v);
    if (r != v) throw ArgumentError(std::string(name) + " must be an integer");
    return static_cast<u64>(r);
}

arith::PrimeTable primes_upto(double X, unsigned threads) {
    arith::SieveOptions opt;
    opt.threads = threads;
    return arith::sieve_primes(0, to_u64(std::floor(X), "X"), opt);
}

std::vector<double> linspace(double a, double b, int n) {
    if (n < 1) throw ArgumentError("points must be positive");
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return v;
}

std::vector<double> logspace(double a, double b, int n) {
    std::vector<double> v = linspace(std::log(a), std::log(b), n);
    for (double& x : v) x = std::exp(x);
    return v;
}

void require_format(const Common& c, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed) {
        if (c.format == f) return;
    }
    throw ArgumentError("format " + c.format + " is not available for this command");
}

/// Reads key=value lines; blank lines and lines starting with '#' are skipped.
std::vector<std::string> config_args(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot read config file " + path);
    std::vector<std::string> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ArgumentError(path + ":" + std::to_string(number) + ": expected key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty()) throw ArgumentError(path + ":" + std::to_string(number) + ": empty key");
        out.push_back("--" + key + "=" + value);
    }
    return out;
}

/// argv with the config entries inserted right after the subcommand name.
std::vector<std::string> expand_config(int argc, char** argv, const std::vector<std::string>& commands) {
    std::vector<std::string> args(argv, argv + argc);
    std::optional<std::string> path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<long>(i));
            break;
        }
    }
    if (!path) return args;
    const std::vector<std::string> extra = config_args(*path);
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (std::find(commands.begin(), commands.end(), args[i]) != commands.end()) {
            args.insert(args.begin() + static_cast<long>(i) + 1, extra.begin(), extra.end());
            return args;
        }
    }
    throw ArgumentError("--config needs a subcommand");
}

void add_common(CLI::App* sub, Common& c, const char* default_format, bool threads) {
    sub->add_option("--out,-o", c.out, "Output file (default stdout)");
    sub->add_option("--format", c.format, std::string("Output format (default ") + default_format + ")")
        ->check(CLI::IsMember({"csv", "json", "text"}));
    sub->parse_complete_callback([&c, default_format] {
        if (c.format.empty()) c.format = default_format;
    });
    if (threads) sub->add_option("--threads", c.threads, "Worker thread cap")->check(CLI::Range(1u, 256u));
}

}  // namespace

int main(int argc, char** argv) {
    std::cout.imbue(std::locale::classic());
    CLI::App app{"Prime solutions of p1^c + ... + p5^c close to N with p1 - 1 a sum of two squares: "
                 "arithmetic tables, the smoothing kernel, exponential sums over primes, the decomposition "
                 "of the von Mangoldt sum, the exponent bookkeeping behind the admissible range of c, and "
                 "desk-scale counting."};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.add_option("--config", "Flat key=value file of option defaults; flags override it");

    Common common;

    // sieve
    double sieve_lo = 0, sieve_hi = 0;
    auto* sieve = app.add_subcommand("sieve", "Primes in (lo, hi] by a segmented sieve, one per line.");
    sieve->add_option("--lo", sieve_lo, "Exclusive lower end")->default_val(0);
    sieve->add_option("--hi", sieve_hi, "Inclusive upper end")->required();
    add_common(sieve, common, "text", true);

    // linnik
    double linnik_X = 0;
    auto* linnik = app.add_subcommand("linnik", "Primes p <= X with p = x^2 + y^2 + 1, as CSV p,x,y with x >= y >= 0.");
    linnik->add_option("--X", linnik_X, "Upper end")->required();
    add_common(linnik, common, "csv", false);

    // kernel
    double kernel_eps = 0, kernel_X = 0;
    int kernel_k = 0, kernel_points = 2001;
    bool dump_theta = false, dump_fourier = false;
    auto* kernel = app.add_subcommand(
        "kernel",
        "Smoothing kernel theta: 1 on |y| <= a - delta, 0 beyond a + delta, with a = 9 eps / 10, delta = eps / 10 "
        "and smoothness k = ceil(log X). "
        "Dumps (y, theta) or (x, Theta, bound) where Theta is its Fourier transform and bound the minimum of the "
        "three envelope branches.");
    kernel->add_option("--epsilon,--eps", kernel_eps, "Tolerance eps")->required();
    kernel->add_option("--X", kernel_X, "Scale X")->required();
    kernel->add_option("--k", kernel_k, "Smoothness order (default ceil(log X))");
    kernel->add_option("--points", kernel_points, "Grid size")->default_val(2001);
    kernel->add_flag("--dump-theta", dump_theta, "CSV of (y, theta(y)) across the support");
    kernel->add_flag("--dump-fourier", dump_fourier, "CSV of (x, Theta(x), bound(x)) on a log grid");
    add_common(kernel, common, "csv", false);

    // expsum
    double es_X = 0, es_c = 0, es_t0 = 0, es_t1 = 0;
    int es_points = 1;
    std::string es_sum = "S";
    auto* expsum = app.add_subcommand(
        "expsum",
        "Exponential sums over (X/2, X]: S(t) = sum_p log p e(t p^c), A(t) = sum_n e(t n^c), and the integral "
        "I(t) = int e(t u^c) du. CSV t,re,im,abs on a uniform t grid.");
    expsum->add_option("--X", es_X, "Scale X")->required();
    expsum->add_option("--c", es_c, "Exponent c")->required();
    expsum->add_option("--t", es_t0, "First frequency")->default_val(0);
    expsum->add_option("--t-max", es_t1, "Last frequency (default --t)");
    expsum->add_option("--points", es_points, "Grid size")->default_val(1);
    expsum->add_option("--sum", es_sum, "Which sum")->check(CLI::IsMember({"S", "A", "I"}))->default_val("S");
    add_common(expsum, common, "csv", true);

    // moments
    double mo_X = 0, mo_c = 0, mo_n = 0;
    auto* moments = app.add_subcommand(
        "moments",
        "Mean squares of S and I near t = 0 and of S over a unit interval [n, n + 1], with their majorants "
        "X^{2-c} log^3 X, X^{2-c} log X and X log^3 X and the ratios. JSON.");
    moments->add_option("--X", mo_X, "Scale X")->required();
    moments->add_option("--c", mo_c, "Exponent c")->required();
    moments->add_option("--n", mo_n, "Left end of the unit interval")->default_val(0);
    add_common(moments, common, "json", true);

    // decompose
    double de_X = 0, de_c = 1.2, de_t = 0;
    int de_Q = 0;
    std::string de_identity = "heath-brown", de_bounds;
    auto* decompose = app.add_subcommand(
        "decompose",
        "Split sum_{X/2 < n <= X} Lambda(n) e(t n^c) into Type I pieces (one smooth variable) and Type II pieces "
        "(two rough variables in a balanced range). Prints the piece inventory, or with --bounds the per-piece "
        "values against the trivial bound and the Cauchy and shifted-sum majorants. JSON.");
    decompose->add_option("--X", de_X, "Scale X")->required();
    decompose->add_option("--identity", de_identity, "Combinatorial identity")
        ->check(CLI::IsMember({"heath-brown", "vaughan"}))
        ->default_val("heath-brown");
    decompose->add_option("--bounds", de_bounds, "Report piece sizes of one kind")->check(CLI::IsMember({"typeI", "typeII"}));
    decompose->add_option("--c", de_c, "Exponent c for --bounds")->default_val(1.2);
    decompose->add_option("--t", de_t, "Frequency for --bounds (needs Delta <= |t| <= H)");
    decompose->add_option("--Q", de_Q, "Shift length for the Type II majorant (0 picks X^{857/3900})")->default_val(0);
    add_common(decompose, common, "json", false);

    // exponents
    std::string ex_c;
    auto* exponents_cmd = app.add_subcommand(
        "exponents",
        "Exact exponent bookkeeping: the Type I exponent from the exponent pair (2/40, 33/40), the chain of "
        "savings leading to the final balance, and the Type II term check. Prints label, exact rational and "
        "decimal per step, or a JSON trace.");
    exponents_cmd->add_option("--c", ex_c, "Evaluate the chain at this rational c (e.g. 5363/3900)");
    add_common(exponents_cmd, common, "text", false);

    // derive-c0
    auto* derive = app.add_subcommand(
        "derive-c0",
        "Solve for the largest admissible c from the Type I balance and from the final balance, exactly, and "
        "check that the two agree.");
    add_common(derive, common, "text", false);

    // search
    double se_N = 0, se_c = 0, se_eps = 0, se_lookups = std::ldexp(1.0, 32);
    bool se_linnik = false, se_exhaustive = false;
    auto* search = app.add_subcommand(
        "search",
        "Ordered prime 5-tuples with |p1^c + ... + p5^c - N| < eps, optionally with p1 = x^2 + y^2 + 1, by a "
        "meet-in-the-middle search over pair sums. Primes lie in (X/2, X] with X = (N/4)^{1/c}, or in "
        "(1, N^{1/c}] with --exhaustive. A search cut by the lookup budget is reported, never silently "
        "truncated. CSV p1,...,p5,x,y,residual or a JSON summary.");
    search->add_option("--N", se_N, "Target N")->required();
    search->add_option("--c", se_c, "Exponent c in [1, 5363/3900)")->required();
    search->add_option("--eps,--epsilon", se_eps, "Tolerance")->required();
    search->add_flag("--linnik", se_linnik, "Require p1 - 1 to be a sum of two squares");
    search->add_flag("--exhaustive", se_exhaustive, "Search all primes up to N^{1/c}");
    search->add_option("--max-lookups", se_lookups, "Budget of (p1, p2, p3) lookups");
    add_common(search, common, "csv", true);

    // census
    double ce_X = 0, ce_cut = 1e6;
    auto* census = app.add_subcommand(
        "census",
        "Sum of r(p - 1) over primes p <= X against pi prod_{p > 2} (1 + chi4(p) / (p (p - 1))) X / log X, "
        "with the count of primes p for which p - 1 is a sum of two squares. JSON.");
    census->add_option("--X", ce_X, "Upper end")->required();
    census->add_option("--product-cut", ce_cut, "Last prime in the Euler product")->default_val(1e6);
    add_common(census, common, "json", false);

    // hooley
    double ho_X = 0, ho_omega = 1;
    auto* hooley = app.add_subcommand(
        "hooley",
        "Divisors of p - 1 in the window (sqrt X (log X)^-omega, sqrt X (log X)^omega): the sum over p <= X of "
        "|sum chi4(d)|^2 and the number of p with such a divisor. JSON.");
    hooley->add_option("--X", ho_X, "Upper end")->required();
    hooley->add_option("--omega", ho_omega, "Window width exponent")->default_val(1);
    add_common(hooley, common, "json", false);

    // gamma
    double ga_N = 0, ga_c = 0, ga_eps = 0;
    std::optional<double> ga_D;
    auto* gamma = app.add_subcommand(
        "gamma",
        "Weighted solution counts over primes in (X/2, X]: Gamma with the sharp indicator, Gamma_0 with the "
        "smoothing kernel, both weighted by r(p1 - 1) prod log p_i, and with --D the split of Gamma_0 by the "
        "divisor ranges d <= D, D < d < X/D and the rest. JSON.");
    gamma->add_option("--N", ga_N, "Target N")->required();
    gamma->add_option("--c", ga_c, "Exponent c in [1, 5363/3900)")->required();
    gamma->add_option("--eps,--epsilon", ga_eps, "Tolerance")->required();
    gamma->add_option("--D", ga_D, "Divisor split point");
    add_common(gamma, common, "json", true);

    const std::vector<std::string> names = {"sieve",     "linnik", "kernel", "expsum", "moments", "decompose",
                                            "exponents", "derive-c0", "search", "census", "hooley", "gamma"};
    try {
        std::vector<std::string> args = expand_config(argc, argv, names);
        std::reverse(args.begin(), args.end());
        args.pop_back();
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitArgument;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitArgument;
    }

    try {
        Sink sink(common.out);
        std::ostream& os = sink.os();

        if (*sieve) {
            require_format(common, {"text"});
            arith::SieveOptions opt;
            opt.threads = common.threads;
            arith::write_prime_table(os, arith::sieve_primes(to_u64(sieve_lo, "lo"), to_u64(sieve_hi, "hi"), opt));
        } else if (*linnik) {
            require_format(common, {"csv"});
            const u64 X = to_u64(std::floor(linnik_X), "X");
            const arith::FactorizationCache cache(std::max<u64>(X, 2));
            std::vector<arith::LinnikCertificate> certs;
            for (const u64 p : arith::sieve_primes(0, X).primes) {
                if (auto cert = arith::linnik_certificate(p, cache)) certs.push_back(*cert);
            }
            arith::write_certificates_csv(os, certs);
        } else if (*kernel) {
            kernel::KernelParams kp = kernel::make_kernel(kernel_eps, kernel_X);
            if (kernel_k > 0) kp.k = kernel_k;
            kp.validate();
            if (dump_theta || dump_fourier) {
                require_format(common, {"csv"});
                if (dump_theta && dump_fourier) throw ArgumentError("choose one of --dump-theta and --dump-fourier");
                if (dump_theta) {
                    const double w = 1.25 * kp.support();
                    kernel::write_theta_csv(os, kp, linspace(-w, w, kernel_points));
                } else {
                    kernel::write_fourier_csv(os, kp, logspace(0.01 / kp.a, 100.0 * kp.k / kp.delta, kernel_points));
                }
            } else {
                require_format(common, {"json", "csv"});
                nlohmann::json j = {{"a", kp.a},           {"delta", kp.delta},         {"k", kp.k},
                                    {"plateau", kp.plateau()}, {"support", kp.support()}};
                os << j.dump(2) << '\n';
            }
        } else if (*expsum) {
            require_format(common, {"csv"});
            const double t1 = expsum->count("--t-max") ? es_t1 : es_t0;
            const std::vector<double> ts = linspace(es_t0, t1, es_points);
            std::vector<Complex> values;
            values.reserve(ts.size());
            if (es_sum == "S") {
                const arith::PrimeTable table = primes_upto(es_X, common.threads);
                for (const double t : ts) values.push_back(expsum::eval_S(expsum::full_query(es_X, es_c, t), table));
            } else if (es_sum == "A") {
                for (const double t : ts) values.push_back(expsum::eval_A(es_X, es_c, t));
            } else {
                for (const double t : ts) values.push_back(expsum::eval_I(es_X, es_c, t));
            }
            expsum::write_sum_csv(os, ts, values);
        } else if (*moments) {
            require_format(common, {"json"});
            const arith::PrimeTable table = primes_upto(mo_X, common.threads);
            os << expsum::moment_json(expsum::moment_report(table, mo_X, mo_c, mo_n)) << '\n';
        } else if (*decompose) {
            require_format(common, {"json"});
            const auto id = de_identity == "vaughan" ? decomposition::Identity::vaughan : decomposition::Identity::heath_brown;
            const decomposition::Decomposition d = decomposition::decompose(de_X, id);
            if (de_bounds.empty()) {
                os << decomposition::inventory_json(d) << '\n';
            } else if (de_bounds == "typeI") {
                os << decomposition::bound_json(decomposition::bound_report_typeI(d, de_c, de_t)) << '\n';
            } else {
                os << decomposition::bound_json(decomposition::bound_report_typeII(d, de_c, de_t, de_Q)) << '\n';
            }
        } else if (*exponents_cmd) {
            require_format(common, {"text", "json"});
            if (!ex_c.empty()) {
                const auto chain = exponents::chain_exponents(Rational::parse(ex_c));
                if (common.format == "json") {
                    nlohmann::json arr = nlohmann::json::array();
                    for (const auto& s : chain) {
                        arr.push_back({{"label", s.label},
                                       {"expression", s.expr.str()},
                                       {"exact", s.value.str()},
                                       {"decimal", s.value.decimal(12)},
                                       {"dominant", s.dominant}});
                    }
                    os << arr.dump(2) << '\n';
                } else {
                    for (const auto& s : chain) {
                        os << s.label << ' ' << s.expr.str() << " = " << s.value.str() << " = " << s.value.decimal(12)
                           << (s.dominant ? "" : " (absorbed)") << '\n';
                    }
                }
            } else {
                const auto trace = exponents::derivation_trace();
                if (common.format == "json") {
                    os << exponents::trace_json(trace) << '\n';
                } else {
                    for (const auto& s : trace) os << s.label << ' ' << s.value.str() << ' ' << s.value.decimal(12) << '\n';
                }
            }
        } else if (*derive) {
            require_format(common, {"text", "json"});
            const Rational a = exponents::solve_c0_typeI(), b = exponents::solve_c0_final();
            const bool agree = a == b;
            if (common.format == "json") {
                nlohmann::json j = {{"typeI_balance", a.str()}, {"final_balance", b.str()},
                                    {"decimal", a.decimal(12)}, {"agree", agree}};
                os << j.dump(2) << '\n';
            } else {
                os << "type I balance: " << a.str() << " = " << a.decimal(12) << '\n';
                os << "final balance:  " << b.str() << " = " << b.decimal(12) << '\n';
                os << (agree ? "agree" : "DISAGREE") << '\n';
            }
            if (!agree) return kExitNumeric;
        } else if (*search) {
            require_format(common, {"csv", "json"});
            counting::SearchParams p{se_N, se_c, se_eps, se_linnik,
                                     se_exhaustive ? counting::PrimeRange::exhaustive : counting::PrimeRange::dyadic};
            counting::SearchBudget budget;
            budget.max_lookups = to_u64(std::floor(se_lookups), "max-lookups");
            budget.threads = common.threads;
            const counting::SearchResult r = counting::search_solutions(p, budget);
            if (common.format == "json") {
                os << counting::search_json(r) << '\n';
            } else {
                counting::write_solutions_csv(os, r.solutions);
            }
            if (!r.complete) {
                std::cerr << "search incomplete: " << r.first_primes_searched << " of " << r.first_primes
                          << " first primes searched within the lookup budget\n";
            }
        } else if (*census) {
            require_format(common, {"json"});
            os << counting::census_json(counting::linnik_census(to_u64(std::floor(ce_X), "X"), to_u64(ce_cut, "product-cut")))
               << '\n';
        } else if (*hooley) {
            require_format(common, {"json"});
            os << counting::window_json(counting::hooley_stats(to_u64(std::floor(ho_X), "X"), ho_omega)) << '\n';
        } else if (*gamma) {
            require_format(common, {"json"});
            const counting::SearchParams p{ga_N, ga_c, ga_eps};
            const counting::GammaReport g = counting::gamma_report(p, common.threads);
            if (ga_D) {
                const counting::GammaSplit s = counting::split_gamma(p, *ga_D, common.threads);
                os << counting::gamma_json(g, &s) << '\n';
            } else {
                os << counting::gamma_json(g, nullptr) << '\n';
            }
        }
        os.flush();
        if (!os) throw ResourceError("write failed");
    } catch (const ArgumentError& e) {
        std::cerr << "argument error: " << e.what() << '\n';
        return kExitArgument;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::bad_alloc&) {
        std::cerr << "resource error: out of memory\n";
        return kExitResource;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const StateError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitOk;
}
