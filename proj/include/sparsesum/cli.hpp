#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsesum/common_zeros.hpp"
#include "sparsesum/distribution.hpp"
#include "sparsesum/expsums.hpp"
#include "sparsesum/mahler.hpp"
#include "sparsesum/moments.hpp"
#include "sparsesum/serialize.hpp"
#include "sparsesum/subgroup_counts.hpp"
#include "sparsesum/verify.hpp"

namespace sparsesum::cli {

enum class Format { Json, Csv };

struct RunConfig {
    unsigned threads = 0;
    bool json = false;
    bool csv = false;
    std::string out_path;
    u64 p = 0;
    std::vector<u64> a;
    std::vector<u64> h;
    std::vector<u64> r;
    u64 b = 0;
    u64 e = 0;
    u64 f = 0;
    u64 H = 0;
    u64 K = 0;
    u64 n = 0;
    int k = 1;
    u64 d = 0;
    u64 V = 0;
    std::vector<u64> V_set;
    unsigned r_exp = 0;
    unsigned s_exp = 0;
    u64 P_min = 3;
    u64 P_max = 0;
    u64 seed = 42;
    std::size_t samples = 10000;
    std::string mode = "random";
    std::vector<i64> hz_h;
    std::vector<i64> hz_a;
    i64 h1 = 0;
    i64 h2 = 0;
    double ceiling = kDefaultRatioCeiling;
    double tol = kDefaultMahlerTolerance;
    bool mahler = false;
    std::string profile = "desk";
    std::string ratio_csv;
    bool timings = false;

    Format format() const { return csv ? Format::Csv : Format::Json; }
};

/// A HARD check failed; the command's output has already been written.
struct HardFailure : std::runtime_error {
    explicit HardFailure(const BoundCheck& c) : std::runtime_error(c.name), check(c) {}
    BoundCheck check;
};

namespace detail {

inline void require_hard(const BoundCheck& c) {
    if (c.kind == CheckKind::Hard && !c.passed) {
        throw HardFailure(c);
    }
}

inline std::string csv_field(const json& v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            s += (i ? ";" : "") + csv_field(v[i]);
        }
        return s;
    }
    return v.dump();
}

inline void flatten(const json& j, const std::string& prefix, std::vector<std::string>& keys,
                    std::vector<std::string>& values) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it->is_object()) {
            flatten(*it, key, keys, values);
        } else if (it->is_array() && !it->empty() && (*it)[0].is_object()) {
            for (std::size_t i = 0; i < it->size(); ++i) {
                flatten((*it)[i], key + "." + std::to_string(i), keys, values);
            }
        } else {
            keys.push_back(key);
            values.push_back(csv_field(*it));
        }
    }
}

/// One header row and one value row: the flat projection of a JSON object.
inline void write_flat_csv(std::ostream& os, const json& j) {
    std::vector<std::string> keys, values;
    flatten(j, "", keys, values);
    for (std::size_t i = 0; i < keys.size(); ++i) {
        os << (i ? "," : "") << keys[i];
    }
    os << '\n';
    for (std::size_t i = 0; i < values.size(); ++i) {
        os << (i ? "," : "") << values[i];
    }
    os << '\n';
}

inline void emit(std::ostream& out, const RunConfig& cfg, const json& j) {
    if (cfg.format() == Format::Csv) {
        write_flat_csv(out, j);
    } else {
        out << j.dump(2) << '\n';
    }
}

/// Writes rows either to --out or to the output stream.
inline void emit_rows(std::ostream& out, const RunConfig& cfg, const std::function<void(std::ostream&)>& writer) {
    if (cfg.out_path.empty()) {
        writer(out);
        return;
    }
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) {
        throw std::invalid_argument("cannot open " + cfg.out_path + " for writing");
    }
    writer(file);
}

inline json checks_json(std::initializer_list<BoundCheck> checks) {
    json arr = json::array();
    for (const auto& c : checks) {
        arr.push_back(to_json(c));
    }
    return arr;
}

inline unsigned exponent_arg(u64 v, const char* name) {
    if (v > 100000) {
        throw std::invalid_argument(std::string(name) + " is too large for exact polynomial work");
    }
    return static_cast<unsigned>(v);
}

}  // namespace detail

inline void cmd_sum_s(const RunConfig& cfg, const Executor& ex, std::ostream& out) {
    const PrimeContext ctx(cfg.p);
    const ComplexValue v = sum_S(ctx, cfg.a, cfg.h, ex);
    detail::emit(out, cfg, json{{"p", cfg.p}, {"a", cfg.a}, {"h", cfg.h}, {"S", to_json(v)}});
}

inline void cmd_sum_t(const RunConfig& cfg, const Executor& ex, std::ostream& out) {
    const PrimeContext ctx(cfg.p);
    const ComplexValue v = sum_T(ctx, cfg.a, cfg.r, ex);
    const BoundCheck weil = weil_check(ctx, cfg.a, cfg.r, ex);
    detail::emit(out, cfg, json{{"p", cfg.p}, {"a", cfg.a}, {"r", cfg.r}, {"T", to_json(v)}, {"weil", to_json(weil)}});
    detail::require_hard(weil);
}

inline void cmd_binomial(const RunConfig& cfg, const Executor& ex, std::ostream& out) {
    const PrimeContext ctx(cfg.p);
    if (cfg.a.size() != 1) {
        throw std::invalid_argument("binomial takes a single --a");
    }
    const u64 a = cfg.a[0];
    const ComplexValue v = binomial_sum(ctx, a, cfg.b, cfg.e, cfg.f, ex);
    json j{{"p", cfg.p}, {"a", a}, {"b", cfg.b}, {"e", cfg.e}, {"f", cfg.f}, {"T", to_json(v)}};
    if (a != 0 && cfg.b != 0) {
        const BoundCheck c = cochrane_pinner_check(ctx, a, cfg.b, cfg.e, cfg.f, ex);
        j["cochrane_pinner"] = to_json(c);
        detail::emit(out, cfg, j);
        detail::require_hard(c);
        return;
    }
    detail::emit(out, cfg, j);
}

inline CoefficientPair coefficient_pair(const RunConfig& cfg) {
    if (cfg.a.size() != 2) {
        throw std::invalid_argument("--a must list exactly two coefficients");
    }
    return {cfg.a[0], cfg.a[1]};
}

inline void cmd_avg_u(const RunConfig& cfg, const Executor& ex, std::ostream& out) {
    const PrimeContext ctx(cfg.p);
    const ComplexValue u = average_U(ctx, coefficient_pair(cfg), cfg.H, cfg.K, ex);
    detail::emit(out, cfg, json{{"p", cfg.p}, {"a", cfg.a}, {"H", cfg.H}, {"K", cfg.K}, {"U", to_json(u)}});
}

inline void cmd_avg_v(const RunConfig& cfg, const Executor& ex, std::ostream& out) {
    const PrimeContext ctx(cfg.p);
    const CoefficientPair a = coefficient_pair(cfg);
    json j{{"p", cfg.p}, {"a", cfg.a}, {"H", cfg.H}, {"K", cfg.K}};
    if (cfg.n > 0) {
        const TheoremRatios t = theorem_ratios(ctx, a, cfg.H, cfg.K, cfg.n, cfg.ceiling, ex);
        j["V"] = t.V;
        j["U"] = to_json(t.U);
        j["n"] = cfg.n;
        j["checks"] = detail::checks_json({t.checks[0], t.checks[1], t.checks[2]});
    } else {
        j["V"] = average_V(ctx, a, cfg.H, cfg.K, ex);
    }
    detail::emit(out, cfg, j);
}

inline void cmd_w_sum(const RunConfig& cfg, const Executor& ex, std::ostream& out) {
    const PrimeContext ctx(cfg.p);
    if (cfg.a.size() != 1) {
        throw std::invalid_argument("w-sum takes a single --a");
    }
    const BoundCheck c = w_bound_monitor(ctx, cfg.a[0], cfg.K, cfg.H, cfg.k, cfg.ceiling, ex);
    detail::emit(out, cfg,
                 json{{"p", cfg.p}, {"a", cfg.a[0]}, {"K", cfg.K}, {"H", cfg.H}, {"k", cfg.k}, {"W", c.observed},
                      {"monitor", to_json(c)}});
}

inline void cmd_congr_count(const RunConfig& cfg, const Executor& ex, std::ostream& out) {
    std::vector<u64> values = cfg.V_set;
    json extra;
    if (values.empty()) {
        if (cfg.d == 0 || cfg.V == 0) {
            throw std::invalid_argument("congr-count needs --V-set, or --d with --V");
        }
        const ExponentSet set = build_V_set(cfg.p, cfg.d, cfg.V, cfg.ceiling);
        values = set.values;
        extra = to_json(set.growth);
    }
    const CongruenceCount count = count_congruence_system(cfg.p, values, cfg.H, cfg.K, ex);
    const BoundCheck c = congruence_bound_check(count);
    json j = to_json(count, c);
    if (!extra.is_null()) {
        j["v_max_growth"] = extra;
    }
    detail::emit(out, cfg, j);
    detail::require_hard(c);
}

inline void cmd_residue_count(const RunConfig& cfg, const Executor&, std::ostream& out) {
    if (cfg.d == 0 && cfg.e == 0) {
        throw std::invalid_argument("residue-count needs --d or --e");
    }
    json j{{"p", cfg.p}, {"H", cfg.H}};
    if (cfg.d != 0) {
        j["d"] = cfg.d;
        j["I"] = count_power_residues_in_interval(cfg.p, cfg.d, cfg.H);
        const auto m = power_residue_monitors(cfg.p, cfg.d, cfg.H, cfg.ceiling);
        j["I_monitors"] = detail::checks_json({m[0], m[1], m[2]});
    }
    if (cfg.e != 0) {
        j["e"] = cfg.e;
        j["J"] = count_ratio_power_residues(cfg.p, cfg.e, cfg.H);
        const auto m = ratio_residue_monitors(cfg.p, cfg.e, cfg.H, cfg.ceiling);
        j["J_monitors"] = detail::checks_json({m[0], m[1], m[2]});
    }
    detail::emit(out, cfg, j);
}

inline void cmd_zeros(const RunConfig& cfg, const Executor&, std::ostream& out) {
    const ZeroCertificate z = count_common_zeros(cfg.p, cfg.r_exp, cfg.s_exp);
    detail::emit(out, cfg, to_json(z));
    detail::require_hard(hard_check("divisibility", z.divisibility_ok ? 0.0 : 1.0, 0.0));
}

inline void cmd_resultant(const RunConfig& cfg, const Executor&, std::ostream& out) {
    const ResultantCertificate c = compute_R(cfg.r_exp, cfg.s_exp, cfg.ceiling);
    json j = to_json(c);
    if (cfg.mahler) {
        for (unsigned l : {cfg.r_exp, cfg.s_exp}) {
            const MahlerMeasure m = mahler_measure_report(build_F(l), cfg.tol);
            j["mahler_F" + std::to_string(l)] =
                json{{"measure", m.value}, {"log_measure", m.log_value}, {"height", m.height()},
                     {"aberth_log_measure", m.aberth_log_value}};
        }
    }
    detail::emit(out, cfg, j);
}

inline void cmd_scan_primes(const RunConfig& cfg, const Executor& ex, std::ostream& out) {
    const ExceptionalPrimes e = exceptional_primes(cfg.r_exp, cfg.s_exp, cfg.P_max, cfg.ceiling, ex);
    detail::emit(out, cfg, to_json(e));
    detail::require_hard(hard_check("exceptional_prime_cross_check", static_cast<double>(e.violations.size()), 0.0));
}

inline void cmd_moments(const RunConfig& cfg, const Executor& ex, std::ostream& out) {
    const PrimeContext ctx(cfg.p);
    const MomentReport m = moment_report(ctx, cfg.r_exp, cfg.s_exp, ex);
    if (cfg.format() == Format::Csv) {
        // One row per check rather than one wide row.
        detail::emit_rows(out, cfg, [&](std::ostream& os) { write_checks_csv(os, m.checks); });
    } else {
        detail::emit(out, cfg, to_json(m));
    }
    for (const auto& c : m.checks) {
        detail::require_hard(c);
    }
}

inline void cmd_semicircle(const RunConfig& cfg, const Executor& ex, std::ostream& out) {
    const PrimeContext ctx(cfg.p);
    SamplingMode mode = SamplingMode::Random;
    if (cfg.mode == "exhaustive") {
        mode = SamplingMode::Exhaustive;
    } else if (cfg.mode != "random") {
        throw std::invalid_argument("--mode must be random or exhaustive");
    }
    const SemicircleExperiment e = semicircle_experiment(ctx, cfg.samples, cfg.seed, mode, ex);
    if (cfg.format() == Format::Csv) {
        detail::emit_rows(out, cfg, [&](std::ostream& os) { write_semicircle_csv(os, e); });
    } else {
        json j = to_json(e);
        json rows = json::array();
        for (const auto& row : e.rows) {
            rows.push_back(json{{"a1", row.a1}, {"a2", row.a2}, {"value_normalized", row.value}});
        }
        j["rows"] = rows;
        detail::emit_rows(out, cfg, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    }
    detail::require_hard(e.support_hard);
}

inline void cmd_horizontal(const RunConfig& cfg, const Executor& ex, std::ostream& out) {
    const HorizontalScan scan = horizontal_scan(cfg.hz_h, cfg.hz_a, cfg.P_min, cfg.P_max, ex);
    if (cfg.format() == Format::Csv) {
        detail::emit_rows(out, cfg, [&](std::ostream& os) { write_horizontal_csv(os, scan); });
    } else {
        json j = to_json(scan);
        json rows = json::array();
        for (const auto& row : scan.rows) {
            rows.push_back(json{{"p", row.p}, {"re", row.value.real()}, {"im", row.value.imag()}, {"abs", row.abs()}});
        }
        j["rows"] = rows;
        detail::emit_rows(out, cfg, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    }
    detail::require_hard(scan.trivial_bound);
}

inline void cmd_exp_growth(const RunConfig& cfg, const Executor& ex, std::ostream& out) {
    const ExponentGrowthScan scan = exponent_growth_scan(cfg.h1, cfg.h2, cfg.P_max, ex);
    if (cfg.format() == Format::Csv) {
        detail::emit_rows(out, cfg, [&](std::ostream& os) { write_exponent_csv(os, scan); });
    } else {
        json j = to_json(scan);
        json rows = json::array();
        for (const auto& row : scan.rows) {
            rows.push_back(json{{"p", row.p}, {"r1", row.r1}, {"r2", row.r2}, {"alpha", row.alpha}});
        }
        j["rows"] = rows;
        detail::emit_rows(out, cfg, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    }
}

inline void cmd_verify_all(const RunConfig& cfg, DeskProfile profile, const Executor& ex, std::ostream& out,
                           std::ostream& err) {
    if (cfg.profile != "desk") {
        throw std::invalid_argument("unknown profile '" + cfg.profile + "' (only 'desk' is defined)");
    }
    profile.seed = cfg.seed;
    profile.ratio_ceiling = cfg.ceiling;
    const VerifyReport report = verify_all(profile, ex);
    if (!cfg.ratio_csv.empty()) {
        std::ofstream file(cfg.ratio_csv, std::ios::binary);
        if (!file) {
            throw std::invalid_argument("cannot open " + cfg.ratio_csv + " for writing");
        }
        write_ratio_csv(file, report.ratio_table);
    }
    if (cfg.json) {
        json suites = json::array();
        for (const auto& s : report.suites) {
            json failing = json::array();
            for (const auto& c : s.failing) {
                failing.push_back(to_json(c));
            }
            suites.push_back(json{{"name", s.name}, {"passed", s.passed}, {"instances", s.instances},
                                  {"failures", s.failures}, {"summary", s.summary}, {"failing", failing}});
        }
        out << json{{"profile", cfg.profile}, {"passed", report.passed()}, {"suites", suites}}.dump(2) << '\n';
    } else if (cfg.csv) {
        out << "suite,passed,instances,failures,summary\n";
        for (const auto& s : report.suites) {
            out << s.name << ',' << (s.passed ? 1 : 0) << ',' << s.instances << ',' << s.failures << ",\"" << s.summary
                << "\"\n";
        }
    } else {
        out << "suite                               result  instances  failures  summary\n";
        for (const auto& s : report.suites) {
            std::ostringstream line;
            line << std::left << std::setw(36) << s.name << std::setw(8) << (s.passed ? "PASS" : "FAIL")
                 << std::right << std::setw(9) << s.instances << std::setw(10) << s.failures << "  " << s.summary;
            out << line.str() << '\n';
        }
        out << (report.passed() ? "all suites passed" : "some suites FAILED") << '\n';
    }
    if (cfg.timings) {
        for (const auto& s : report.suites) {
            err << s.name << ": " << format_double(s.seconds) << " s\n";
        }
    }
    for (const auto& s : report.suites) {
        for (const auto& c : s.failing) {
            detail::require_hard(c);
        }
        if (!s.passed) {
            BoundCheck c = hard_check(s.name, static_cast<double>(s.failures), 0.0);
            c.note = s.summary;
            throw HardFailure(c);
        }
    }
}

/// Parses argv and dispatches. Returns 0 on success, 1 when a HARD check
/// fails, 2 on a usage error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
               const DeskProfile& profile = {}) {
    CLI::App app{"Sparse exponential sums modulo primes"};
    app.require_subcommand(1);
    // Plain -h would clash with the horizontal scan's --h.
    app.set_help_flag("--help", "print help and exit");
    RunConfig cfg;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--threads", cfg.threads, "worker threads (default: EXPSUM_THREADS or hardware)");
        sub->add_flag("--json", cfg.json, "JSON output (default)");
        sub->add_flag("--csv", cfg.csv, "CSV output");
        sub->add_option("--out", cfg.out_path, "write rows to this file");
        sub->add_option("--ceiling", cfg.ceiling, "ratio ceiling for monitored checks");
    };
    auto prime = [&](CLI::App* sub) { sub->add_option("--p", cfg.p, "odd prime")->required(); };
    auto list_u = [&](CLI::App* sub, const char* name, std::vector<u64>& v, const char* help, bool required = true) {
        auto* opt = sub->add_option(name, v, help)->delimiter(',');
        if (required) {
            opt->required();
        }
    };
    auto exponents = [&](CLI::App* sub) {
        sub->add_option("--r", cfg.r_exp, "larger exponent r")->required();
        sub->add_option("--s", cfg.s_exp, "smaller exponent s")->required();
    };

    std::string chosen;
    std::vector<std::pair<CLI::App*, std::function<void(const Executor&)>>> commands;
    auto add = [&](const char* name, const char* help, const std::function<void(CLI::App*)>& setup,
                   std::function<void(const Executor&)> action) {
        CLI::App* sub = app.add_subcommand(name, help);
        common(sub);
        setup(sub);
        commands.emplace_back(sub, std::move(action));
    };

    add("sum-s", "S(a, h; p) over x in [1, p-1]",
        [&](CLI::App* s) {
            prime(s);
            list_u(s, "--a", cfg.a, "coefficients");
            list_u(s, "--h", cfg.h, "bases");
        },
        [&](const Executor& ex) { cmd_sum_s(cfg, ex, out); });
    add("sum-t", "T(a, r; p) over F_p^* with the Weil check",
        [&](CLI::App* s) {
            prime(s);
            list_u(s, "--a", cfg.a, "coefficients");
            list_u(s, "--r", cfg.r, "exponents");
        },
        [&](const Executor& ex) { cmd_sum_t(cfg, ex, out); });
    add("binomial", "binomial sum over F_p with the Cochrane-Pinner check",
        [&](CLI::App* s) {
            prime(s);
            list_u(s, "--a", cfg.a, "coefficient of x^e");
            s->add_option("--b", cfg.b, "coefficient of x^f")->required();
            s->add_option("--e", cfg.e, "first exponent")->required();
            s->add_option("--f", cfg.f, "second exponent")->required();
        },
        [&](const Executor& ex) { cmd_binomial(cfg, ex, out); });
    add("avg-u", "U over base pairs in [K+1, K+H]",
        [&](CLI::App* s) {
            prime(s);
            list_u(s, "--a", cfg.a, "two coefficients");
            s->add_option("--H", cfg.H, "interval length")->required();
            s->add_option("--K", cfg.K, "interval offset");
        },
        [&](const Executor& ex) { cmd_avg_u(cfg, ex, out); });
    add("avg-v", "V over base pairs in [K+1, K+H], optionally with the theorem ratios",
        [&](CLI::App* s) {
            prime(s);
            list_u(s, "--a", cfg.a, "two coefficients");
            s->add_option("--H", cfg.H, "interval length")->required();
            s->add_option("--K", cfg.K, "interval offset");
            s->add_option("--n", cfg.n, "parameter n of the small-H bound; enables the ratio checks");
        },
        [&](const Executor& ex) { cmd_avg_v(cfg, ex, out); });
    add("w-sum", "W_k over [K+1, K+H] with its monitor",
        [&](CLI::App* s) {
            prime(s);
            list_u(s, "--a", cfg.a, "coefficient");
            s->add_option("--H", cfg.H, "interval length")->required();
            s->add_option("--K", cfg.K, "interval offset");
            s->add_option("--k", cfg.k, "1 or 2")->check(CLI::Range(1, 2));
        },
        [&](const Executor& ex) { cmd_w_sum(cfg, ex, out); });
    add("congr-count", "triples (x, v1, v2) and the congruence bound",
        [&](CLI::App* s) {
            prime(s);
            list_u(s, "--V-set", cfg.V_set, "explicit exponent set", false);
            s->add_option("--d", cfg.d, "divisor of p-1 for the generated exponent set");
            s->add_option("--V", cfg.V, "size of the generated exponent set");
            s->add_option("--H", cfg.H, "interval length")->required();
            s->add_option("--K", cfg.K, "interval offset");
        },
        [&](const Executor& ex) { cmd_congr_count(cfg, ex, out); });
    add("residue-count", "power residues in [1, H] and ratio residues in [1, H]^2",
        [&](CLI::App* s) {
            prime(s);
            s->add_option("--d", cfg.d, "d-th power residues");
            s->add_option("--e", cfg.e, "e-th power residue ratios");
            s->add_option("--H", cfg.H, "interval length")->required();
        },
        [&](const Executor& ex) { cmd_residue_count(cfg, ex, out); });
    add("zeros", "common zeros of F_r and F_s mod p with certificate",
        [&](CLI::App* s) {
            prime(s);
            exponents(s);
        },
        [&](const Executor& ex) { cmd_zeros(cfg, ex, out); });
    add("resultant", "D_{r,s} and R_{r,s}",
        [&](CLI::App* s) {
            exponents(s);
            s->add_flag("--mahler", cfg.mahler, "also report Mahler measures of F_r and F_s");
            s->add_option("--tol", cfg.tol, "root-finder agreement tolerance");
        },
        [&](const Executor& ex) { cmd_resultant(cfg, ex, out); });
    add("scan-primes", "exceptional primes up to P_max",
        [&](CLI::App* s) {
            exponents(s);
            s->add_option("--P-max", cfg.P_max, "largest prime")->required();
        },
        [&](const Executor& ex) { cmd_scan_primes(cfg, ex, out); });
    add("moments", "cubic, low and Hölder moments",
        [&](CLI::App* s) {
            prime(s);
            exponents(s);
        },
        [&](const Executor& ex) { cmd_moments(cfg, ex, out); });
    add("semicircle", "normalized cubic sums against the semicircle law",
        [&](CLI::App* s) {
            prime(s);
            s->add_option("--samples", cfg.samples, "number of random samples");
            s->add_option("--seed", cfg.seed, "RNG seed");
            s->add_option("--mode", cfg.mode, "random or exhaustive");
        },
        [&](const Executor& ex) { cmd_semicircle(cfg, ex, out); });
    add("horizontal", "S(a, h; p)/sqrt(p) over primes for fixed integer bases",
        [&](CLI::App* s) {
            s->add_option("--h", cfg.hz_h, "integer bases")->delimiter(',')->required();
            s->add_option("--a", cfg.hz_a, "integer coefficients")->delimiter(',')->required();
            s->add_option("--P-min", cfg.P_min, "smallest prime");
            s->add_option("--P-max", cfg.P_max, "largest prime")->required();
        },
        [&](const Executor& ex) { cmd_horizontal(cfg, ex, out); });
    add("exp-growth", "size of the minimal exponents of (h1, h2) mod p",
        [&](CLI::App* s) {
            s->add_option("--h1", cfg.h1, "first base")->required();
            s->add_option("--h2", cfg.h2, "second base")->required();
            s->add_option("--P-max", cfg.P_max, "largest prime")->required();
        },
        [&](const Executor& ex) { cmd_exp_growth(cfg, ex, out); });
    add("verify-all", "run the verification suite",
        [&](CLI::App* s) {
            s->add_option("--profile", cfg.profile, "grid profile");
            s->add_option("--seed", cfg.seed, "RNG seed");
            s->add_option("--ratio-csv", cfg.ratio_csv, "write the theorem ratio table here");
            s->add_flag("--timings", cfg.timings, "print per-suite timings to stderr");
        },
        [&](const Executor& ex) { cmd_verify_all(cfg, profile, ex, out, err); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }
    if (cfg.json && cfg.csv) {
        err << "usage error: --json and --csv are mutually exclusive\n";
        return 2;
    }
    try {
        const Executor ex(Executor::resolve_threads(cfg.threads));
        for (const auto& [sub, action] : commands) {
            if (sub->parsed()) {
                action(ex);
            }
        }
    } catch (const HardFailure& f) {
        err << "HARD check failed: " << to_json(f.check).dump() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        BoundCheck c = hard_check("internal_invariant", 1.0, 0.0);
        c.note = e.what();
        err << "HARD check failed: " << to_json(c).dump() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace sparsesum::cli
