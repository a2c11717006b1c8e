#pragma once

// The desk-scale verification suite behind `expsum verify-all`. Every grid is
// a field of DeskProfile so the CLI can override it; the defaults are the
// acceptance grids.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "sparsesum/bound_check.hpp"
#include "sparsesum/common_zeros.hpp"
#include "sparsesum/distribution.hpp"
#include "sparsesum/expsums.hpp"
#include "sparsesum/moments.hpp"
#include "sparsesum/random.hpp"
#include "sparsesum/reference.hpp"
#include "sparsesum/serialize.hpp"
#include "sparsesum/subgroup_counts.hpp"

namespace sparsesum {

struct DeskProfile {
    std::vector<u64> moment_primes{7, 11, 13, 31};
    std::vector<std::array<unsigned, 2>> moment_pairs{{3, 2}, {5, 3}, {7, 5}, {13, 7}};
    unsigned gcd_r_max = 60;
    unsigned factor_r_max = 200;
    unsigned divisibility_r_max = 40;
    u64 divisibility_p_max = 1009;
    std::size_t weil_instances = 300;
    std::size_t cochrane_pinner_instances = 300;
    std::size_t congruence_instances = 100;
    u64 random_p_max = 10007;
    std::size_t u_oracle_instances = 20;
    u64 oracle_p_max = 503;
    u64 semicircle_p = 3001;
    std::size_t semicircle_samples = 10000;
    double semicircle_ks_max = 0.05;
    std::vector<u64> ratio_primes{1009, 2003, 4001, 8009};
    u64 ratio_n = 2;
    double ratio_ceiling = kDefaultRatioCeiling;
    std::vector<i64> horizontal_h{2, 5};
    std::vector<i64> horizontal_a{1, 1};
    u64 horizontal_p_max = 20000;
    u64 seed = 42;
};

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::size_t instances = 0;
    std::size_t failures = 0;
    double seconds = 0.0;
    std::string summary;
    std::vector<BoundCheck> failing;  // first few failing checks
};

struct VerifyReport {
    std::vector<SuiteResult> suites;
    std::vector<RatioRow> ratio_table;
    bool passed() const {
        return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
    }
};

namespace detail {

inline constexpr std::size_t kKeepFailures = 5;

inline void record(SuiteResult& suite, const BoundCheck& c) {
    ++suite.instances;
    if (!c.passed) {
        ++suite.failures;
        suite.passed = false;
        if (suite.failing.size() < kKeepFailures) {
            suite.failing.push_back(c);
        }
    }
}

inline void record(SuiteResult& suite, std::string name, bool ok, std::string note = {}) {
    BoundCheck c = hard_check(std::move(name), ok ? 0.0 : 1.0, 0.0);
    c.note = std::move(note);
    record(suite, c);
}

/// Runs body, timing it and turning an escaped exception into a failure.
inline SuiteResult run_suite(const std::string& name, const std::function<void(SuiteResult&)>& body) {
    SuiteResult suite;
    suite.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(suite);
    } catch (const std::exception& e) {
        suite.passed = false;
        ++suite.failures;
        suite.summary = std::string("exception: ") + e.what();
    }
    suite.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return suite;
}

inline std::vector<u64> odd_primes_between(u64 lo, u64 hi) {
    std::vector<u64> out;
    for (u64 p : primes_up_to(hi)) {
        if (p >= std::max<u64>(lo, 3)) {
            out.push_back(p);
        }
    }
    return out;
}

inline u64 pick(SplitMix64& rng, const std::vector<u64>& values) {
    return values[rng.below(values.size())];
}

inline u64 ceil_root(u64 p, double k) {
    return static_cast<u64>(std::ceil(std::pow(static_cast<double>(p), 1.0 / k) - 1e-12));
}

}  // namespace detail

inline SuiteResult verify_moments(const DeskProfile& profile, const Executor& ex) {
    return detail::run_suite("moment_identity_low_moments_holder", [&](SuiteResult& suite) {
        double worst = 0.0;
        for (u64 p : profile.moment_primes) {
            const PrimeContext ctx(p);
            for (const auto& [r, s] : profile.moment_pairs) {
                const MomentReport report = moment_report(ctx, r, s, ex);
                for (const auto& c : report.checks) {
                    detail::record(suite, c);
                }
                worst = std::max(worst, report.checks[0].observed);
            }
        }
        suite.summary = "max |M - Q| = " + format_double(worst);
    });
}

inline SuiteResult verify_gcd_lemma(const DeskProfile& profile, const Executor& ex) {
    return detail::run_suite("gcd_lemma", [&](SuiteResult& suite) {
        std::vector<std::array<unsigned, 2>> pairs;
        for (unsigned r = 3; r <= profile.gcd_r_max; ++r) {
            for (unsigned s = 2; s < r; ++s) {
                pairs.push_back({r, s});
            }
        }
        const std::vector<int> classes = ex.map<int>(pairs.size(), [&](std::size_t i) {
            const auto cls = gcd_lemma_class(poly_gcd_Q(build_F(pairs[i][0]), build_F(pairs[i][1])));
            return cls ? *cls : -1;
        });
        std::array<std::size_t, 4> tally{};
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const bool ok = classes[i] >= 0;
            detail::record(suite, "gcd_lemma(" + std::to_string(pairs[i][0]) + "," + std::to_string(pairs[i][1]) + ")",
                           ok);
            if (ok) {
                ++tally[static_cast<std::size_t>(classes[i])];
            }
        }
        suite.summary = "D class counts X:" + std::to_string(tally[0]) + " X(X+1):" + std::to_string(tally[1]) +
                        " X(X+1)Phi3:" + std::to_string(tally[2]) + " X(X+1)Phi3^2:" + std::to_string(tally[3]);
    });
}

inline SuiteResult verify_factor_structure(const DeskProfile& profile, const Executor& ex) {
    return detail::run_suite("factorization_structure", [&](SuiteResult& suite) {
        const unsigned count = profile.factor_r_max - 1;
        const std::vector<int> verdicts = ex.map<int>(count, [&](std::size_t i) {
            const unsigned r = static_cast<unsigned>(i) + 2;
            const FrStructure f = factor_structure(r);
            IntPoly rebuilt = polys::x() * f.G;
            for (unsigned k = 0; k < f.a; ++k) {
                rebuilt = rebuilt * polys::x_plus_1();
            }
            for (unsigned k = 0; k < f.b; ++k) {
                rebuilt = rebuilt * polys::cyclotomic3();
            }
            if (!(rebuilt == build_F(r))) {
                return 1;
            }
            return f.G.degree() >= 1 && !is_squarefree(f.G) ? 2 : 0;
        });
        for (unsigned i = 0; i < count; ++i) {
            const std::string r = std::to_string(i + 2);
            detail::record(suite, "factorization(" + r + ")", verdicts[i] == 0,
                           verdicts[i] == 1 ? "reconstruction mismatch" : verdicts[i] == 2 ? "G not squarefree" : "");
        }
        suite.summary = "r in [2, " + std::to_string(profile.factor_r_max) + "]";
    });
}

inline SuiteResult verify_divisibility(const DeskProfile& profile, const Executor& ex) {
    return detail::run_suite("divisibility_certificate", [&](SuiteResult& suite) {
        std::vector<std::array<unsigned, 2>> pairs;
        for (unsigned r = 3; r <= profile.divisibility_r_max; ++r) {
            for (unsigned s = 2; s < r; ++s) {
                pairs.push_back({r, s});
            }
        }
        const std::vector<u64> primes = primes_up_to(profile.divisibility_p_max);
        struct Outcome {
            std::size_t checked = 0;
            std::vector<std::string> failures;
        };
        const std::vector<Outcome> outcomes = ex.map<Outcome>(pairs.size(), [&](std::size_t i) {
            const auto [r, s] = pairs[i];
            const ResultantCertificate cert = compute_R(r, s);
            Outcome o;
            for (u64 p : primes) {
                const ZeroCertificate z = count_common_zeros(p, cert);
                ++o.checked;
                const bool unramified = cert.R % p != 0;
                if (!z.divisibility_ok || (unramified && z.N > 4)) {
                    o.failures.push_back("(p,r,s)=(" + std::to_string(p) + "," + std::to_string(r) + "," +
                                         std::to_string(s) + ") N=" + std::to_string(z.N));
                }
            }
            return o;
        });
        for (const auto& o : outcomes) {
            suite.instances += o.checked - o.failures.size();
            for (const auto& f : o.failures) {
                detail::record(suite, "divisibility" + f, false);
            }
        }
        suite.summary = std::to_string(pairs.size()) + " pairs x " + std::to_string(primes.size()) + " primes";
    });
}

inline SuiteResult verify_certificates() {
    return detail::run_suite("golden_certificates", [&](SuiteResult& suite) {
        detail::record(suite, "R_{3,2} = 2", compute_R(3, 2).R == 2);
        detail::record(suite, "R_{5,3} = 9", compute_R(5, 3).R == 9);
        detail::record(suite, "R_{7,5} = 25", compute_R(7, 5).R == 25);
        detail::record(suite, "N_7(7,5) = 2", count_common_zeros(7, 7, 5).N == 2);
        detail::record(suite, "N_11(5,3) = 0", count_common_zeros(11, 5, 3).N == 0);
    });
}

inline SuiteResult verify_weil(const DeskProfile& profile, const Executor& ex) {
    return detail::run_suite("weil", [&](SuiteResult& suite) {
        SplitMix64 rng(profile.seed);
        const std::vector<u64> primes = detail::odd_primes_between(29, profile.random_p_max);
        std::size_t skipped = 0;
        double worst = 0.0;
        while (suite.instances < profile.weil_instances) {
            const u64 p = detail::pick(rng, primes);
            const PrimeContext ctx(p);
            // (max r) sqrt(p) < p - 1 keeps the check informative.
            const auto r_cap = static_cast<u64>((static_cast<double>(p) - 1.0) / std::sqrt(static_cast<double>(p)));
            const std::size_t t = 2 + rng.below(2);
            std::vector<u64> r;
            while (r.size() < t) {
                const u64 v = 1 + rng.below(std::min(r_cap, p - 2));
                if (std::find(r.begin(), r.end(), v) == r.end()) {
                    r.push_back(v);
                }
            }
            std::vector<u64> a(t);
            for (auto& ai : a) {
                ai = 1 + rng.below(p - 1);
            }
            const BoundCheck c = weil_check(ctx, a, r, ex);
            if (c.skipped) {
                ++skipped;
                continue;
            }
            worst = std::max(worst, c.ratio);
            detail::record(suite, c);
        }
        suite.summary = "max ratio " + format_double(worst) + ", skipped " + std::to_string(skipped);
    });
}

inline SuiteResult verify_cochrane_pinner(const DeskProfile& profile, const Executor& ex) {
    return detail::run_suite("cochrane_pinner", [&](SuiteResult& suite) {
        SplitMix64 rng(profile.seed + 1);
        const std::vector<u64> primes = detail::odd_primes_between(3, profile.random_p_max);
        double worst = 0.0;
        while (suite.instances < profile.cochrane_pinner_instances) {
            const u64 p = detail::pick(rng, primes);
            const PrimeContext ctx(p);
            const u64 a = 1 + rng.below(p - 1);
            const u64 b = 1 + rng.below(p - 1);
            const u64 e = 1 + rng.below(2 * p);
            const u64 f = 1 + rng.below(2 * p);
            if (e == f) {
                continue;
            }
            const BoundCheck c = cochrane_pinner_check(ctx, a, b, e, f, ex);
            worst = std::max(worst, c.ratio);
            detail::record(suite, c);
        }
        suite.summary = "max ratio " + format_double(worst);
    });
}

inline SuiteResult verify_congruence(const DeskProfile& profile, const Executor& ex) {
    return detail::run_suite("congruence_lemma", [&](SuiteResult& suite) {
        SplitMix64 rng(profile.seed + 2);
        const std::vector<u64> primes = detail::odd_primes_between(11, 2003);
        double worst = 0.0;
        while (suite.instances < profile.congruence_instances) {
            const u64 p = detail::pick(rng, primes);
            std::vector<u64> divisors;
            for (u64 d = 1; d < p - 1; ++d) {
                if ((p - 1) % d == 0 && euler_phi((p - 1) / d) >= 2) {
                    divisors.push_back(d);
                }
            }
            const u64 d = detail::pick(rng, divisors);
            const u64 V = 2 + rng.below(std::min<u64>(5, euler_phi((p - 1) / d) - 1));
            const ExponentSet set = build_V_set(p, d, V);
            const u64 H = 1 + rng.below(p / 2);
            const u64 K = rng.below(p - H);
            const BoundCheck c = congruence_bound_check(p, set.values, H, K, ex);
            worst = std::max(worst, c.ratio);
            detail::record(suite, c);
        }
        suite.summary = "max ratio " + format_double(worst);
    });
}

inline SuiteResult verify_oracles(const DeskProfile& profile, const Executor& ex) {
    return detail::run_suite("oracle_equivalences", [&](SuiteResult& suite) {
        SplitMix64 rng(profile.seed + 3);
        const std::vector<u64> primes = detail::odd_primes_between(3, profile.oracle_p_max);
        const std::vector<u64> larger = detail::odd_primes_between(17, profile.oracle_p_max);
        for (std::size_t i = 0; i < profile.u_oracle_instances; ++i) {
            const u64 p = detail::pick(rng, larger);
            const PrimeContext ctx(p);
            const CoefficientPair a{1 + rng.below(p - 1), 1 + rng.below(p - 1)};
            const u64 H = 1 + rng.below(std::min<u64>(12, p - 1));
            const u64 K = rng.below(p - H);
            const complex fast = average_U(ctx, a, H, K, ex).value();
            const complex slow = reference::average_U_by_definition(ctx, a, H, K, ex).value();
            const double err = std::abs(fast - slow);
            detail::record(suite, hard_check("U_swapped_vs_definition", err, 1e-6 * std::max(1.0, std::abs(slow))));
            const int k = 1 + static_cast<int>(rng.below(2));
            const double w = double_sum_W(ctx, a[0], K, H, k, ex);
            const double w_ref = reference::double_sum_W_by_powers(ctx, a[0], K, H, k);
            detail::record(suite, hard_check("W_incremental_vs_powers", std::abs(w - w_ref),
                                             1e-9 * std::max(1.0, std::abs(w_ref))));
        }
        // Every exponent r in [1, p-2] for every prime p <= oracle_p_max.
        for (u64 p : primes) {
            const PrimeContext ctx(p);
            double worst = 0.0;
            for (u64 r = 1; r + 2 <= p; ++r) {
                const std::array<u64, 1> a{1 + r % (p - 1)};
                const std::array<u64, 1> rr{r};
                const complex via_g = sum_T(ctx, a, rr).value();
                const complex direct = sum_T_direct(ctx, a, rr).value();
                worst = std::max(worst, std::abs(via_g - direct));
            }
            detail::record(suite, hard_check("sum_T_dlog_vs_direct(p=" + std::to_string(p) + ")", worst,
                                             1e-9 * static_cast<double>(p)));
        }
    });
}

inline SuiteResult verify_semicircle(const DeskProfile& profile, const Executor& ex) {
    return detail::run_suite("semicircle", [&](SuiteResult& suite) {
        const PrimeContext ctx(profile.semicircle_p);
        const SemicircleExperiment e =
            semicircle_experiment(ctx, profile.semicircle_samples, profile.seed, SamplingMode::Random, ex);
        detail::record(suite, hard_check("semicircle_ks", e.distribution.ks_distance, profile.semicircle_ks_max,
                                         Relation::StrictlyLess));
        detail::record(suite, e.support_hard);
        suite.summary = "KS = " + format_double(e.distribution.ks_distance) + ", max |x| = " +
                        format_double(e.support_hard.observed);
    });
}

inline SuiteResult verify_theorem_ratios(const DeskProfile& profile, const Executor& ex,
                                         std::vector<RatioRow>& table) {
    return detail::run_suite("theorem_ratio_grid", [&](SuiteResult& suite) {
        double worst = 0.0;
        std::size_t skipped = 0;
        for (u64 p : profile.ratio_primes) {
            const PrimeContext ctx(p);
            for (double k : {3.0, 2.0, 1.5}) {
                const u64 H = detail::ceil_root(p, k);
                const TheoremRatios t = theorem_ratios(ctx, {1, 1}, H, 0, profile.ratio_n, profile.ratio_ceiling, ex);
                for (const auto& c : t.checks) {
                    table.push_back({p, H, 0, profile.ratio_n, c});
                    detail::record(suite, c);
                    if (c.skipped) {
                        ++skipped;
                    } else {
                        worst = std::max(worst, c.ratio);
                    }
                }
            }
        }
        suite.summary = "max ratio " + format_double(worst) + ", skipped " + std::to_string(skipped);
    });
}

inline SuiteResult verify_horizontal(const DeskProfile& profile, const Executor& ex) {
    return detail::run_suite("horizontal_scan", [&](SuiteResult& suite) {
        const HorizontalScan scan =
            horizontal_scan(profile.horizontal_h, profile.horizontal_a, 3, profile.horizontal_p_max, ex);
        detail::record(suite, scan.trivial_bound);
        suite.summary = std::to_string(scan.rows.size()) + " rows, mean |S|^2/p = " +
                        format_double(scan.summary.mean_abs2);
    });
}

inline VerifyReport verify_all(const DeskProfile& profile, const Executor& ex = Executor::serial()) {
    VerifyReport report;
    report.suites.push_back(verify_moments(profile, ex));
    report.suites.push_back(verify_gcd_lemma(profile, ex));
    report.suites.push_back(verify_factor_structure(profile, ex));
    report.suites.push_back(verify_divisibility(profile, ex));
    report.suites.push_back(verify_certificates());
    report.suites.push_back(verify_weil(profile, ex));
    report.suites.push_back(verify_cochrane_pinner(profile, ex));
    report.suites.push_back(verify_congruence(profile, ex));
    report.suites.push_back(verify_oracles(profile, ex));
    report.suites.push_back(verify_semicircle(profile, ex));
    report.suites.push_back(verify_theorem_ratios(profile, ex, report.ratio_table));
    report.suites.push_back(verify_horizontal(profile, ex));
    return report;
}

}  // namespace sparsesum
