#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsesum/bound_check.hpp"
#include "sparsesum/expsums.hpp"
#include "sparsesum/intpoly.hpp"
#include "sparsesum/modular.hpp"
#include "sparsesum/parallel.hpp"
#include "sparsesum/prime_context.hpp"
#include "sparsesum/random.hpp"

namespace sparsesum {

enum class ReferenceLaw { Semicircle, GaussianUnit };

inline const char* to_string(ReferenceLaw law) {
    return law == ReferenceLaw::Semicircle ? "SEMICIRCLE" : "GAUSSIAN_UNIT";
}

struct Histogram {
    std::vector<double> edges;  // bins + 1 edges
    std::vector<u64> counts;
};

struct EmpiricalDistribution {
    std::vector<double> samples;
    Histogram histogram;
    double ks_distance = 0.0;
    ReferenceLaw reference = ReferenceLaw::Semicircle;
};

/// CDF of the semicircle law (1/2pi) sqrt(4 - x^2) on [-2, 2].
inline double semicircle_cdf(double x) {
    if (x <= -2.0) {
        return 0.0;
    }
    if (x >= 2.0) {
        return 1.0;
    }
    return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * std::numbers::pi) + std::asin(x / 2.0) / std::numbers::pi;
}

inline double gaussian_cdf(double x, double mean = 0.0, double sd = 1.0) {
    return 0.5 * std::erfc(-(x - mean) / (sd * std::numbers::sqrt2));
}

/// Rayleigh CDF 1 - exp(-x^2 / (2 sigma^2)).
inline double rayleigh_cdf(double x, double sigma) {
    return x <= 0.0 ? 0.0 : -std::expm1(-x * x / (2.0 * sigma * sigma));
}

/// sup |F_n - F| for a continuous reference CDF.
inline double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) {
        throw std::invalid_argument("ks_distance: empty sample");
    }
    std::sort(samples.begin(), samples.end());
    const auto n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return std::clamp(d, 0.0, 1.0);
}

/// Two-sample statistic sup |F_a - F_b|.
inline double ks_distance(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("ks_distance: empty sample");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const auto na = static_cast<double>(a.size());
    const auto nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) {
            ++i;
        }
        while (j < b.size() && b[j] == x) {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

/// Equal-width bins over [lo, hi]; values outside land in the end bins so
/// the counts always add up to the sample size.
inline Histogram make_histogram(const std::vector<double>& samples, double lo, double hi, std::size_t bins) {
    if (bins == 0 || !(hi > lo)) {
        throw std::invalid_argument("make_histogram: need bins > 0 and hi > lo");
    }
    Histogram h;
    h.edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) {
        h.edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
    }
    h.counts.assign(bins, 0);
    for (double x : samples) {
        const double pos = (x - lo) / (hi - lo) * static_cast<double>(bins);
        const auto idx = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(bins - 1)));
        ++h.counts[idx];
    }
    return h;
}

/// T_3(a; p) = sum over all x in F_p of e_p(a1 x + a2 x^3). The sum is real
/// (x -> -x conjugates it); an imaginary part of 1e-8 p or more throws.
inline double cubic_sum(const PrimeContext& ctx, u64 a1, u64 a2, const Executor& ex = Executor::serial()) {
    const u64 p = ctx.p();
    if (a1 >= p || a2 >= p) {
        throw std::invalid_argument("cubic_sum: coefficients must be residues mod p");
    }
    if (a2 == 0) {
        throw std::invalid_argument("cubic_sum: a2 must be nonzero");
    }
    const auto roots = ctx.unit_roots();
    const complex v = ex.reduce<complex>(p, [&](std::size_t begin, std::size_t end) {
        complex acc{};
        for (u64 x = begin; x < end; ++x) {
            const u64 cube = mul_mod(mul_mod(x, x, p), x, p);
            acc += roots[(mul_mod(a1, x, p) + mul_mod(a2, cube, p)) % p];
        }
        return acc;
    });
    if (std::abs(v.imag()) >= 1e-8 * static_cast<double>(p)) {
        throw std::logic_error("cubic_sum: imaginary part " + std::to_string(v.imag()) + " is not negligible");
    }
    return v.real();
}

enum class SamplingMode { Random, Exhaustive };

inline constexpr u64 kExhaustivePrimeCap = 151;
inline constexpr std::size_t kSemicircleBins = 40;

struct SemicircleRow {
    u64 a1 = 0;
    u64 a2 = 0;
    double value = 0.0;  // T_3 / sqrt(p)
};

struct SemicircleExperiment {
    u64 p = 0;
    u64 seed = 0;
    SamplingMode mode = SamplingMode::Random;
    std::vector<SemicircleRow> rows;
    EmpiricalDistribution distribution;
    BoundCheck support_hard;       // |x| <= 3
    BoundCheck support_monitored;  // |x| <= 2
};

/// Samples T_3(a; p)/sqrt(p) over seeded (a1, a2) in F_p x F_p^*, or over
/// all of them, and measures the KS distance to the semicircle law.
inline SemicircleExperiment semicircle_experiment(const PrimeContext& ctx, std::size_t n_samples, u64 seed,
                                                  SamplingMode mode, const Executor& ex = Executor::serial()) {
    const u64 p = ctx.p();
    SemicircleExperiment out;
    out.p = p;
    out.seed = seed;
    out.mode = mode;
    if (mode == SamplingMode::Random) {
        if (n_samples < 100) {
            throw std::invalid_argument("semicircle_experiment: need at least 100 samples");
        }
        SplitMix64 rng(seed);
        out.rows.resize(n_samples);
        for (auto& row : out.rows) {
            row.a1 = rng.below(p);
            row.a2 = 1 + rng.below(p - 1);
        }
    } else {
        if (p > kExhaustivePrimeCap) {
            throw std::invalid_argument("semicircle_experiment: exhaustive mode needs p <= " +
                                        std::to_string(kExhaustivePrimeCap));
        }
        for (u64 a1 = 0; a1 < p; ++a1) {
            for (u64 a2 = 1; a2 < p; ++a2) {
                out.rows.push_back({a1, a2, 0.0});
            }
        }
    }
    const double scale = std::sqrt(static_cast<double>(p));
    const std::vector<double> values = ex.map<double>(out.rows.size(), [&](std::size_t i) {
        return cubic_sum(ctx, out.rows[i].a1, out.rows[i].a2) / scale;
    });
    double widest = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out.rows[i].value = values[i];
        widest = std::max(widest, std::abs(values[i]));
    }
    out.distribution.samples = values;
    out.distribution.histogram = make_histogram(values, -2.0, 2.0, kSemicircleBins);
    out.distribution.ks_distance = ks_distance(values, semicircle_cdf);
    out.distribution.reference = ReferenceLaw::Semicircle;
    out.support_hard = hard_check("cubic_sum_normalized_cap", widest, 3.0);
    out.support_monitored = monitored_check("semicircle_support", widest, 2.0 + 1e-6, 1.0);
    return out;
}

struct HorizontalRow {
    u64 p = 0;
    complex value{};  // S / sqrt(p)
    double abs() const { return std::abs(value); }
};

struct HorizontalSummary {
    std::size_t rows = 0;
    double mean_re = 0.0;
    double mean_im = 0.0;
    double var_re = 0.0;
    double var_im = 0.0;
    double mean_abs2 = 0.0;
    double ks_re_gaussian = 0.0;   // real parts against N(mean_re, var_re)
    double ks_abs_rayleigh = 0.0;  // moduli against Rayleigh with sigma^2 = mean_abs2 / 2
};

struct HorizontalScan {
    std::vector<i64> h;
    std::vector<i64> a;
    std::vector<HorizontalRow> rows;
    std::vector<u64> skipped;  // primes where some h_i is 0 or +-1
    HorizontalSummary summary;
    BoundCheck trivial_bound;  // max |S| / (p - 1) <= 1 over all rows
};

inline constexpr u64 kHorizontalPrimeCap = 1000000;

namespace detail {
inline double mean_of(const std::vector<double>& v) {
    return v.empty() ? 0.0 : pairwise_sum(v) / static_cast<double>(v.size());
}
inline double variance_of(const std::vector<double>& v, double mean) {
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        sq[i] = (v[i] - mean) * (v[i] - mean);
    }
    return v.empty() ? 0.0 : pairwise_sum(sq) / static_cast<double>(v.size());
}
}  // namespace detail

/// For every prime in [P_min, P_max]: S(a mod p, h mod p; p)/sqrt(p) with fixed
/// integer bases h. Statistics are reported, not asserted.
inline HorizontalScan horizontal_scan(const std::vector<i64>& h, const std::vector<i64>& a, u64 P_min, u64 P_max,
                                      const Executor& ex = Executor::serial()) {
    if (h.empty() || h.size() != a.size()) {
        throw std::invalid_argument("horizontal_scan: h and a must be nonempty and of equal length");
    }
    for (i64 hi : h) {
        if (hi == 0 || hi == 1 || hi == -1) {
            throw std::invalid_argument("horizontal_scan: bases must avoid 0 and +-1");
        }
    }
    if (P_max > kHorizontalPrimeCap) {
        throw std::invalid_argument("horizontal_scan: P_max exceeds " + std::to_string(kHorizontalPrimeCap));
    }
    HorizontalScan out;
    out.h = h;
    out.a = a;
    std::vector<u64> primes;
    for (u64 p : primes_up_to(P_max)) {
        if (p < std::max<u64>(P_min, 3)) {
            continue;
        }
        bool degenerate = false;
        for (i64 hi : h) {
            const u64 r = reduce_mod(hi, p);
            degenerate = degenerate || r == 0 || r == 1 || r == p - 1;
        }
        (degenerate ? out.skipped : primes).push_back(p);
    }
    out.rows = ex.map<HorizontalRow>(primes.size(), [&](std::size_t i) {
        const u64 p = primes[i];
        const PrimeContext ctx(p);
        std::vector<u64> hr, ar;
        for (std::size_t k = 0; k < h.size(); ++k) {
            hr.push_back(reduce_mod(h[k], p));
            ar.push_back(reduce_mod(a[k], p));
        }
        const ComplexValue s = sum_S(ctx, ar, hr);
        return HorizontalRow{p, s.value() / std::sqrt(static_cast<double>(p))};
    });
    std::vector<double> re, im, moduli, abs2;
    double worst = 0.0;
    for (const auto& row : out.rows) {
        re.push_back(row.value.real());
        im.push_back(row.value.imag());
        moduli.push_back(row.abs());
        abs2.push_back(std::norm(row.value));
        const double p = static_cast<double>(row.p);
        worst = std::max(worst, row.abs() * std::sqrt(p) / (p - 1.0));
    }
    out.trivial_bound = hard_check("horizontal_trivial_bound", worst, 1.0);
    auto& s = out.summary;
    s.rows = out.rows.size();
    if (!out.rows.empty()) {
        s.mean_re = detail::mean_of(re);
        s.mean_im = detail::mean_of(im);
        s.var_re = detail::variance_of(re, s.mean_re);
        s.var_im = detail::variance_of(im, s.mean_im);
        s.mean_abs2 = detail::mean_of(abs2);
        if (s.var_re > 0.0) {
            const double sd = std::sqrt(s.var_re);
            const double mean = s.mean_re;
            s.ks_re_gaussian = ks_distance(re, [=](double x) { return gaussian_cdf(x, mean, sd); });
        }
        if (s.mean_abs2 > 0.0) {
            const double sigma = std::sqrt(s.mean_abs2 / 2.0);
            s.ks_abs_rayleigh = ks_distance(moduli, [=](double x) { return rayleigh_cdf(x, sigma); });
        }
    }
    return out;
}

struct ExponentRow {
    u64 p = 0;
    u64 r1 = 0;
    u64 r2 = 0;
    double alpha = 0.0;
};

struct ExponentGrowthScan {
    i64 h1 = 0;
    i64 h2 = 0;
    bool independent_small_powers = true;  // h1^i != h2^j for 1 <= i, j <= 10
    std::vector<ExponentRow> rows;
    std::vector<u64> skipped;
    double median_alpha = 0.0;
    std::vector<double> deciles;  // 10%, 20%, ..., 90%
    bool median_in_band = false;  // median alpha in [0.35, 0.65]
};

/// True when no h1^i equals h2^j for 1 <= i, j <= bound.
inline bool small_powers_independent(i64 h1, i64 h2, unsigned bound = 10) {
    for (unsigned i = 1; i <= bound; ++i) {
        const BigInt x = big_pow(BigInt(h1), i);
        for (unsigned j = 1; j <= bound; ++j) {
            if (x == big_pow(BigInt(h2), j)) {
                return false;
            }
        }
    }
    return true;
}

/// alpha_p = log(max minimal exponent) / log p for h1, h2 reduced mod p.
inline ExponentGrowthScan exponent_growth_scan(i64 h1, i64 h2, u64 P_max, const Executor& ex = Executor::serial()) {
    if (P_max > kHorizontalPrimeCap) {
        throw std::invalid_argument("exponent_growth_scan: P_max exceeds " + std::to_string(kHorizontalPrimeCap));
    }
    ExponentGrowthScan out;
    out.h1 = h1;
    out.h2 = h2;
    out.independent_small_powers = small_powers_independent(h1, h2);
    std::vector<u64> primes;
    for (u64 p : primes_up_to(P_max)) {
        if (p < 3) {
            continue;
        }
        const u64 r1 = reduce_mod(h1, p);
        const u64 r2 = reduce_mod(h2, p);
        const bool degenerate = r1 == 0 || r1 == 1 || r1 == p - 1 || r2 == 0 || r2 == 1 || r2 == p - 1;
        (degenerate ? out.skipped : primes).push_back(p);
    }
    out.rows = ex.map<ExponentRow>(primes.size(), [&](std::size_t i) {
        const u64 p = primes[i];
        const PrimeContext ctx(p);
        const std::vector<u64> h{reduce_mod(h1, p), reduce_mod(h2, p)};
        const ExponentRepresentation rep = minimal_exponent_representation(ctx, h);
        return ExponentRow{p, rep.r[0], rep.r[1], rep.alpha};
    });
    if (!out.rows.empty()) {
        std::vector<double> alpha;
        for (const auto& row : out.rows) {
            alpha.push_back(row.alpha);
        }
        std::sort(alpha.begin(), alpha.end());
        auto quantile = [&](double q) {
            const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(alpha.size())));
            return alpha[std::clamp<std::size_t>(rank, 1, alpha.size()) - 1];
        };
        out.median_alpha = quantile(0.5);
        for (int k = 1; k <= 9; ++k) {
            out.deciles.push_back(quantile(k / 10.0));
        }
        out.median_in_band = out.median_alpha >= 0.35 && out.median_alpha <= 0.65;
    }
    return out;
}

}  // namespace sparsesum
