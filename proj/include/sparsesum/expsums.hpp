#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsesum/bound_check.hpp"
#include "sparsesum/modular.hpp"
#include "sparsesum/parallel.hpp"
#include "sparsesum/prime_context.hpp"

namespace sparsesum {

/// Value of an evaluated exponential sum with a floating error estimate
/// (summands x machine epsilon x largest summand magnitude).
struct ComplexValue {
    double re = 0.0;
    double im = 0.0;
    double abs_error_bound = 0.0;
    std::size_t terms = 0;

    double abs() const { return std::hypot(re, im); }
    complex value() const { return {re, im}; }
};

using CoefficientPair = std::array<u64, 2>;

namespace detail {

inline ComplexValue make_value(complex v, std::size_t terms, double max_magnitude = 1.0) {
    ComplexValue out{v.real(), v.imag(),
                     static_cast<double>(terms) * std::numeric_limits<double>::epsilon() * max_magnitude, terms};
    // Trivial bound: every summand has modulus <= max_magnitude.
    if (out.abs() > static_cast<double>(terms) * max_magnitude * (1.0 + 1e-12) + out.abs_error_bound) {
        throw std::logic_error("exponential sum exceeds its trivial bound");
    }
    return out;
}

inline void require_residues(const PrimeContext& ctx, std::span<const u64> a, const char* what) {
    for (u64 v : a) {
        if (v >= ctx.p()) {
            throw std::invalid_argument(std::string(what) + ": coefficient " + std::to_string(v) +
                                        " is not a residue mod " + std::to_string(ctx.p()));
        }
    }
}

inline void require_interval(const PrimeContext& ctx, u64 H, u64 K, const char* what) {
    if (H < 1 || K + H > ctx.p() - 1) {
        throw std::invalid_argument(std::string(what) + ": interval [K+1, K+H] = [" + std::to_string(K + 1) +
                                    ", " + std::to_string(K + H) + "] must lie in [1, p-1]");
    }
}

/// sum_{x=1}^{p-1} e_p(sum_i a_i h_i^x) with no restriction on the bases.
inline complex exponential_function_sum(const PrimeContext& ctx, std::span<const u64> a, std::span<const u64> h,
                                        const Executor& ex) {
    const u64 p = ctx.p();
    const std::size_t t = a.size();
    return ex.reduce<complex>(p - 1, [&](std::size_t begin, std::size_t end) {
        std::vector<u64> pw(t);
        for (std::size_t i = 0; i < t; ++i) {
            pw[i] = ctx.pow(h[i], begin + 1);
        }
        complex acc{};
        for (std::size_t x = begin; x < end; ++x) {
            u64 phase = 0;
            for (std::size_t i = 0; i < t; ++i) {
                phase = ctx.add(phase, ctx.mul(a[i], pw[i]));
                pw[i] = ctx.mul(pw[i], h[i]);
            }
            acc += ctx.e(phase);
        }
        return acc;
    });
}

}  // namespace detail

/// S(a, h; p) = sum_{x=1}^{p-1} e_p(a_1 h_1^x + ... + a_t h_t^x).
inline ComplexValue sum_S(const PrimeContext& ctx, std::span<const u64> a, std::span<const u64> h,
                          const Executor& ex = Executor::serial()) {
    if (a.empty() || a.size() != h.size()) {
        throw std::invalid_argument("sum_S: coefficient and base vectors must be nonempty and of equal length");
    }
    detail::require_residues(ctx, a, "sum_S");
    for (u64 hi : h) {
        if (hi == 0 || hi == 1 || hi >= ctx.p() - 1) {
            throw std::invalid_argument("sum_S: base " + std::to_string(hi) + " must lie in [2, p-2]");
        }
    }
    return detail::make_value(detail::exponential_function_sum(ctx, a, h, ex), ctx.p() - 1);
}

namespace detail {
inline void require_exponents(const PrimeContext& ctx, std::span<const u64> a, std::span<const u64> r,
                              const char* what) {
    if (a.empty() || a.size() != r.size()) {
        throw std::invalid_argument(std::string(what) +
                                    ": coefficient and exponent vectors must be nonempty and of equal length");
    }
    require_residues(ctx, a, what);
    for (u64 ri : r) {
        if (ri % (ctx.p() - 1) == 0) {
            throw std::invalid_argument(std::string(what) + ": exponent " + std::to_string(ri) +
                                        " is divisible by p-1");
        }
    }
}
}  // namespace detail

/// T(a, r; p) = sum_{x in F_p^*} e_p(a_1 x^{r_1} + ... + a_t x^{r_t}), evaluated
/// as S(a, (g^{r_1}, ..., g^{r_t}); p).
inline ComplexValue sum_T(const PrimeContext& ctx, std::span<const u64> a, std::span<const u64> r,
                          const Executor& ex = Executor::serial()) {
    detail::require_exponents(ctx, a, r, "sum_T");
    std::vector<u64> bases;
    bases.reserve(r.size());
    for (u64 ri : r) {
        bases.push_back(ctx.pow(ctx.g(), ri));
    }
    return detail::make_value(detail::exponential_function_sum(ctx, a, bases, ex), ctx.p() - 1);
}

/// T(a, r; p) summed directly over x in F_p^* with one modular power per term.
inline ComplexValue sum_T_direct(const PrimeContext& ctx, std::span<const u64> a, std::span<const u64> r,
                                 const Executor& ex = Executor::serial()) {
    detail::require_exponents(ctx, a, r, "sum_T_direct");
    const u64 p = ctx.p();
    const complex v = ex.reduce<complex>(p - 1, [&](std::size_t begin, std::size_t end) {
        complex acc{};
        for (std::size_t i = begin; i < end; ++i) {
            const u64 x = i + 1;
            u64 phase = 0;
            for (std::size_t j = 0; j < a.size(); ++j) {
                phase = ctx.add(phase, ctx.mul(a[j], ctx.pow(x, r[j])));
            }
            acc += ctx.e(phase);
        }
        return acc;
    });
    return detail::make_value(v, p - 1);
}

/// T_{a,b}(e,f) = sum_{x in F_p} e_p(a x^e + b x^f); note x = 0 is included.
inline ComplexValue binomial_sum(const PrimeContext& ctx, u64 a, u64 b, u64 e, u64 f,
                                 const Executor& ex = Executor::serial()) {
    if (e < 1 || f < 1) {
        throw std::invalid_argument("binomial_sum: exponents must be positive");
    }
    const std::array<u64, 2> coeffs{a, b};
    detail::require_residues(ctx, coeffs, "binomial_sum");
    const u64 p = ctx.p();
    const complex v = ex.reduce<complex>(p, [&](std::size_t begin, std::size_t end) {
        complex acc{};
        for (std::size_t x = begin; x < end; ++x) {
            const u64 phase = ctx.add(ctx.mul(a, ctx.pow(x, e)), ctx.mul(b, ctx.pow(x, f)));
            acc += ctx.e(phase);
        }
        return acc;
    });
    return detail::make_value(v, p);
}

/// |T_{a,b}(e,f)| <= gcd(e-f, p-1) + 2.292 d^{13/46} p^{89/92}, d = gcd(e, f, p-1).
inline BoundCheck cochrane_pinner_check(const PrimeContext& ctx, u64 a, u64 b, u64 e, u64 f,
                                        const Executor& ex = Executor::serial()) {
    if (a == 0 || b == 0) {
        throw std::invalid_argument("cochrane_pinner_check: coefficients must be nonzero");
    }
    const u64 p = ctx.p();
    const double observed = binomial_sum(ctx, a, b, e, f, ex).abs();
    const u64 diff = e > f ? e - f : f - e;
    const auto d = static_cast<double>(std::gcd(std::gcd(e, f), p - 1));
    const double bound = static_cast<double>(std::gcd(diff, p - 1)) +
                         2.292 * std::pow(d, 13.0 / 46.0) * std::pow(static_cast<double>(p), 89.0 / 92.0);
    return hard_check("cochrane_pinner", observed, bound);
}

/// |T(a, r; p)| <= (max r_i) sqrt(p), asserted only where it beats p - 1.
inline BoundCheck weil_check(const PrimeContext& ctx, std::span<const u64> a, std::span<const u64> r,
                             const Executor& ex = Executor::serial()) {
    const u64 p = ctx.p();
    if (a.empty() || a.size() != r.size()) {
        return skipped_check("weil", CheckKind::Hard, "coefficient and exponent vectors differ in length");
    }
    for (u64 ai : a) {
        if (ai == 0 || ai >= p) {
            return skipped_check("weil", CheckKind::Hard, "every coefficient must be a nonzero residue");
        }
    }
    std::vector<u64> sorted(r.begin(), r.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        return skipped_check("weil", CheckKind::Hard, "exponents must be distinct");
    }
    if (sorted.front() < 1 || sorted.back() > p - 2) {
        return skipped_check("weil", CheckKind::Hard, "exponents must lie in [1, p-2]");
    }
    const double bound = static_cast<double>(sorted.back()) * std::sqrt(static_cast<double>(p));
    if (bound >= static_cast<double>(p - 1)) {
        auto c = skipped_check("weil", CheckKind::Hard, "bound (max r) sqrt(p) is not below the trivial bound p-1");
        c.bound = bound;
        return c;
    }
    return hard_check("weil", sum_T(ctx, a, r, ex).abs(), bound);
}

/// W_{k,a}(E) = sum_{x=1}^{p-1} |sum_{e in E} e_p(a e^x)|^k for E = [K+1, K+H].
inline double double_sum_W(const PrimeContext& ctx, u64 a, u64 K, u64 H, int k,
                           const Executor& ex = Executor::serial()) {
    if (k != 1 && k != 2) {
        throw std::invalid_argument("double_sum_W: k must be 1 or 2");
    }
    if (a == 0 || a >= ctx.p()) {
        throw std::invalid_argument("double_sum_W: a must be a nonzero residue");
    }
    detail::require_interval(ctx, H, K, "double_sum_W");
    const u64 p = ctx.p();
    return ex.reduce<double>(p - 1, [&](std::size_t begin, std::size_t end) {
        std::vector<u64> pw(H);
        for (u64 j = 0; j < H; ++j) {
            pw[j] = ctx.pow(K + 1 + j, begin + 1);
        }
        double acc = 0.0;
        for (std::size_t x = begin; x < end; ++x) {
            complex inner{};
            for (u64 j = 0; j < H; ++j) {
                inner += ctx.e(ctx.mul(a, pw[j]));
                pw[j] = ctx.mul(pw[j], K + 1 + j);
            }
            acc += k == 1 ? std::abs(inner) : std::norm(inner);
        }
        return acc;
    });
}

/// Ratio of W_{k,a} to H^{3/4} p^{9/8} (k = 1) or p^2 H^{2/3} + p^{5/4} H^{3/2} (k = 2).
inline BoundCheck w_bound_monitor(const PrimeContext& ctx, u64 a, u64 K, u64 H, int k,
                                  double ceiling = kDefaultRatioCeiling, const Executor& ex = Executor::serial()) {
    const double W = double_sum_W(ctx, a, K, H, k, ex);
    const auto p = static_cast<double>(ctx.p());
    const auto h = static_cast<double>(H);
    const double bound = k == 1 ? std::pow(h, 0.75) * std::pow(p, 9.0 / 8.0)
                                : p * p * std::pow(h, 2.0 / 3.0) + std::pow(p, 1.25) * std::pow(h, 1.5);
    auto c = monitored_check(k == 1 ? "w1_interval" : "w2_interval", W, bound, ceiling);
    if (bound >= (p - 1.0) * std::pow(h, k)) {
        c.note = "bound is not below the trivial bound (p-1) H^k";
    }
    return c;
}

/// U_{a,p}(H,K) = sum over h_1, h_2 in [K+1, K+H] of S(a, (h_1, h_2); p), via the
/// swapped order sum_x (sum_{h_1} e_p(a_1 h_1^x)) (sum_{h_2} e_p(a_2 h_2^x)).
/// Bases 1 and p-1 inside the interval are summed like any other.
inline ComplexValue average_U(const PrimeContext& ctx, const CoefficientPair& a, u64 H, u64 K,
                              const Executor& ex = Executor::serial()) {
    detail::require_residues(ctx, a, "average_U");
    detail::require_interval(ctx, H, K, "average_U");
    const u64 p = ctx.p();
    const complex v = ex.reduce<complex>(p - 1, [&](std::size_t begin, std::size_t end) {
        std::vector<u64> pw(H);
        for (u64 j = 0; j < H; ++j) {
            pw[j] = ctx.pow(K + 1 + j, begin + 1);
        }
        complex acc{};
        for (std::size_t x = begin; x < end; ++x) {
            complex first{}, second{};
            for (u64 j = 0; j < H; ++j) {
                first += ctx.e(ctx.mul(a[0], pw[j]));
                second += ctx.e(ctx.mul(a[1], pw[j]));
                pw[j] = ctx.mul(pw[j], K + 1 + j);
            }
            acc += first * second;
        }
        return acc;
    });
    return detail::make_value(v, (p - 1) * H * H);
}

/// V_{a,p}(H,K) = sum over h_1, h_2 in [K+1, K+H] of |S(a, (h_1, h_2); p)|.
/// Cost O(H^2 p); the phase tables take 8 H p bytes.
inline double average_V(const PrimeContext& ctx, const CoefficientPair& a, u64 H, u64 K,
                        const Executor& ex = Executor::serial()) {
    detail::require_residues(ctx, a, "average_V");
    detail::require_interval(ctx, H, K, "average_V");
    const u64 p = ctx.p();
    const std::size_t n = p - 1;
    // phase[j][i][x-1] = a_j h_i^x mod p
    std::array<std::vector<std::uint32_t>, 2> phase;
    for (auto& table : phase) {
        table.resize(H * n);
    }
    ex.for_each_range(H, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const u64 h = K + 1 + i;
            u64 pw = h;
            for (std::size_t x = 0; x < n; ++x) {
                phase[0][i * n + x] = static_cast<std::uint32_t>(ctx.mul(a[0], pw));
                phase[1][i * n + x] = static_cast<std::uint32_t>(ctx.mul(a[1], pw));
                pw = ctx.mul(pw, h);
            }
        }
    });
    const auto roots = ctx.unit_roots();
    const std::vector<double> moduli = ex.map<double>(H * H, [&](std::size_t pair) {
        const std::uint32_t* first = &phase[0][(pair / H) * n];
        const std::uint32_t* second = &phase[1][(pair % H) * n];
        std::vector<complex> blocks;
        blocks.reserve(n / kReduceBlock + 1);
        for (std::size_t begin = 0; begin < n; begin += kReduceBlock) {
            const std::size_t end = std::min(n, begin + kReduceBlock);
            complex acc{};
            for (std::size_t x = begin; x < end; ++x) {
                u64 z = u64{first[x]} + second[x];
                acc += roots[z >= p ? z - p : z];
            }
            blocks.push_back(acc);
        }
        return std::abs(pairwise_sum(blocks));
    });
    return pairwise_sum(moduli);
}

struct TheoremRatios {
    ComplexValue U;
    double V = 0.0;
    // Bounds on |U| (moderate H), |U| (large H) and V, in that order.
    std::array<BoundCheck, 3> checks;
};

namespace detail {
inline void mark_vacuous(BoundCheck& c, double trivial) {
    if (c.bound >= trivial) {
        c.skipped = true;
        c.note = "bound is not below the trivial bound H^2 (p-1)";
    }
}
}  // namespace detail

/// Monitors |U| and V against the three averaged bounds. Each check enforces
/// its own hypothesis on a: the moderate-H bound on |U| needs a != 0, the other
/// two need both coefficients nonzero.
inline TheoremRatios theorem_ratios(const PrimeContext& ctx, const CoefficientPair& a, u64 H, u64 K, u64 n,
                                    double ceiling = kDefaultRatioCeiling, const Executor& ex = Executor::serial()) {
    if (n < 1) {
        throw std::invalid_argument("theorem_ratios: n must be positive");
    }
    TheoremRatios out;
    out.U = average_U(ctx, a, H, K, ex);
    const auto p = static_cast<double>(ctx.p());
    const auto h = static_cast<double>(H);
    const auto nd = static_cast<double>(n);
    const double trivial = h * h * (p - 1.0);
    const bool any_nonzero = a[0] != 0 || a[1] != 0;
    const bool both_nonzero = a[0] != 0 && a[1] != 0;

    if (any_nonzero) {
        out.checks[0] = monitored_check("U_moderate_H", out.U.abs(), std::pow(h, 1.75) * std::pow(p, 9.0 / 8.0),
                                        ceiling);
        detail::mark_vacuous(out.checks[0], trivial);
    } else {
        out.checks[0] = skipped_check("U_moderate_H", CheckKind::Monitored, "requires a nonzero coefficient vector");
    }
    if (!both_nonzero) {
        out.checks[1] = skipped_check("U_large_H", CheckKind::Monitored, "requires both coefficients nonzero");
        out.checks[2] = skipped_check("V_small_H", CheckKind::Monitored, "requires both coefficients nonzero");
        return out;
    }
    out.checks[1] = monitored_check(
        "U_large_H", out.U.abs(), std::pow(h, 2.0 / 3.0) * p * p + std::pow(h, 1.5) * std::pow(p, 1.25), ceiling);
    detail::mark_vacuous(out.checks[1], trivial);

    out.V = average_V(ctx, a, H, K, ex);
    double bound = 0.0;
    if (h >= std::pow(p, 1.0 / nd)) {
        bound = h * h * std::pow(p, 89.0 / 92.0) + h * h * std::pow(p, 1.0 - 3.0 / (13.0 * nd));
    } else {
        bound = std::pow(p, 89.0 / 92.0 + 2.0 / nd) + std::pow(p, 1.0 + 23.0 / (13.0 * nd));
    }
    out.checks[2] = monitored_check("V_small_H", out.V, bound, ceiling);
    detail::mark_vacuous(out.checks[2], trivial);
    if (K != 0 && out.checks[2].note.empty()) {
        out.checks[2].note = "bound is stated for K = 0";
    }
    return out;
}

}  // namespace sparsesum
