#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsesum/bound_check.hpp"
#include "sparsesum/common_zeros.hpp"
#include "sparsesum/intpoly.hpp"
#include "sparsesum/parallel.hpp"
#include "sparsesum/prime_context.hpp"

namespace sparsesum {

// Direct moment loops cost O(p^4).
inline constexpr u64 kMomentPrimeCap = 127;
// count_Q cross-checks against enumeration up to this prime.
inline constexpr u64 kQEnumerationCap = 503;

/// Averages over a in F_p^3 of T(a) = sum_{x != 0} e_p(a1 x^r + a2 x^s + a3 x).
struct MomentSums {
    complex first{};    // (1/p^3) sum T
    double second = 0;  // (1/p^3) sum |T|^2
    complex cubic{};    // (1/p^3) sum conj(T) T^2
    double third_abs = 0;  // (1/p^3) sum |T|^3
};

namespace detail {

inline void require_moment_input(const PrimeContext& ctx, unsigned r, unsigned s, const char* what) {
    if (ctx.p() > kMomentPrimeCap) {
        throw std::invalid_argument(std::string(what) + ": p = " + std::to_string(ctx.p()) +
                                    " exceeds the direct-summation cap " + std::to_string(kMomentPrimeCap));
    }
    if (!(r > s && s > 1)) {
        throw std::invalid_argument(std::string(what) + ": need r > s > 1");
    }
}

struct SliceSums {
    complex first{};
    double second = 0;
    complex cubic{};
    double third_abs = 0;
};

}  // namespace detail

/// One pass over all a in F_p^3, sliced over a1.
inline MomentSums moment_sums(const PrimeContext& ctx, unsigned r, unsigned s,
                              const Executor& ex = Executor::serial()) {
    detail::require_moment_input(ctx, r, s, "moment_sums");
    const u64 p = ctx.p();
    std::vector<u64> xr(p), xs(p);
    for (u64 x = 1; x < p; ++x) {
        xr[x] = mod_pow(x, r, p);
        xs[x] = mod_pow(x, s, p);
    }
    const auto roots = ctx.unit_roots();
    const std::vector<detail::SliceSums> slices = ex.map<detail::SliceSums>(p, [&](std::size_t a1) {
        std::vector<complex> t_values;
        t_values.reserve(p * p);
        std::vector<u64> base(p);
        for (u64 a2 = 0; a2 < p; ++a2) {
            for (u64 x = 1; x < p; ++x) {
                base[x] = (a1 * xr[x] + a2 * xs[x]) % p;
            }
            for (u64 a3 = 0; a3 < p; ++a3) {
                complex t{};
                for (u64 x = 1; x < p; ++x) {
                    t += roots[(base[x] + a3 * x) % p];
                }
                t_values.push_back(t);
            }
        }
        std::vector<complex> first(t_values.size()), cubic(t_values.size());
        std::vector<double> second(t_values.size()), third(t_values.size());
        for (std::size_t i = 0; i < t_values.size(); ++i) {
            const complex t = t_values[i];
            first[i] = t;
            second[i] = std::norm(t);
            cubic[i] = std::conj(t) * t * t;
            third[i] = second[i] * std::sqrt(second[i]);
        }
        return detail::SliceSums{pairwise_sum(first), pairwise_sum(second), pairwise_sum(cubic), pairwise_sum(third)};
    });
    std::vector<complex> first(p), cubic(p);
    std::vector<double> second(p), third(p);
    for (u64 i = 0; i < p; ++i) {
        first[i] = slices[i].first;
        second[i] = slices[i].second;
        cubic[i] = slices[i].cubic;
        third[i] = slices[i].third_abs;
    }
    const double volume = static_cast<double>(p) * static_cast<double>(p) * static_cast<double>(p);
    return MomentSums{pairwise_sum(first) / volume, pairwise_sum(second) / volume, pairwise_sum(cubic) / volume,
                      pairwise_sum(third) / volume};
}

/// M_p(r, s) = (1/p^3) sum_a conj(T) T^2 with exponents (r, s, 1).
inline complex direct_cubic_moment(const PrimeContext& ctx, unsigned r, unsigned s,
                                   const Executor& ex = Executor::serial()) {
    return moment_sums(ctx, r, s, ex).cubic;
}

/// Number of (y, z) in (F_p^*)^2 with x = y + z nonzero and x^r = y^r + z^r,
/// x^s = y^s + z^s, by enumeration.
inline u64 count_Q_by_enumeration(u64 p, unsigned r, unsigned s) {
    std::vector<u64> pr(p), ps(p);
    for (u64 v = 0; v < p; ++v) {
        pr[v] = mod_pow(v, r, p);
        ps[v] = mod_pow(v, s, p);
    }
    u64 count = 0;
    for (u64 y = 1; y < p; ++y) {
        for (u64 z = 1; z < p; ++z) {
            const u64 x = (y + z) % p;
            if (x != 0 && pr[x] == (pr[y] + pr[z]) % p && ps[x] == (ps[y] + ps[z]) % p) {
                ++count;
            }
        }
    }
    return count;
}

/// Q_p(r, s) = (p - 1) N_p(r, s). For p <= 503 the value is confirmed by
/// enumeration and a mismatch throws std::logic_error.
inline BigInt count_Q(u64 p, unsigned r, unsigned s) {
    if (p < 3 || !is_prime(p)) {
        throw std::invalid_argument("count_Q: p must be an odd prime");
    }
    const ZeroCertificate cert = count_common_zeros(p, r, s);
    const BigInt q = BigInt(p - 1) * cert.N;
    if (p <= kQEnumerationCap) {
        const u64 enumerated = count_Q_by_enumeration(p, r, s);
        if (q != enumerated) {
            throw std::logic_error("count_Q: (p-1) N = " + to_decimal(q) + " but enumeration gives " +
                                   std::to_string(enumerated) + " for p = " + std::to_string(p));
        }
    }
    return q;
}

struct LowMoments {
    complex first{};
    double second = 0;
    BoundCheck first_check;
    BoundCheck second_check;
};

inline LowMoments low_moments_from(u64 p, const MomentSums& sums) {
    const auto pd = static_cast<double>(p);
    LowMoments out;
    out.first = sums.first;
    out.second = sums.second;
    out.first_check = hard_check("first_moment_vanishes", std::abs(sums.first), 1e-6 * pd, Relation::StrictlyLess);
    out.second_check = hard_check("second_moment_equals_p_minus_1", std::abs(sums.second - (pd - 1.0)), 1e-6 * pd,
                                  Relation::StrictlyLess);
    return out;
}

/// First moment (vanishes) and second moment (equals p - 1).
inline LowMoments low_moments(const PrimeContext& ctx, unsigned r, unsigned s,
                              const Executor& ex = Executor::serial()) {
    return low_moments_from(ctx.p(), moment_sums(ctx, r, s, ex));
}

inline BoundCheck holder_check_from(u64 p, const MomentSums& sums) {
    const auto pd = static_cast<double>(p);
    const double bound = std::pow(pd - 1.0, 1.5) - 1e-5 * std::pow(pd, 1.5);
    return hard_check("holder_third_moment", sums.third_abs, bound, Relation::AtLeast);
}

/// Third absolute moment against (p - 1)^{3/2}, less a float slack of 1e-5 p^{3/2}.
inline BoundCheck holder_check(const PrimeContext& ctx, unsigned r, unsigned s,
                               const Executor& ex = Executor::serial()) {
    return holder_check_from(ctx.p(), moment_sums(ctx, r, s, ex));
}

struct MomentReport {
    u64 p = 0;
    unsigned r = 0;
    unsigned s = 0;
    complex M_float{};
    BigInt Q_exact;
    u64 N = 0;
    complex first_moment{};
    double second_moment_float = 0;
    double third_abs_moment = 0;
    bool identities_ok = false;
    std::vector<BoundCheck> checks;
};

/// Everything at once: M against Q, the low moments and the Hölder bound.
/// The identity tolerance is 1e-5 p.
inline MomentReport moment_report(const PrimeContext& ctx, unsigned r, unsigned s,
                                  const Executor& ex = Executor::serial()) {
    const MomentSums sums = moment_sums(ctx, r, s, ex);
    const u64 p = ctx.p();
    MomentReport out;
    out.p = p;
    out.r = r;
    out.s = s;
    out.M_float = sums.cubic;
    out.Q_exact = count_Q(p, r, s);
    out.N = (out.Q_exact / (p - 1)).convert_to<u64>();
    out.first_moment = sums.first;
    out.second_moment_float = sums.second;
    out.third_abs_moment = sums.third_abs;
    const double tol = 1e-5 * static_cast<double>(p);
    const double q = out.Q_exact.convert_to<double>();
    out.checks.push_back(hard_check("cubic_moment_identity", std::abs(sums.cubic - complex(q, 0.0)), tol));
    out.checks.push_back(hard_check("Q_divisible_by_p_minus_1", out.Q_exact % (p - 1) == 0 ? 0.0 : 1.0, 0.0));
    const LowMoments low = low_moments_from(p, sums);
    out.checks.push_back(low.first_check);
    out.checks.push_back(low.second_check);
    out.checks.push_back(holder_check_from(p, sums));
    out.identities_ok = out.checks[0].passed && out.checks[1].passed;
    return out;
}

}  // namespace sparsesum
