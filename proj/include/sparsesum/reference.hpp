#pragma once

// Straight-from-the-definition evaluation routes. They are slower than the
// main kernels and exist so `verify-all` can cross-check those kernels at run
// time; the unit tests use their own, separate oracles.

#include <complex>
#include <cstdint>

#include "sparsesum/expsums.hpp"

namespace sparsesum::reference {

/// U_{a,p}(H,K) as the literal double sum of S over base pairs.
inline ComplexValue average_U_by_definition(const PrimeContext& ctx, const CoefficientPair& a, u64 H, u64 K,
                                            const Executor& ex = Executor::serial()) {
    detail::require_residues(ctx, a, "average_U_by_definition");
    detail::require_interval(ctx, H, K, "average_U_by_definition");
    const std::vector<complex> terms = ex.map<complex>(H * H, [&](std::size_t pair) {
        const std::array<u64, 2> h{K + 1 + pair / H, K + 1 + pair % H};
        return detail::exponential_function_sum(ctx, a, h, Executor::serial());
    });
    return detail::make_value(pairwise_sum(terms), (ctx.p() - 1) * H * H);
}

/// W_{k,a}([K+1, K+H]) with every power e^x recomputed by square-and-multiply.
inline double double_sum_W_by_powers(const PrimeContext& ctx, u64 a, u64 K, u64 H, int k) {
    double total = 0.0;
    for (u64 x = 1; x < ctx.p(); ++x) {
        complex inner{};
        for (u64 e = K + 1; e <= K + H; ++e) {
            inner += ctx.e(ctx.mul(a, mod_pow(e, x, ctx.p())));
        }
        total += k == 1 ? std::abs(inner) : std::norm(inner);
    }
    return total;
}

}  // namespace sparsesum::reference
