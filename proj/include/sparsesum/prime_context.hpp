#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sparsesum/modular.hpp"

namespace sparsesum {

using complex = std::complex<double>;

/// Smallest primitive root modulo an odd prime p.
inline u64 find_primitive_root(u64 p) {
    if (p < 3 || !is_prime(p)) {
        throw std::invalid_argument("find_primitive_root: " + std::to_string(p) + " is not an odd prime");
    }
    const auto factors = distinct_prime_factors(p - 1);
    for (u64 g = 2; g < p; ++g) {
        bool generates = true;
        for (u64 q : factors) {
            if (mod_pow(g, (p - 1) / q, p) == 1) {
                generates = false;
                break;
            }
        }
        if (generates) {
            return g;
        }
    }
    throw std::logic_error("find_primitive_root: no generator found for " + std::to_string(p));
}

/// An odd prime p < 2^31 together with its smallest primitive root and the
/// table of additive characters e_p(z) = exp(2 pi i z / p). Immutable once
/// built; share freely across threads.
class PrimeContext {
public:
    static constexpr u64 kDefaultTableCap = u64{1} << 25;

    explicit PrimeContext(u64 p, u64 table_cap = kDefaultTableCap) : p_(p) {
        if (p < 3 || p >= (u64{1} << 31)) {
            throw std::invalid_argument("PrimeContext: p = " + std::to_string(p) + " outside [3, 2^31)");
        }
        if (!is_prime(p)) {
            throw std::invalid_argument("PrimeContext: " + std::to_string(p) + " is not prime");
        }
        if (p > table_cap) {
            throw std::invalid_argument("PrimeContext: p = " + std::to_string(p) +
                                        " exceeds the root-of-unity table cap " + std::to_string(table_cap));
        }
        g_ = find_primitive_root(p);
        // Fill the upper half by conjugation so e_p(-z) is bit-for-bit conj(e_p(z)).
        unit_roots_.resize(p);
        unit_roots_[0] = complex(1.0, 0.0);
        const double step = 2.0 * std::numbers::pi / static_cast<double>(p);
        for (u64 z = 1; z <= p / 2; ++z) {
            const double angle = step * static_cast<double>(z);
            unit_roots_[z] = complex(std::cos(angle), std::sin(angle));
            unit_roots_[p - z] = std::conj(unit_roots_[z]);
        }
    }

    u64 p() const { return p_; }
    u64 g() const { return g_; }

    /// e_p(z) for a residue z in [0, p).
    const complex& e(u64 z) const { return unit_roots_[z]; }

    std::span<const complex> unit_roots() const { return unit_roots_; }

    u64 mul(u64 a, u64 b) const { return a * b % p_; }
    u64 add(u64 a, u64 b) const {
        const u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 pow(u64 b, u64 e) const { return mod_pow(b, e, p_); }

private:
    u64 p_;
    u64 g_ = 0;
    std::vector<complex> unit_roots_;
};

/// Baby-step giant-step solver for g^r = h in F_p^*. The baby-step table is
/// built once, so reuse one solver for many logarithms modulo the same prime.
class DiscreteLog {
public:
    explicit DiscreteLog(const PrimeContext& ctx) : p_(ctx.p()), g_(ctx.g()) {
        const u64 order = p_ - 1;
        m_ = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(order))));
        baby_.reserve(m_);
        u64 x = 1;
        for (u64 j = 0; j < m_; ++j) {
            baby_.emplace(x, j);  // keeps the smallest j on collision
            x = mul_mod(x, g_, p_);
        }
        giant_ = mod_inverse(mod_pow(g_, m_, p_), p_);
    }

    /// r in [0, p-2] with g^r = h.
    u64 operator()(u64 h) const {
        if (h == 0 || h >= p_) {
            throw std::invalid_argument("discrete_log: h = " + std::to_string(h) + " is not in F_p^*");
        }
        u64 y = h;
        for (u64 i = 0; i <= m_; ++i) {
            if (auto it = baby_.find(y); it != baby_.end()) {
                return (i * m_ + it->second) % (p_ - 1);
            }
            y = mul_mod(y, giant_, p_);
        }
        throw std::logic_error("discrete_log: no logarithm found (is g a generator?)");
    }

private:
    u64 p_;
    u64 g_;
    u64 m_ = 0;
    u64 giant_ = 0;
    std::unordered_map<u64, u64> baby_;
};

inline u64 discrete_log(const PrimeContext& ctx, u64 h) {
    return DiscreteLog(ctx)(h);
}

struct ExponentRepresentation {
    std::vector<u64> r;  // scaled exponents, each in [1, p-2]
    u64 lambda = 1;      // the unit that produced r from the discrete logs
    double alpha = 0.0;  // log(max r) / log p
};

/// Writes h_i = g^{r_i} and rescales (r_i) by the unit lambda of Z_{p-1}
/// minimizing max_i r_i; ties go to the smallest lambda.
inline ExponentRepresentation minimal_exponent_representation(const PrimeContext& ctx,
                                                              std::span<const u64> h,
                                                              const DiscreteLog* solver = nullptr) {
    const u64 p = ctx.p();
    if (h.empty()) {
        throw std::invalid_argument("minimal_exponent_representation: empty base vector");
    }
    for (u64 hi : h) {
        if (hi % p == 0 || hi % p == 1 || hi % p == p - 1) {
            throw std::invalid_argument("minimal_exponent_representation: base " + std::to_string(hi) +
                                        " is 0 or +-1 mod " + std::to_string(p));
        }
    }
    std::optional<DiscreteLog> local;
    if (!solver) {
        local.emplace(ctx);
    }
    const DiscreteLog& dlog = solver ? *solver : *local;
    const u64 order = p - 1;
    std::vector<u64> logs;
    logs.reserve(h.size());
    for (u64 hi : h) {
        logs.push_back(dlog(hi % p));
    }

    ExponentRepresentation best;
    u64 best_max = order;
    for (u64 lambda = 1; lambda < order; ++lambda) {
        if (std::gcd(lambda, order) != 1) {
            continue;
        }
        u64 current = 0;
        for (u64 r : logs) {
            current = std::max(current, mul_mod(lambda, r, order));
            if (current >= best_max) {
                break;
            }
        }
        if (current < best_max) {
            best_max = current;
            best.lambda = lambda;
        }
    }
    best.r.reserve(logs.size());
    for (u64 r : logs) {
        best.r.push_back(mul_mod(best.lambda, r, order));
    }
    best.alpha = best_max > 1 ? std::log(static_cast<double>(best_max)) / std::log(static_cast<double>(p)) : 0.0;
    return best;
}

}  // namespace sparsesum
