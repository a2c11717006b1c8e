#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sparsesum/bound_check.hpp"
#include "sparsesum/modular.hpp"
#include "sparsesum/parallel.hpp"

namespace sparsesum {

struct CongruenceCount {
    u64 N = 0;
    u64 p = 0;
    u64 H = 0;
    u64 K = 0;
    std::vector<u64> V_set;
    u64 v_max = 0;
};

namespace detail {

inline std::vector<u64> checked_exponent_set(u64 p, std::span<const u64> V_set) {
    std::vector<u64> sorted(V_set.begin(), V_set.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.empty() || sorted.front() < 1 || sorted.back() > p - 1 ||
        std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("exponent set must be nonempty, distinct and inside [1, p-1]");
    }
    return sorted;
}

inline void require_divisor(u64 p, u64 d, const char* what) {
    if (d == 0 || (p - 1) % d != 0) {
        throw std::invalid_argument(std::string(what) + ": " + std::to_string(d) + " does not divide p-1 = " +
                                    std::to_string(p - 1));
    }
}

}  // namespace detail

/// Number of triples (x, v_1, v_2), 0 <= x <= p-1, v_1 != v_2 in V_set, with
/// both x^{v_1} and x^{v_2} mod p in [K+1, K+H].
inline CongruenceCount count_congruence_system(u64 p, std::span<const u64> V_set, u64 H, u64 K,
                                               const Executor& ex = Executor::serial()) {
    if (p < 3 || !is_prime(p)) {
        throw std::invalid_argument("count_congruence_system: p must be an odd prime");
    }
    if (H < 1 || K + H > p - 1) {
        throw std::invalid_argument("count_congruence_system: interval [K+1, K+H] must lie in [1, p-1]");
    }
    CongruenceCount out;
    out.p = p;
    out.H = H;
    out.K = K;
    out.V_set = detail::checked_exponent_set(p, V_set);
    out.v_max = out.V_set.back();
    // x = 0 gives 0^v = 0, outside the interval; the loop keeps it for fidelity.
    const std::vector<u64> per_x = ex.map<u64>(p, [&](std::size_t x) {
        u64 hits = 0;
        for (u64 v : out.V_set) {
            const u64 h = mod_pow(x, v, p);
            hits += (h >= K + 1 && h <= K + H) ? 1 : 0;
        }
        return hits == 0 ? 0 : hits * (hits - 1);
    });
    out.N = std::accumulate(per_x.begin(), per_x.end(), u64{0});
    return out;
}

/// N < H^2 V^2 / p + V^2 p^{1/2} (log p)^2 v_max, natural logarithm. Should
/// that fail, the check is repeated with log base 2 and the note says so.
inline BoundCheck congruence_bound_check(const CongruenceCount& count) {
    const auto p = static_cast<double>(count.p);
    const auto H = static_cast<double>(count.H);
    const auto V = static_cast<double>(count.V_set.size());
    const auto vmax = static_cast<double>(count.v_max);
    auto bound_with = [&](double log_p) { return H * H * V * V / p + V * V * std::sqrt(p) * log_p * log_p * vmax; };
    auto check = hard_check("congruence_system", static_cast<double>(count.N), bound_with(std::log(p)),
                            Relation::StrictlyLess);
    if (!check.passed) {
        auto base2 = hard_check("congruence_system", static_cast<double>(count.N), bound_with(std::log2(p)),
                                Relation::StrictlyLess);
        base2.note = "natural-log bound failed; evaluated with log base 2";
        return base2;
    }
    return check;
}

inline BoundCheck congruence_bound_check(u64 p, std::span<const u64> V_set, u64 H, u64 K,
                                         const Executor& ex = Executor::serial()) {
    return congruence_bound_check(count_congruence_system(p, V_set, H, K, ex));
}

struct ExponentSet {
    std::vector<u64> values;
    u64 v_max = 0;
    BoundCheck growth;  // v_max against C V log log p
};

/// The first V positive integers coprime to (p-1)/d.
inline ExponentSet build_V_set(u64 p, u64 d, u64 V, double C = kDefaultRatioCeiling) {
    detail::require_divisor(p, d, "build_V_set");
    const u64 modulus = (p - 1) / d;
    if (V < 1 || V > euler_phi(modulus)) {
        throw std::invalid_argument("build_V_set: V = " + std::to_string(V) + " exceeds phi(" +
                                    std::to_string(modulus) + ")");
    }
    ExponentSet out;
    for (u64 v = 1; out.values.size() < V; ++v) {
        if (std::gcd(v, modulus) == 1) {
            out.values.push_back(v);
        }
    }
    out.v_max = out.values.back();
    // log log p is below 1 for p < 16; clamp so the scale stays meaningful.
    const double scale = static_cast<double>(V) * std::max(1.0, std::log(std::log(static_cast<double>(p))));
    out.growth = monitored_check("v_max_growth", static_cast<double>(out.v_max), scale, C);
    return out;
}

/// Number of h in [1, H] that are d-th power residues mod p (Euler criterion).
inline u64 count_power_residues_in_interval(u64 p, u64 d, u64 H) {
    detail::require_divisor(p, d, "count_power_residues_in_interval");
    if (H < 1 || H >= p) {
        throw std::invalid_argument("count_power_residues_in_interval: need 1 <= H < p");
    }
    const u64 e = (p - 1) / d;
    u64 count = 0;
    for (u64 h = 1; h <= H; ++h) {
        count += mod_pow(h, e, p) == 1 ? 1 : 0;
    }
    return count;
}

/// Compares I with (H + p^{1/n}) / d^{1/n} for n = 1, 2, 3.
inline std::array<BoundCheck, 3> power_residue_monitors(u64 p, u64 d, u64 H, double ceiling = kDefaultRatioCeiling) {
    const auto I = static_cast<double>(count_power_residues_in_interval(p, d, H));
    std::array<BoundCheck, 3> out;
    for (int n = 1; n <= 3; ++n) {
        const double root = 1.0 / n;
        const double bound = (static_cast<double>(H) + std::pow(static_cast<double>(p), root)) /
                             std::pow(static_cast<double>(d), root);
        out[n - 1] = monitored_check("interval_power_residues_n" + std::to_string(n), I, bound, ceiling);
    }
    return out;
}

/// Number of pairs (h, k) in [1, H]^2 with h/k an e-th power residue mod p.
/// h/k is a residue iff h^m = k^m for m = (p-1)/e, so pairs are counted by
/// grouping h by h^m.
inline u64 count_ratio_power_residues(u64 p, u64 e, u64 H) {
    detail::require_divisor(p, e, "count_ratio_power_residues");
    if (H < 1 || H >= p) {
        throw std::invalid_argument("count_ratio_power_residues: need 1 <= H < p");
    }
    const u64 m = (p - 1) / e;
    std::unordered_map<u64, u64> classes;
    for (u64 h = 1; h <= H; ++h) {
        ++classes[mod_pow(h, m, p)];
    }
    u64 J = 0;
    for (const auto& [_, c] : classes) {
        J += c * c;
    }
    return J;
}

/// Compares J with H (H + p^{1/n}) / e^{1/n} for n = 1, 2, 3.
inline std::array<BoundCheck, 3> ratio_residue_monitors(u64 p, u64 e, u64 H, double ceiling = kDefaultRatioCeiling) {
    const auto J = static_cast<double>(count_ratio_power_residues(p, e, H));
    std::array<BoundCheck, 3> out;
    for (int n = 1; n <= 3; ++n) {
        const double root = 1.0 / n;
        const auto h = static_cast<double>(H);
        const double bound = h * (h + std::pow(static_cast<double>(p), root)) / std::pow(static_cast<double>(e), root);
        out[n - 1] = monitored_check("ratio_power_residues_n" + std::to_string(n), J, bound, ceiling);
    }
    return out;
}

}  // namespace sparsesum
