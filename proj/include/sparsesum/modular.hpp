#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sparsesum {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i64 = std::int64_t;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

/// b^e mod m by square-and-multiply. 0^0 = 1.
inline u64 mod_pow(u64 b, u64 e, u64 m) {
    if (m == 1) {
        return 0;
    }
    u64 result = 1;
    b %= m;
    while (e > 0) {
        if (e & 1) {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return result;
}

/// Inverse of a modulo m; requires gcd(a, m) = 1.
inline u64 mod_inverse(u64 a, u64 m) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) {
        throw std::invalid_argument("mod_inverse: " + std::to_string(a) + " is not invertible mod " +
                                    std::to_string(m));
    }
    return static_cast<u64>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

/// Deterministic Miller-Rabin for 2 <= n < 2^63. The first twelve prime bases
/// are a complete witness set below 3.3 * 10^24.
inline bool is_prime(u64 n) {
    if (n < 2 || n >= (u64{1} << 63)) {
        throw std::out_of_range("is_prime: argument " + std::to_string(n) + " outside [2, 2^63)");
    }
    constexpr u64 bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 q : bases) {
        if (n % q == 0) {
            return n == q;
        }
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : bases) {
        u64 x = mod_pow(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

/// Distinct prime divisors of n >= 1, ascending (trial division).
inline std::vector<u64> distinct_prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) {
                n /= q;
            }
        }
    }
    if (n > 1) {
        out.push_back(n);
    }
    return out;
}

inline u64 euler_phi(u64 n) {
    u64 result = n;
    for (u64 q : distinct_prime_factors(n)) {
        result -= result / q;
    }
    return result;
}

/// All primes <= limit (sieve of Eratosthenes).
inline std::vector<u64> primes_up_to(u64 limit) {
    std::vector<u64> primes;
    if (limit < 2) {
        return primes;
    }
    std::vector<bool> composite(limit + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) {
            continue;
        }
        primes.push_back(i);
        for (u64 j = i * i; j <= limit; j += i) {
            composite[j] = true;
        }
    }
    return primes;
}

/// Reduces a signed integer into [0, m).
inline u64 reduce_mod(std::int64_t v, u64 m) {
    const std::int64_t r = v % static_cast<std::int64_t>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

}  // namespace sparsesum
