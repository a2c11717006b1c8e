#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsesum/bound_check.hpp"
#include "sparsesum/intpoly.hpp"
#include "sparsesum/modular.hpp"
#include "sparsesum/parallel.hpp"

namespace sparsesum {

/// F_l(X) = (X+1)^l - X^l - 1, coefficients binom(l, i) for 1 <= i <= l-1.
inline IntPoly build_F(unsigned l) {
    if (l == 0) {
        throw std::invalid_argument("build_F: exponent must be positive");
    }
    std::vector<BigInt> row(l + 1);
    row[0] = 1;
    for (unsigned i = 1; i <= l; ++i) {
        row[i] = row[i - 1] * (l - i + 1) / i;
    }
    row[0] = 0;
    row[l] = 0;
    return IntPoly(std::move(row));
}

namespace polys {
inline const IntPoly& x() {
    static const IntPoly v{0, 1};
    return v;
}
inline const IntPoly& x_plus_1() {
    static const IntPoly v{1, 1};
    return v;
}
inline const IntPoly& cyclotomic3() {
    static const IntPoly v{1, 1, 1};
    return v;
}
/// The only possible values of gcd(F_r, F_s), r > s > 1, in increasing degree:
/// X, X(X+1), X(X+1)(X^2+X+1), X(X+1)(X^2+X+1)^2.
inline const std::array<IntPoly, 4>& gcd_candidates() {
    static const std::array<IntPoly, 4> v{
        x(),
        x() * x_plus_1(),
        x() * x_plus_1() * cyclotomic3(),
        x() * x_plus_1() * cyclotomic3() * cyclotomic3(),
    };
    return v;
}
}  // namespace polys

struct FrStructure {
    unsigned r = 0;
    unsigned a = 0;  // exponent of X+1
    unsigned b = 0;  // exponent of X^2+X+1
    IntPoly G;
};

/// Splits F_r = X (X+1)^a (X^2+X+1)^b G_r with (a, b) read from r mod 6, and
/// verifies exact division and gcd(G_r, X(X+1)(X^2+X+1)) = 1.
inline FrStructure factor_structure(unsigned r) {
    if (r < 2) {
        throw std::invalid_argument("factor_structure: r must be at least 2");
    }
    FrStructure out;
    out.r = r;
    if (r % 2 == 1) {
        out.a = 1;
        switch (r % 6) {
            case 3: out.b = 0; break;
            case 5: out.b = 1; break;
            default: out.b = 2; break;
        }
    }
    try {
        IntPoly G = divide_exact(build_F(r), polys::x());
        for (unsigned i = 0; i < out.a; ++i) {
            G = divide_exact(G, polys::x_plus_1());
        }
        for (unsigned i = 0; i < out.b; ++i) {
            G = divide_exact(G, polys::cyclotomic3());
        }
        out.G = std::move(G);
    } catch (const std::domain_error& e) {
        throw std::logic_error("factor_structure: F_" + std::to_string(r) + " does not factor as tabulated (" +
                               e.what() + ")");
    }
    if (poly_gcd_Q(out.G, polys::gcd_candidates()[2]).degree() != 0) {
        throw std::logic_error("factor_structure: G_" + std::to_string(r) +
                               " shares a factor with X(X+1)(X^2+X+1)");
    }
    return out;
}

/// Index of D in gcd_candidates(), if it is one of them.
inline std::optional<int> gcd_lemma_class(const IntPoly& D) {
    const auto& candidates = polys::gcd_candidates();
    for (int i = 0; i < 4; ++i) {
        if (candidates[static_cast<std::size_t>(i)] == D) {
            return i;
        }
    }
    return std::nullopt;
}

namespace detail {
inline void require_exponent_pair(unsigned r, unsigned s, const char* what) {
    if (!(r > s && s > 1)) {
        throw std::invalid_argument(std::string(what) + ": need r > s > 1, got r = " + std::to_string(r) +
                                    ", s = " + std::to_string(s));
    }
}
}  // namespace detail

/// D_{r,s} = gcd(F_r, F_s) over Q. Throws std::logic_error if D is not one of
/// the four admissible polynomials.
inline IntPoly compute_D(unsigned r, unsigned s) {
    detail::require_exponent_pair(r, s, "compute_D");
    // Both polynomials are divisible by X; factoring it out first shortens the PRS.
    const IntPoly Fr = divide_exact(build_F(r), polys::x());
    const IntPoly Fs = divide_exact(build_F(s), polys::x());
    IntPoly D = poly_gcd_Q(Fr, Fs) * polys::x();
    if (!gcd_lemma_class(D)) {
        throw std::logic_error("compute_D: gcd(F_" + std::to_string(r) + ", F_" + std::to_string(s) +
                               ") = " + D.to_string() + " is not an admissible gcd");
    }
    return D;
}

inline constexpr double kDefaultResultantGrowth = 1.0;

struct ResultantCertificate {
    unsigned r = 0;
    unsigned s = 0;
    IntPoly D;
    IntPoly phi_r;  // F_r / D
    IntPoly phi_s;  // F_s / D
    BigInt R;
    BoundCheck growth;  // ln|R| against C r s
};

/// R_{r,s} = Res(F_r / D_{r,s}, F_s / D_{r,s}); nonzero by construction.
inline ResultantCertificate compute_R(unsigned r, unsigned s, double C = kDefaultResultantGrowth) {
    ResultantCertificate out;
    out.r = r;
    out.s = s;
    out.D = compute_D(r, s);
    try {
        out.phi_r = divide_exact(build_F(r), out.D);
        out.phi_s = divide_exact(build_F(s), out.D);
    } catch (const std::domain_error& e) {
        throw std::logic_error(std::string("compute_R: ") + e.what());
    }
    out.R = resultant(out.phi_r, out.phi_s);
    if (out.R == 0) {
        throw std::logic_error("compute_R: R_{" + std::to_string(r) + "," + std::to_string(s) + "} vanishes");
    }
    const double rs = static_cast<double>(r) * static_cast<double>(s);
    out.growth = monitored_check("resultant_growth", log_abs(out.R), rs, C);
    return out;
}

struct ZeroCertificate {
    u64 p = 0;
    unsigned r = 0;
    unsigned s = 0;
    u64 N = 0;
    std::vector<u64> zeros;           // common zeros y with y, y+1 both nonzero
    std::vector<u64> excluded_zeros;  // common zeros at y = 0 or y = -1
    IntPoly D;
    BigInt R;
    bool divisibility_ok = false;
};

/// F_l(y) mod p by modular powers.
inline u64 evaluate_F_mod(unsigned l, u64 y, u64 p) {
    const u64 value = (mod_pow(y + 1, l, p) + 2 * p - mod_pow(y, l, p) - 1) % p;
    return value;
}

/// p^{max(N-4, 0)} divides R.
inline bool divides_power(u64 p, u64 N, const BigInt& R) {
    if (N <= 4) {
        return true;
    }
    BigInt q = R;
    for (u64 i = 0; i < N - 4; ++i) {
        if (q % p != 0) {
            return false;
        }
        q /= p;
    }
    return true;
}

/// Common zeros of F_r and F_s over F_p, reusing a precomputed resultant.
inline ZeroCertificate count_common_zeros(u64 p, const ResultantCertificate& cert) {
    if (p < 2 || !is_prime(p)) {
        throw std::invalid_argument("count_common_zeros: " + std::to_string(p) + " is not prime");
    }
    ZeroCertificate out;
    out.p = p;
    out.r = cert.r;
    out.s = cert.s;
    for (u64 y = 0; y < p; ++y) {
        if (evaluate_F_mod(cert.r, y, p) != 0 || evaluate_F_mod(cert.s, y, p) != 0) {
            continue;
        }
        if (y == 0 || y == p - 1) {
            out.excluded_zeros.push_back(y);
        } else {
            out.zeros.push_back(y);
        }
    }
    out.N = out.zeros.size();
    out.D = cert.D;
    out.R = cert.R;
    out.divisibility_ok = divides_power(p, out.N, out.R);
    return out;
}

/// N_p(r, s): number of y in F_p with F_r(y) = F_s(y) = 0 and y, y+1 nonzero.
inline ZeroCertificate count_common_zeros(u64 p, unsigned r, unsigned s) {
    return count_common_zeros(p, compute_R(r, s));
}

/// p^{max(N_p(r,s) - 4, 0)} divides R_{r,s}.
inline bool verify_divisibility(u64 p, unsigned r, unsigned s) {
    return count_common_zeros(p, r, s).divisibility_ok;
}

struct ExceptionalPrimes {
    unsigned r = 0;
    unsigned s = 0;
    u64 P_max = 0;
    std::vector<u64> primes;       // primes <= P_max dividing R_{r,s}
    std::vector<u64> violations;   // primes outside the list with N_p > 4
    bool cross_check_ok = false;   // violations is empty
    BoundCheck count_monitor;      // list length against C ln|R| / ln ln(|R|+2)
};

/// Primes p <= P_max dividing R_{r,s}, with the cross-check that N_p(r,s) <= 4
/// for every other prime in range.
inline ExceptionalPrimes exceptional_primes(unsigned r, unsigned s, u64 P_max, double C = kDefaultRatioCeiling,
                                            const Executor& ex = Executor::serial()) {
    if (P_max < 2) {
        throw std::invalid_argument("exceptional_primes: P_max must be at least 2");
    }
    const ResultantCertificate cert = compute_R(r, s);
    ExceptionalPrimes out;
    out.r = r;
    out.s = s;
    out.P_max = P_max;
    const BigInt magnitude = abs(cert.R);
    const std::vector<u64> primes = primes_up_to(P_max);
    for (u64 p : primes) {
        if (magnitude % p == 0) {
            out.primes.push_back(p);
        }
    }
    const std::vector<u64> counts =
        ex.map<u64>(primes.size(), [&](std::size_t i) { return count_common_zeros(primes[i], cert).N; });
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (magnitude % primes[i] != 0 && counts[i] > 4) {
            out.violations.push_back(primes[i]);
        }
    }
    out.cross_check_ok = out.violations.empty();
    const double log_r = log_abs(cert.R);
    // ln ln(|R| + 2) computed as ln(ln|R|) once |R| is large enough for +2 to be invisible.
    const double loglog = magnitude < 1000000 ? std::log(std::log(magnitude.convert_to<double>() + 2.0))
                                              : std::log(log_r);
    const double bound = log_r > 0 ? log_r / loglog : 0.0;
    if (bound > 0) {
        out.count_monitor = monitored_check("exceptional_prime_count", static_cast<double>(out.primes.size()), bound, C);
    } else {
        out.count_monitor = skipped_check("exceptional_prime_count", CheckKind::Monitored, "|R| = 1 has no prime divisors");
    }
    return out;
}

}  // namespace sparsesum
