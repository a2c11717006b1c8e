#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "sparsesum/modular.hpp"

namespace sparsesum {

using BigInt = boost::multiprecision::mpz_int;

inline std::string to_decimal(const BigInt& v) { return v.str(); }

/// Natural logarithm of |v|; v must be nonzero.
inline double log_abs(const BigInt& v) {
    if (v == 0) {
        throw std::domain_error("log_abs: zero argument");
    }
    const BigInt a = abs(v);
    const std::size_t bits = boost::multiprecision::msb(a) + 1;
    if (bits <= 960) {
        return std::log(a.convert_to<double>());
    }
    const std::size_t shift = bits - 64;
    const BigInt top = a >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

/// x^e over the big integers.
inline BigInt big_pow(BigInt x, unsigned e) {
    BigInt r = 1;
    while (e > 0) {
        if (e & 1u) {
            r *= x;
        }
        e >>= 1;
        if (e > 0) {
            x *= x;
        }
    }
    return r;
}

/// Dense polynomial with big-integer coefficients; coeffs()[i] multiplies X^i.
/// Canonical form has no trailing zeros, and the zero polynomial is empty.
class IntPoly {
public:
    IntPoly() = default;

    explicit IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    IntPoly(std::initializer_list<long long> coeffs) {
        coeffs_.reserve(coeffs.size());
        for (long long c : coeffs) {
            coeffs_.emplace_back(c);
        }
        trim();
    }

    static IntPoly monomial(BigInt c, std::size_t degree) {
        std::vector<BigInt> v(degree + 1);
        v[degree] = std::move(c);
        return IntPoly(std::move(v));
    }

    static IntPoly constant(BigInt c) { return IntPoly(std::vector<BigInt>{std::move(c)}); }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const BigInt& lc() const {
        if (coeffs_.empty()) {
            throw std::domain_error("IntPoly::lc: zero polynomial");
        }
        return coeffs_.back();
    }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    BigInt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

    /// gcd of the coefficients (nonnegative; 0 for the zero polynomial).
    BigInt content() const {
        BigInt c = 0;
        for (const auto& a : coeffs_) {
            c = gcd(c, a);
            if (c == 1) {
                break;
            }
        }
        return c;
    }

    /// Content-free with positive leading coefficient.
    IntPoly normalized() const {
        if (is_zero()) {
            return {};
        }
        BigInt c = content();
        if (lc() < 0) {
            c = -c;
        }
        return divided_by(c);
    }

    /// Coefficient-wise division by c, which must divide every coefficient.
    IntPoly divided_by(const BigInt& c) const {
        IntPoly out = *this;
        for (auto& a : out.coeffs_) {
            mpz_divexact(a.backend().data(), a.backend().data(), c.backend().data());
        }
        out.trim();
        return out;
    }

    IntPoly derivative() const {
        std::vector<BigInt> d;
        for (std::size_t i = 1; i < coeffs_.size(); ++i) {
            d.push_back(coeffs_[i] * static_cast<unsigned long long>(i));
        }
        return IntPoly(std::move(d));
    }

    BigInt evaluate(const BigInt& x) const {
        BigInt acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * x + *it;
        }
        return acc;
    }

    /// Value at y modulo a prime m.
    u64 evaluate_mod(u64 y, u64 m) const {
        u64 acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            BigInt r = *it % m;
            if (r < 0) {
                r += m;
            }
            acc = (mul_mod(acc, y % m, m) + r.convert_to<u64>()) % m;
        }
        return acc;
    }

    IntPoly& operator+=(const IntPoly& o) {
        if (o.coeffs_.size() > coeffs_.size()) {
            coeffs_.resize(o.coeffs_.size());
        }
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
            coeffs_[i] += o.coeffs_[i];
        }
        trim();
        return *this;
    }

    IntPoly& operator-=(const IntPoly& o) {
        if (o.coeffs_.size() > coeffs_.size()) {
            coeffs_.resize(o.coeffs_.size());
        }
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
            coeffs_[i] -= o.coeffs_[i];
        }
        trim();
        return *this;
    }

    IntPoly& operator*=(const BigInt& c) {
        for (auto& a : coeffs_) {
            a *= c;
        }
        trim();
        return *this;
    }

    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
    friend IntPoly operator*(IntPoly a, const BigInt& c) { return a *= c; }
    friend IntPoly operator-(IntPoly a) { return a *= BigInt(-1); }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return IntPoly(std::move(out));
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// Human-readable form, highest degree first, e.g. "6X^2 + 3X - 1".
    std::string to_string() const {
        if (is_zero()) {
            return "0";
        }
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            const BigInt& c = coeffs_[static_cast<std::size_t>(i)];
            if (c == 0) {
                continue;
            }
            const bool negative = c < 0;
            const BigInt mag = negative ? BigInt(-c) : c;
            if (out.empty()) {
                out += negative ? "-" : "";
            } else {
                out += negative ? " - " : " + ";
            }
            if (mag != 1 || i == 0) {
                out += mag.str();
            }
            if (i >= 1) {
                out += "X";
            }
            if (i >= 2) {
                out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) {
            coeffs_.pop_back();
        }
    }

    std::vector<BigInt> coeffs_;
};

/// R with lc(B)^{deg A - deg B + 1} A = Q B + R and deg R < deg B.
inline IntPoly pseudo_remainder(const IntPoly& A, const IntPoly& B) {
    if (B.is_zero()) {
        throw std::domain_error("pseudo_remainder: division by the zero polynomial");
    }
    if (A.degree() < B.degree()) {
        return A;
    }
    const int da = A.degree();
    const int db = B.degree();
    const BigInt& lb = B.lc();
    const auto& b = B.coeffs();
    std::vector<BigInt> r = A.coeffs();
    // One elimination step per degree from deg A down to deg B, each scaling by lc(B).
    for (int top = da; top >= db; --top) {
        const BigInt lead = r[static_cast<std::size_t>(top)];
        for (int i = 0; i < top; ++i) {
            auto* c = r[static_cast<std::size_t>(i)].backend().data();
            mpz_mul(c, c, lb.backend().data());
        }
        if (lead != 0) {
            for (int j = 0; j < db; ++j) {
                mpz_submul(r[static_cast<std::size_t>(top - db + j)].backend().data(), lead.backend().data(),
                           b[static_cast<std::size_t>(j)].backend().data());
            }
        }
        r[static_cast<std::size_t>(top)] = 0;
    }
    r.resize(static_cast<std::size_t>(db));
    return IntPoly(std::move(r));
}

/// Quotient of A by B when B divides A in Z[X]; throws otherwise.
inline IntPoly divide_exact(const IntPoly& A, const IntPoly& B) {
    if (B.is_zero()) {
        throw std::domain_error("divide_exact: division by the zero polynomial");
    }
    if (A.is_zero()) {
        return {};
    }
    if (A.degree() < B.degree()) {
        throw std::domain_error("divide_exact: " + B.to_string() + " does not divide " + A.to_string());
    }
    const std::size_t db = static_cast<std::size_t>(B.degree());
    std::vector<BigInt> r = A.coeffs();
    std::vector<BigInt> q(r.size() - db);
    for (std::size_t k = q.size(); k-- > 0;) {
        const BigInt& lead = r[k + db];
        if (lead == 0) {
            continue;
        }
        BigInt quot, rem;
        boost::multiprecision::divide_qr(lead, B.lc(), quot, rem);
        if (rem != 0) {
            throw std::domain_error("divide_exact: " + B.to_string() + " does not divide " + A.to_string());
        }
        for (std::size_t j = 0; j <= db; ++j) {
            r[k + j] -= quot * B.coeffs()[j];
        }
        q[k] = std::move(quot);
    }
    for (std::size_t i = 0; i < db; ++i) {
        if (r[i] != 0) {
            throw std::domain_error("divide_exact: " + B.to_string() + " does not divide " + A.to_string());
        }
    }
    return IntPoly(std::move(q));
}

/// Greatest common divisor over Q, normalized to integer coprime coefficients
/// and a positive leading coefficient. Subresultant pseudo-remainder sequence.
inline IntPoly poly_gcd_Q(IntPoly f, IntPoly g) {
    if (f.is_zero() && g.is_zero()) {
        throw std::domain_error("poly_gcd_Q: both arguments are zero");
    }
    if (f.degree() < g.degree()) {
        std::swap(f, g);
    }
    if (g.is_zero()) {
        return f.normalized();
    }
    IntPoly A = f.normalized();
    IntPoly B = g.normalized();
    BigInt sg = 1, sh = 1;
    while (true) {
        const unsigned delta = static_cast<unsigned>(A.degree() - B.degree());
        IntPoly R = pseudo_remainder(A, B);
        if (R.is_zero()) {
            break;
        }
        if (R.degree() == 0) {
            return IntPoly{1};
        }
        A = std::move(B);
        B = R.divided_by(sg * big_pow(sh, delta));
        sg = A.lc();
        if (delta > 0) {
            sh = big_pow(sg, delta) / big_pow(sh, delta - 1);
        }
    }
    return B.normalized();
}

/// Res(f, g) = lc(f)^{deg g} prod_{f(a)=0} g(a), the Sylvester determinant.
/// Subresultant pseudo-remainder sequence over the integers.
inline BigInt resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) {
        throw std::domain_error("resultant: zero polynomial");
    }
    const unsigned m = static_cast<unsigned>(f.degree());
    const unsigned n = static_cast<unsigned>(g.degree());
    if (n == 0) {
        return big_pow(g.lc(), m);
    }
    if (m == 0) {
        return big_pow(f.lc(), n);
    }
    const BigInt a = f.content();
    const BigInt b = g.content();
    IntPoly A = f.divided_by(a);
    IntPoly B = g.divided_by(b);
    const BigInt t = big_pow(a, n) * big_pow(b, m);
    int sign = 1;
    if (A.degree() < B.degree()) {
        std::swap(A, B);
        if (m % 2 == 1 && n % 2 == 1) {
            sign = -sign;
        }
    }
    BigInt sg = 1, sh = 1;
    while (true) {
        const unsigned da = static_cast<unsigned>(A.degree());
        const unsigned db = static_cast<unsigned>(B.degree());
        const unsigned delta = da - db;
        if (da % 2 == 1 && db % 2 == 1) {
            sign = -sign;
        }
        IntPoly R = pseudo_remainder(A, B);
        if (R.is_zero()) {
            return 0;
        }
        A = std::move(B);
        B = R.divided_by(sg * big_pow(sh, delta));
        sg = A.lc();
        if (delta > 0) {
            sh = big_pow(sg, delta) / big_pow(sh, delta - 1);
        }
        if (B.degree() == 0) {
            const unsigned dA = static_cast<unsigned>(A.degree());
            sh = big_pow(B.lc(), dA) / big_pow(sh, dA - 1);
            return sign * t * sh;
        }
    }
}

namespace detail {

/// Degree of gcd(f mod p, f' mod p) over F_p; f is assumed to keep its degree mod p.
inline int derivative_gcd_degree_mod(const IntPoly& f, u64 p) {
    auto reduce = [p](const std::vector<u64>& v) {
        std::vector<u64> out = v;
        while (!out.empty() && out.back() == 0) {
            out.pop_back();
        }
        return out;
    };
    std::vector<u64> a;
    for (const auto& c : f.coeffs()) {
        const BigInt m = c % p;
        a.push_back((m < 0 ? m + p : m).convert_to<u64>());
    }
    std::vector<u64> b;
    for (std::size_t i = 1; i < a.size(); ++i) {
        b.push_back(mul_mod(a[i], i % p, p));
    }
    a = reduce(a);
    b = reduce(b);
    while (!b.empty()) {
        // a <- a mod b
        const u64 inv = mod_inverse(b.back(), p);
        while (a.size() >= b.size()) {
            const u64 q = mul_mod(a.back(), inv, p);
            const std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) {
                a[shift + i] = (a[shift + i] + p - mul_mod(q, b[i], p)) % p;
            }
            a = reduce(a);
            if (a.empty()) {
                break;
            }
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

}  // namespace detail

/// True iff f has no repeated complex root, i.e. gcd(f, f') is constant.
/// Squarefreeness modulo a prime not dividing lc(f) certifies it over Q, so a
/// few word-size primes are tried before the exact subresultant gcd.
inline bool is_squarefree(const IntPoly& f) {
    if (f.degree() < 1) {
        throw std::domain_error("is_squarefree: constant polynomial");
    }
    for (u64 p : {2147483647ULL, 2147483629ULL, 2147483587ULL}) {
        if (f.lc() % p != 0 && static_cast<u64>(f.degree()) < p && detail::derivative_gcd_degree_mod(f, p) == 0) {
            return true;
        }
    }
    return poly_gcd_Q(f, f.derivative()).degree() == 0;
}

}  // namespace sparsesum
