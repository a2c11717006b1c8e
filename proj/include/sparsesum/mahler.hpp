#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <stdexcept>
#include <vector>

#include "sparsesum/intpoly.hpp"

namespace sparsesum {

inline constexpr double kDefaultMahlerTolerance = 1e-9;

struct MahlerMeasure {
    double value = 0.0;
    double log_value = 0.0;
    double qr_log_value = 0.0;      // companion-matrix route
    double aberth_log_value = 0.0;  // Aberth iteration route
    unsigned aberth_iterations = 0;
    int degree = 0;
    double height() const { return degree > 0 ? std::exp(log_value / degree) : 1.0; }
};

namespace detail {

using wide_real = boost::multiprecision::cpp_bin_float_50;
using wide_complex = boost::multiprecision::cpp_complex_50;

/// Monic coefficients of a squarefree factor, low degree first, in 50 digits.
inline std::vector<wide_real> monic_coefficients(const IntPoly& f) {
    const auto& c = f.coeffs();
    const wide_real lead(c.back().str());
    std::vector<wide_real> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        out[i] = wide_real(c[i].str()) / lead;
    }
    return out;
}

/// p(z) and p'(z) by Horner's rule for a monic p.
inline std::pair<wide_complex, wide_complex> evaluate_with_slope(const std::vector<wide_real>& monic,
                                                                   const wide_complex& z) {
    wide_complex value = 1;
    wide_complex slope = 0;
    for (std::size_t i = monic.size() - 1; i-- > 0;) {
        slope = slope * z + value;
        value = value * z + monic[i];
    }
    return {value, slope};
}

inline const wide_real& wide_epsilon() {
    static const wide_real eps("1e-32");
    return eps;
}

using WideMatrix = Eigen::Matrix<wide_real, Eigen::Dynamic, Eigen::Dynamic>;

/// Parlett-Reinsch balancing with power-of-two scalings.
inline void balance(WideMatrix& m) {
    const Eigen::Index n = m.rows();
    bool converged = false;
    while (!converged) {
        converged = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = 0.0;
            double r = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j != i) {
                    c += std::abs(m(j, i).convert_to<double>());
                    r += std::abs(m(i, j).convert_to<double>());
                }
            }
            if (c == 0.0 || r == 0.0) {
                continue;
            }
            double f = 1.0;
            const double s = c + r;
            while (c < r / 2.0) {
                c *= 2.0;
                r /= 2.0;
                f *= 2.0;
            }
            while (c >= r * 2.0) {
                c /= 2.0;
                r *= 2.0;
                f /= 2.0;
            }
            if ((c + r) < 0.95 * s) {
                converged = false;
                m.row(i) /= f;
                m.col(i) *= f;
            }
        }
    }
}

/// Eigenvalues of the balanced companion matrix, computed by Eigen's real
/// Schur iteration in 50-digit arithmetic and polished by Newton steps.
inline std::vector<wide_complex> companion_roots(const std::vector<wide_real>& monic) {
    const auto n = static_cast<Eigen::Index>(monic.size() - 1);
    WideMatrix m = WideMatrix::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) {
        m(i, i - 1) = 1.0;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, n - 1) = -monic[static_cast<std::size_t>(i)];
    }
    balance(m);
    Eigen::EigenSolver<WideMatrix> solver(m, false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("mahler_measure: companion eigenvalue iteration did not converge (degree " +
                                 std::to_string(n) + ")");
    }
    std::vector<wide_complex> roots(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto seed = solver.eigenvalues()[i];
        wide_complex z(seed.real(), seed.imag());
        for (int step = 0; step < 100; ++step) {
            const auto [value, slope] = evaluate_with_slope(monic, z);
            if (value == wide_complex(0) || slope == wide_complex(0)) {
                break;
            }
            const wide_complex delta = value / slope;
            z -= delta;
            if (abs(delta) < wide_epsilon() * std::max(wide_real(1), wide_real(abs(z)))) {
                break;
            }
        }
        roots[static_cast<std::size_t>(i)] = z;
    }
    return roots;
}

struct AberthResult {
    std::vector<wide_complex> roots;
    unsigned iterations = 0;
};

/// Simultaneous Aberth-Ehrlich iteration on a monic squarefree polynomial.
inline AberthResult aberth_roots(const std::vector<wide_real>& monic, double tol, unsigned max_iterations = 1000) {
    const std::size_t n = monic.size() - 1;
    // Start on the circle whose radius is the geometric mean of the root moduli.
    const double radius = std::clamp(std::pow(std::abs(monic[0].convert_to<double>()), 1.0 / static_cast<double>(n)),
                                     1e-3, 1e3);
    std::vector<wide_complex> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        // The offset angle avoids starting on a symmetry axis of real polynomials.
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
        z[k] = wide_complex(radius * std::cos(theta), radius * std::sin(theta));
    }
    wide_real worst = 0;
    wide_real best = 1e300;
    unsigned stalled = 0;
    for (unsigned it = 1; it <= max_iterations; ++it) {
        worst = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const auto [value, slope] = evaluate_with_slope(monic, z[k]);
            if (value == wide_complex(0)) {
                continue;
            }
            const wide_complex ratio = value / slope;
            wide_complex repulsion = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != k) {
                    repulsion += wide_real(1) / (z[k] - z[j]);
                }
            }
            const wide_complex step = ratio / (wide_real(1) - ratio * repulsion);
            z[k] -= step;
            worst = std::max(worst, wide_real(abs(step) / std::max(wide_real(1), wide_real(abs(z[k])))));
        }
        // Working precision puts a floor under the step size at high degree;
        // steps that stop shrinking well below tol count as converged.
        if (worst < best / 2) {
            best = worst;
            stalled = 0;
        } else {
            ++stalled;
        }
        if (worst < wide_epsilon() || (worst < tol * 1e-3 && stalled >= 10)) {
            return {std::move(z), it};
        }
    }
    std::ostringstream msg;
    msg << "mahler_measure: Aberth iteration did not converge after " << max_iterations
        << " iterations (degree " << n << ", last relative step " << worst.convert_to<double>() << ")";
    throw std::runtime_error(msg.str());
}

inline double log_plus_sum(const std::vector<wide_complex>& roots) {
    wide_real total = 0;
    for (const auto& z : roots) {
        const wide_real modulus = abs(z);
        if (modulus > 1) {
            total += log(modulus);
        }
    }
    return total.convert_to<double>();
}

}  // namespace detail

/// Mahler measure |lc(f)| prod max(1, |alpha|) over the complex roots of f,
/// computed on the squarefree layers of f by two independent root finders
/// that must agree to within tol.
inline MahlerMeasure mahler_measure_report(const IntPoly& f, double tol = kDefaultMahlerTolerance) {
    if (f.degree() < 1) {
        throw std::invalid_argument("mahler_measure: polynomial must have degree at least 1");
    }
    if (!(tol > 0.0 && tol <= 1e-3)) {
        throw std::invalid_argument("mahler_measure: tol must lie in (0, 1e-3]");
    }
    MahlerMeasure out;
    out.degree = f.degree();
    const double log_lc = log_abs(f.lc());
    // Roots at 0 do not contribute, so powers of X are stripped first.
    std::size_t low = 0;
    while (f.coeff(low) == 0) {
        ++low;
    }
    std::vector<BigInt> shifted(f.coeffs().begin() + static_cast<std::ptrdiff_t>(low), f.coeffs().end());
    IntPoly layer = IntPoly(std::move(shifted)).normalized();
    double qr = 0.0;
    double aberth = 0.0;
    // A_{k+1} = gcd(A_k, A_k'); A_k / A_{k+1} carries the roots of multiplicity >= k.
    while (layer.degree() >= 1) {
        IntPoly next = poly_gcd_Q(layer, layer.derivative());
        const IntPoly simple = divide_exact(layer, next);
        if (simple.degree() >= 1) {
            const auto monic = detail::monic_coefficients(simple);
            qr += detail::log_plus_sum(detail::companion_roots(monic));
            const auto result = detail::aberth_roots(monic, tol);
            aberth += detail::log_plus_sum(result.roots);
            out.aberth_iterations = std::max(out.aberth_iterations, result.iterations);
        }
        layer = std::move(next);
    }
    out.qr_log_value = log_lc + qr;
    out.aberth_log_value = log_lc + aberth;
    if (std::abs(qr - aberth) > tol * std::max(1.0, std::abs(out.qr_log_value))) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "mahler_measure: root finders disagree, log M = " << out.qr_log_value << " (QR) vs "
            << out.aberth_log_value << " (Aberth) after " << out.aberth_iterations << " iterations";
        throw std::runtime_error(msg.str());
    }
    out.log_value = out.qr_log_value;
    out.value = std::exp(out.log_value);
    return out;
}

inline double mahler_measure(const IntPoly& f, double tol = kDefaultMahlerTolerance) {
    return mahler_measure_report(f, tol).value;
}

}  // namespace sparsesum
