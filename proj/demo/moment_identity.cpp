// Compares the cubic moment M_p(r,s) with (p-1) N_p(r,s) for a few primes.
#include <cstdio>

#include "sparsesum.hpp"

using namespace sparsesum;

int main() {
    const unsigned r = 7, s = 5;
    for (u64 p : {7, 11, 13, 19, 31, 37}) {
        const PrimeContext ctx(p);
        const MomentReport m = moment_report(ctx, r, s);
        std::printf("p=%-3llu  M=%10.6f%+.1e i  Q=%-4s N=%llu  second=%.6f  third=%.3f\n",
                    static_cast<unsigned long long>(p), m.M_float.real(), m.M_float.imag(),
                    to_decimal(m.Q_exact).c_str(), static_cast<unsigned long long>(m.N), m.second_moment_float,
                    m.third_abs_moment);
    }
}
