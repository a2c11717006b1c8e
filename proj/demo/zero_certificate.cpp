// Prints D, R and the common-zero certificate for one exponent pair.
#include <cstdlib>
#include <iostream>

#include "sparsesum.hpp"

using namespace sparsesum;

int main(int argc, char** argv) {
    const unsigned r = argc > 1 ? static_cast<unsigned>(std::atoi(argv[1])) : 13;
    const unsigned s = argc > 2 ? static_cast<unsigned>(std::atoi(argv[2])) : 7;
    const ResultantCertificate cert = compute_R(r, s);
    std::cout << "D = " << cert.D.to_string() << "\nR = " << to_decimal(cert.R) << "\n";
    for (u64 p : primes_up_to(60)) {
        const ZeroCertificate z = count_common_zeros(p, cert);
        if (z.N > 0) {
            std::cout << "p = " << p << ": N = " << z.N << ", divides R: " << (cert.R % p == 0 ? "yes" : "no")
                      << "\n";
        }
    }
    const ExceptionalPrimes e = exceptional_primes(r, s, 1000);
    std::cout << to_json(e).dump(2) << "\n";
}
