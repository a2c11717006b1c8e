// Text histogram of T_3/sqrt(p) next to the semicircle density.
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "sparsesum.hpp"

using namespace sparsesum;

int main() {
    const PrimeContext ctx(1009);
    const Executor ex(Executor::resolve_threads(0));
    const SemicircleExperiment e = semicircle_experiment(ctx, 20000, 7, SamplingMode::Random, ex);
    const auto& h = e.distribution.histogram;
    const double n = static_cast<double>(e.rows.size());
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        const double mid = (h.edges[i] + h.edges[i + 1]) / 2.0;
        const double width = h.edges[i + 1] - h.edges[i];
        const double expected = std::sqrt(4.0 - mid * mid) / (2.0 * std::numbers::pi) * width * n;
        std::printf("%+5.2f %6llu %6.0f %s\n", mid, static_cast<unsigned long long>(h.counts[i]), expected,
                    std::string(static_cast<std::size_t>(h.counts[i] / 40), '#').c_str());
    }
    std::printf("KS distance %.4f\n", e.distribution.ks_distance);
}
