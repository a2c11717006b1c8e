#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "oracles.hpp"
#include "sparsesum/parallel.hpp"
#include "sparsesum/prime_context.hpp"
#include "sparsesum/random.hpp"

using namespace sparsesum;

TEST(IsPrime, SmallValues) {
    EXPECT_TRUE(is_prime(2));
    EXPECT_TRUE(is_prime(10007));
    EXPECT_FALSE(is_prime(10001));
    EXPECT_THROW(is_prime(1), std::out_of_range);
    EXPECT_THROW(is_prime(0), std::out_of_range);
}

TEST(IsPrime, AgreesWithTrialDivision) {
    for (u64 n = 2; n < 20000; ++n) {
        ASSERT_EQ(is_prime(n), oracle::prime_by_trial_division(n)) << n;
    }
}

TEST(IsPrime, LargeKnownValues) {
    EXPECT_TRUE(is_prime(2147483647ULL));
    EXPECT_TRUE(is_prime(1000000007ULL));
    EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
    EXPECT_THROW(is_prime(u64{1} << 63), std::out_of_range);
}

TEST(ModPow, Examples) {
    EXPECT_EQ(mod_pow(2, 10, 1000003), 1024u);
    EXPECT_EQ(mod_pow(3, 6, 7), 1u);
    EXPECT_EQ(mod_pow(5, 0, 7), 1u);
    EXPECT_EQ(mod_pow(0, 0, 7), 1u);
    EXPECT_EQ(mod_pow(0, 5, 7), 0u);
}

TEST(ModPow, MatchesOracle) {
    SplitMix64 rng(5);
    for (int i = 0; i < 2000; ++i) {
        const u64 m = 2 + rng.below(u64{1} << 40);
        const u64 b = rng();
        const u64 e = rng.below(1u << 20);
        ASSERT_EQ(mod_pow(b, e, m), oracle::powmod(b, e, m));
    }
}

TEST(ModInverse, RoundTripAndFailure) {
    for (u64 a = 1; a < 101; ++a) {
        EXPECT_EQ(mul_mod(a, mod_inverse(a, 101), 101), 1u);
    }
    EXPECT_THROW(mod_inverse(4, 10), std::invalid_argument);
}

TEST(PrimitiveRoot, Examples) {
    EXPECT_EQ(find_primitive_root(7), 3u);
    EXPECT_EQ(find_primitive_root(11), 2u);
    EXPECT_EQ(find_primitive_root(3), 2u);
    EXPECT_THROW(find_primitive_root(9), std::invalid_argument);
    EXPECT_THROW(find_primitive_root(2), std::invalid_argument);
}

TEST(PrimitiveRoot, SmallestGeneratorMatchesOrderOracle) {
    for (u64 p : primes_up_to(3000)) {
        if (p == 2) {
            continue;
        }
        ASSERT_EQ(find_primitive_root(p), oracle::smallest_generator(p)) << p;
    }
}

TEST(PrimeContext, RejectsBadModuli) {
    EXPECT_THROW(PrimeContext(2), std::invalid_argument);
    EXPECT_THROW(PrimeContext(15), std::invalid_argument);
    EXPECT_THROW(PrimeContext(u64{1} << 31), std::invalid_argument);
    EXPECT_THROW(PrimeContext(1009, 1000), std::invalid_argument);
}

TEST(PrimeContext, UnitRootsAreCharacters) {
    const PrimeContext ctx(1009);
    EXPECT_EQ(ctx.e(0), complex(1.0, 0.0));
    for (u64 z = 0; z < ctx.p(); ++z) {
        ASSERT_NEAR(std::abs(ctx.e(z)), 1.0, 1e-12);
    }
    SplitMix64 rng(1);
    for (int i = 0; i < 5000; ++i) {
        const u64 z1 = rng.below(ctx.p());
        const u64 z2 = rng.below(ctx.p());
        ASSERT_LT(std::abs(ctx.e(z1) * ctx.e(z2) - ctx.e((z1 + z2) % ctx.p())), 1e-10);
    }
}

TEST(PrimeContext, GeneratorHasFullOrder) {
    for (u64 p : {3, 7, 11, 101, 1009, 10007}) {
        const PrimeContext ctx(p);
        EXPECT_EQ(oracle::order(ctx.g(), p), p - 1);
    }
}

TEST(DiscreteLog, Examples) {
    const PrimeContext ctx(7);
    ASSERT_EQ(ctx.g(), 3u);
    EXPECT_EQ(discrete_log(ctx, 1), 0u);
    EXPECT_EQ(discrete_log(ctx, 3), 1u);
    EXPECT_EQ(discrete_log(ctx, 6), 3u);
    EXPECT_THROW(discrete_log(ctx, 0), std::invalid_argument);
}

TEST(DiscreteLog, RoundTripExhaustive) {
    for (u64 p : {3, 5, 101, 1009, 10007}) {
        const PrimeContext ctx(p);
        const DiscreteLog dlog(ctx);
        for (u64 h = 1; h < p; ++h) {
            const u64 r = dlog(h);
            ASSERT_LE(r, p - 2);
            ASSERT_EQ(mod_pow(ctx.g(), r, p), h) << p << " " << h;
        }
    }
}

TEST(MinimalExponents, Examples) {
    {
        const PrimeContext ctx(7);
        const std::vector<u64> h{3, 3};
        EXPECT_EQ(minimal_exponent_representation(ctx, h).r, (std::vector<u64>{1, 1}));
    }
    {
        const PrimeContext ctx(11);
        const std::vector<u64> h{4, 4};
        const auto rep = minimal_exponent_representation(ctx, h);
        EXPECT_EQ(rep.r, oracle::minimal_exponents(11, h));
        EXPECT_EQ(rep.r, (std::vector<u64>{2, 2}));
    }
    {
        const PrimeContext ctx(13);
        const std::vector<u64> h{2, 6};
        const auto rep = minimal_exponent_representation(ctx, h);
        EXPECT_EQ(rep.r, (std::vector<u64>{1, 5}));
        EXPECT_EQ(rep.lambda, 1u);
    }
}

TEST(MinimalExponents, RejectsDegenerateBases) {
    const PrimeContext ctx(13);
    for (u64 bad : {0, 1, 12, 13}) {
        const std::vector<u64> h{2, bad};
        EXPECT_THROW(minimal_exponent_representation(ctx, h), std::invalid_argument);
    }
}

TEST(MinimalExponents, MatchesExhaustiveScan) {
    SplitMix64 rng(11);
    for (u64 p : {23, 101, 211, 503}) {
        const PrimeContext ctx(p);
        for (int i = 0; i < 20; ++i) {
            const std::vector<u64> h{2 + rng.below(p - 3), 2 + rng.below(p - 3)};
            ASSERT_EQ(minimal_exponent_representation(ctx, h).r, oracle::minimal_exponents(p, h));
        }
    }
}

TEST(MinimalExponents, PermutationEquivariant) {
    const PrimeContext ctx(1009);
    const std::vector<u64> h{17, 5, 300};
    const std::vector<u64> permuted{300, 17, 5};
    const auto a = minimal_exponent_representation(ctx, h).r;
    const auto b = minimal_exponent_representation(ctx, permuted).r;
    EXPECT_EQ(b, (std::vector<u64>{a[2], a[0], a[1]}));
}

TEST(MinimalExponents, AlphaIsLogRatio) {
    const PrimeContext ctx(1009);
    const std::vector<u64> h{2, 3};
    const auto rep = minimal_exponent_representation(ctx, h);
    const double m = static_cast<double>(std::max(rep.r[0], rep.r[1]));
    EXPECT_NEAR(rep.alpha, std::log(m) / std::log(1009.0), 1e-15);
}

TEST(Sieve, PrimesUpTo) {
    EXPECT_EQ(primes_up_to(20), (std::vector<u64>{2, 3, 5, 7, 11, 13, 17, 19}));
    EXPECT_EQ(primes_up_to(20000).size(), 2262u);
    EXPECT_TRUE(primes_up_to(1).empty());
}

TEST(Arithmetic, PhiAndFactors) {
    EXPECT_EQ(euler_phi(1), 1u);
    EXPECT_EQ(euler_phi(36), 12u);
    EXPECT_EQ(distinct_prime_factors(360), (std::vector<u64>{2, 3, 5}));
    EXPECT_EQ(reduce_mod(-3, 7), 4u);
}

TEST(Executor, PairwiseSumIsOrderFixed) {
    std::vector<double> v(10000);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = 1.0 / static_cast<double>(i + 1);
    }
    const double serial = Executor::serial().reduce<double>(v.size(), [&](std::size_t b, std::size_t e) {
        double s = 0;
        for (std::size_t i = b; i < e; ++i) {
            s += v[i];
        }
        return s;
    });
    for (unsigned threads : {2u, 3u, 8u}) {
        const Executor ex(threads);
        const double parallel = ex.reduce<double>(v.size(), [&](std::size_t b, std::size_t e) {
            double s = 0;
            for (std::size_t i = b; i < e; ++i) {
                s += v[i];
            }
            return s;
        });
        EXPECT_EQ(parallel, serial) << threads;  // bit-identical
    }
}

TEST(Executor, MapKeepsOrderAndPropagatesExceptions) {
    const Executor ex(4);
    const auto squares = ex.map<u64>(1000, [](std::size_t i) { return u64{i} * i; });
    for (std::size_t i = 0; i < squares.size(); ++i) {
        ASSERT_EQ(squares[i], i * i);
    }
    EXPECT_THROW(ex.map<int>(100, [](std::size_t i) -> int {
        if (i == 57) {
            throw std::runtime_error("boom");
        }
        return 0;
    }),
                 std::runtime_error);
}

TEST(Executor, NestedUseRunsInline) {
    const Executor ex(3);
    const auto outer = ex.map<u64>(8, [&](std::size_t i) {
        const auto inner = ex.map<u64>(100, [&](std::size_t j) { return u64{i + j}; });
        return std::accumulate(inner.begin(), inner.end(), u64{0});
    });
    for (std::size_t i = 0; i < outer.size(); ++i) {
        EXPECT_EQ(outer[i], 100 * i + 4950);
    }
}

TEST(Executor, ResolveThreadsHonoursEnvironment) {
    EXPECT_EQ(Executor::resolve_threads(5), 5u);
    ::setenv("EXPSUM_THREADS", "3", 1);
    EXPECT_EQ(Executor::resolve_threads(0), 3u);
    ::unsetenv("EXPSUM_THREADS");
    EXPECT_GE(Executor::resolve_threads(0), 1u);
}

TEST(SplitMix64, KnownSequenceAndBounds) {
    // Reference outputs of SplitMix64 seeded with 0.
    SplitMix64 rng(0);
    EXPECT_EQ(rng(), 0xe220a8397b1dcdafULL);
    EXPECT_EQ(rng(), 0x6e789e6aa1b965f4ULL);
    SplitMix64 other(42);
    for (int i = 0; i < 1000; ++i) {
        ASSERT_LT(other.below(7), 7u);
    }
    EXPECT_THROW(other.below(0), std::invalid_argument);
}
