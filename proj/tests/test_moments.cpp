#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "oracles.hpp"
#include "sparsesum/moments.hpp"

using namespace sparsesum;

namespace {

const std::array<u64, 4> kPrimes{7, 11, 13, 31};
const std::array<std::array<unsigned, 2>, 4> kPairs{{{3, 2}, {5, 3}, {7, 5}, {13, 7}}};

}  // namespace

TEST(CubicMoment, Examples) {
    {
        const PrimeContext ctx(7);
        const complex m = direct_cubic_moment(ctx, 7, 5);
        EXPECT_NEAR(m.real(), 12.0, 1e-5 * 7);
        EXPECT_NEAR(m.imag(), 0.0, 1e-5 * 7);
    }
    {
        const PrimeContext ctx(11);
        const complex m = direct_cubic_moment(ctx, 5, 3);
        EXPECT_NEAR(m.real(), 0.0, 1e-5 * 11);
        EXPECT_NEAR(m.imag(), 0.0, 1e-5 * 11);
    }
}

TEST(CubicMoment, MatchesLiteralTripleSum) {
    for (u64 p : {7, 11, 13}) {
        const PrimeContext ctx(p);
        for (const auto& [r, s] : kPairs) {
            const complex m = direct_cubic_moment(ctx, r, s);
            const auto want = oracle::cubic_moment(p, r, s);
            ASSERT_NEAR(m.real(), static_cast<double>(want.real()), 1e-8) << p << " " << r << " " << s;
            ASSERT_NEAR(m.imag(), static_cast<double>(want.imag()), 1e-8);
        }
    }
}

TEST(CubicMoment, EqualsBruteForceCountOnGrid) {
    for (u64 p : kPrimes) {
        const PrimeContext ctx(p);
        for (const auto& [r, s] : kPairs) {
            const complex m = direct_cubic_moment(ctx, r, s);
            const double want = static_cast<double>((p - 1) * oracle::common_zeros(p, r, s));
            ASSERT_LT(std::abs(m - complex(want, 0.0)), 1e-5 * static_cast<double>(p)) << p << " " << r << " " << s;
        }
    }
}

TEST(CubicMoment, RejectsLargePrimeAndBadExponents) {
    const PrimeContext big(131);
    EXPECT_THROW(direct_cubic_moment(big, 5, 3), std::invalid_argument);
    const PrimeContext ctx(7);
    EXPECT_THROW(direct_cubic_moment(ctx, 3, 3), std::invalid_argument);
    EXPECT_THROW(direct_cubic_moment(ctx, 3, 1), std::invalid_argument);
}

TEST(CubicMoment, ThreadCountDoesNotChangeBits) {
    const PrimeContext ctx(31);
    const auto serial = moment_sums(ctx, 13, 7);
    const auto parallel = moment_sums(ctx, 13, 7, Executor(4));
    EXPECT_EQ(serial.cubic, parallel.cubic);
    EXPECT_EQ(serial.third_abs, parallel.third_abs);
}

TEST(CountQ, Examples) {
    EXPECT_EQ(count_Q(7, 7, 5), 12);
    EXPECT_EQ(count_Q(11, 5, 3), 0);
    EXPECT_EQ(count_Q(13, 7, 5), 24);
    EXPECT_EQ(count_Q(7, 13, 7), 30);
}

TEST(CountQ, BothRoutesAgreeWithOracle) {
    for (u64 p : {7, 11, 13, 31, 37, 43, 97}) {
        for (unsigned r = 3; r <= 13; ++r) {
            for (unsigned s = 2; s < r; ++s) {
                const BigInt q = count_Q(p, r, s);
                ASSERT_EQ(q, oracle::Q(p, r, s)) << p << " " << r << " " << s;
                ASSERT_EQ(q % (p - 1), 0);
                ASSERT_EQ(count_Q_by_enumeration(p, r, s), oracle::Q(p, r, s));
            }
        }
    }
}

TEST(CountQ, LargePrimeSkipsEnumeration) {
    // Above the enumeration cap only the (p-1) N route runs.
    EXPECT_EQ(count_Q(1009, 7, 5), BigInt(1008) * count_common_zeros(1009, 7, 5).N);
    EXPECT_THROW(count_Q(9, 7, 5), std::invalid_argument);
}

TEST(LowMoments, Examples) {
    {
        const PrimeContext ctx(11);
        const auto m = low_moments(ctx, 5, 3);
        EXPECT_NEAR(m.second, 10.0, 1e-6 * 11);
        EXPECT_LT(std::abs(m.first), 1e-6 * 11);
        EXPECT_TRUE(m.first_check.passed);
        EXPECT_TRUE(m.second_check.passed);
    }
    {
        const PrimeContext ctx(13);
        EXPECT_NEAR(low_moments(ctx, 7, 5).second, 12.0, 1e-6 * 13);
    }
}

TEST(LowMoments, HoldOnGrid) {
    for (u64 p : kPrimes) {
        const PrimeContext ctx(p);
        for (const auto& [r, s] : kPairs) {
            const auto m = low_moments(ctx, r, s);
            ASSERT_LT(std::abs(m.first), 1e-6 * static_cast<double>(p));
            ASSERT_NEAR(m.second, static_cast<double>(p - 1), 1e-6 * static_cast<double>(p));
        }
    }
}

TEST(Holder, Examples) {
    const PrimeContext p7(7);
    const PrimeContext p11(11);
    const PrimeContext p13(13);
    EXPECT_TRUE(holder_check(p7, 7, 5).passed);
    EXPECT_TRUE(holder_check(p11, 5, 3).passed);
    EXPECT_TRUE(holder_check(p13, 7, 5).passed);
    const auto c = holder_check(p13, 7, 5);
    EXPECT_EQ(c.relation, Relation::AtLeast);
    EXPECT_NEAR(c.bound, std::pow(12.0, 1.5) - 1e-5 * std::pow(13.0, 1.5), 1e-12);
}

TEST(Holder, ThirdMomentDominatesSecondToThreeHalves) {
    // Holder: E|T|^3 >= (E|T|^2)^{3/2}, whatever the exponents.
    const PrimeContext ctx(31);
    for (const auto& [r, s] : kPairs) {
        const auto sums = moment_sums(ctx, r, s);
        EXPECT_GE(sums.third_abs, std::pow(sums.second, 1.5) * (1 - 1e-12));
    }
}

TEST(MomentReport, AllChecksPassOnGrid) {
    for (u64 p : kPrimes) {
        const PrimeContext ctx(p);
        for (const auto& [r, s] : kPairs) {
            const auto rep = moment_report(ctx, r, s);
            ASSERT_TRUE(rep.identities_ok) << p << " " << r << " " << s;
            ASSERT_EQ(rep.checks.size(), 5u);
            for (const auto& c : rep.checks) {
                ASSERT_TRUE(c.passed) << c.name << " p=" << p << " r=" << r << " s=" << s;
            }
            EXPECT_EQ(rep.N, oracle::common_zeros(p, r, s));
        }
    }
}
