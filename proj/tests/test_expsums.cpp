#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "oracles.hpp"
#include "sparsesum/expsums.hpp"
#include "sparsesum/random.hpp"
#include "sparsesum/reference.hpp"

using namespace sparsesum;

namespace {

// Golden values, frozen from the long-double oracles in oracles.hpp and
// confirmed with 30-digit arithmetic.
constexpr double kV0re = 1.579416801848523848, kV0im = -0.588735052754236010;  // S, p=7, a=(1,1), h=(2,3)
constexpr double kV1re = 0.193849466336538226, kV1im = 1.377775730407867269;   // T, p=11, a=(1,1), r=(2,3)
constexpr double kV2re = 1.193849466336538226, kV2im = 1.377775730407867269;   // binomial, p=11, (1,1,3,2)
constexpr double kW0 = 2020.392184452653941;                                   // W_1, p=503, a=1, K=10, H=20

void expect_close(const ComplexValue& v, oracle::cplx want, double tol) {
    EXPECT_NEAR(v.re, static_cast<double>(want.real()), tol);
    EXPECT_NEAR(v.im, static_cast<double>(want.imag()), tol);
}

}  // namespace

TEST(SumS, ZeroCoefficientsGivePMinusOne) {
    const PrimeContext ctx(101);
    const auto v = sum_S(ctx, std::vector<u64>{0, 0}, std::vector<u64>{2, 3});
    EXPECT_NEAR(v.re, 100.0, 1e-12);
    EXPECT_NEAR(v.im, 0.0, 1e-12);
}

TEST(SumS, PrimitiveRootBaseGivesMinusOne) {
    for (u64 p : {7, 101, 1009}) {
        const PrimeContext ctx(p);
        for (u64 a : {u64{1}, p - 1, p / 2}) {
            const auto v = sum_S(ctx, std::vector<u64>{a}, std::vector<u64>{ctx.g()});
            EXPECT_NEAR(v.re, -1.0, 1e-10);
            EXPECT_NEAR(v.im, 0.0, 1e-10);
        }
    }
}

TEST(SumS, GoldenValue) {
    const PrimeContext ctx(7);
    const auto v = sum_S(ctx, std::vector<u64>{1, 1}, std::vector<u64>{2, 3});
    EXPECT_NEAR(v.re, kV0re, 1e-12);
    EXPECT_NEAR(v.im, kV0im, 1e-12);
    expect_close(v, oracle::S(7, {1, 1}, {2, 3}), 1e-12);
    EXPECT_EQ(v.terms, 6u);
}

TEST(SumS, RejectsBadArguments) {
    const PrimeContext ctx(11);
    EXPECT_THROW(sum_S(ctx, std::vector<u64>{1}, std::vector<u64>{1}), std::invalid_argument);
    EXPECT_THROW(sum_S(ctx, std::vector<u64>{1}, std::vector<u64>{10}), std::invalid_argument);
    EXPECT_THROW(sum_S(ctx, std::vector<u64>{1, 1}, std::vector<u64>{2}), std::invalid_argument);
    EXPECT_THROW(sum_S(ctx, std::vector<u64>{11}, std::vector<u64>{2}), std::invalid_argument);
}

TEST(SumS, MatchesOracleOnRandomInstances) {
    SplitMix64 rng(3);
    for (u64 p : {13, 101, 499, 1009}) {
        const PrimeContext ctx(p);
        for (int i = 0; i < 10; ++i) {
            const std::vector<u64> a{rng.below(p), rng.below(p), rng.below(p)};
            const std::vector<u64> h{2 + rng.below(p - 3), 2 + rng.below(p - 3), 2 + rng.below(p - 3)};
            expect_close(sum_S(ctx, a, h), oracle::S(p, a, h), 1e-9);
        }
    }
}

TEST(SumS, ThreadCountDoesNotChangeBits) {
    const PrimeContext ctx(100003);
    const std::vector<u64> a{3, 7};
    const std::vector<u64> h{2, 5};
    const auto serial = sum_S(ctx, a, h);
    for (unsigned threads : {2u, 5u}) {
        const auto parallel = sum_S(ctx, a, h, Executor(threads));
        EXPECT_EQ(parallel.re, serial.re);
        EXPECT_EQ(parallel.im, serial.im);
    }
}

TEST(SumT, LinearMonomialGivesMinusOne) {
    const PrimeContext ctx(1009);
    const auto v = sum_T(ctx, std::vector<u64>{1}, std::vector<u64>{1});
    EXPECT_NEAR(v.re, -1.0, 1e-10);
    EXPECT_NEAR(v.im, 0.0, 1e-10);
}

TEST(SumT, GoldenValue) {
    const PrimeContext ctx(11);
    const auto v = sum_T(ctx, std::vector<u64>{1, 1}, std::vector<u64>{2, 3});
    EXPECT_NEAR(v.re, kV1re, 1e-12);
    EXPECT_NEAR(v.im, kV1im, 1e-12);
    expect_close(v, oracle::T(11, {1, 1}, {2, 3}), 1e-12);
}

TEST(SumT, BothRoutesAgreeExhaustivelyForSmallPrime) {
    const u64 p = 61;
    const PrimeContext ctx(p);
    for (u64 r1 = 1; r1 <= p - 2; ++r1) {
        for (u64 r2 = 1; r2 <= p - 2; r2 += 7) {
            const std::vector<u64> a{1, 5};
            const std::vector<u64> r{r1, r2};
            const auto via_dlog = sum_T(ctx, a, r);
            const auto direct = sum_T_direct(ctx, a, r);
            ASSERT_NEAR(via_dlog.re, direct.re, 1e-9);
            ASSERT_NEAR(via_dlog.im, direct.im, 1e-9);
        }
    }
}

TEST(SumT, MatchesOracle) {
    SplitMix64 rng(8);
    const u64 p = 1009;
    const PrimeContext ctx(p);
    for (int i = 0; i < 10; ++i) {
        const std::vector<u64> a{1 + rng.below(p - 1), 1 + rng.below(p - 1)};
        const std::vector<u64> r{1 + rng.below(p - 2), 1 + rng.below(p - 2)};
        expect_close(sum_T(ctx, a, r), oracle::T(p, a, r), 1e-9);
    }
}

TEST(Binomial, EqualExponentsCancellingCoefficients) {
    const PrimeContext ctx(11);
    const auto v = binomial_sum(ctx, 1, 10, 2, 2);
    EXPECT_NEAR(v.re, 11.0, 1e-12);
    EXPECT_NEAR(v.im, 0.0, 1e-12);
}

TEST(Binomial, EqualBijectiveExponentsVanish) {
    const PrimeContext ctx(101);
    // gcd(3, 100) = 1 so x -> x^3 permutes F_p.
    const auto v = binomial_sum(ctx, 4, 9, 3, 3);
    EXPECT_NEAR(v.abs(), 0.0, 1e-10);
}

TEST(Binomial, GoldenValueIncludesZero) {
    const PrimeContext ctx(11);
    const auto v = binomial_sum(ctx, 1, 1, 3, 2);
    EXPECT_NEAR(v.re, kV2re, 1e-12);
    EXPECT_NEAR(v.im, kV2im, 1e-12);
    expect_close(v, oracle::binomial(11, 1, 1, 3, 2), 1e-12);
    // The x = 0 term is the only difference from the sum over F_p^*.
    const auto t = sum_T(ctx, std::vector<u64>{1, 1}, std::vector<u64>{3, 2});
    EXPECT_NEAR(v.re - t.re, 1.0, 1e-12);
}

TEST(Binomial, RejectsZeroExponent) {
    const PrimeContext ctx(11);
    EXPECT_THROW(binomial_sum(ctx, 1, 1, 0, 2), std::invalid_argument);
}

TEST(CochranePinner, Examples) {
    const PrimeContext ctx(101);
    EXPECT_TRUE(cochrane_pinner_check(ctx, 1, 1, 5, 3).passed);
    const PrimeContext small(11);
    const auto c = cochrane_pinner_check(small, 1, 10, 2, 2);
    EXPECT_NEAR(c.observed, 11.0, 1e-10);
    EXPECT_NEAR(c.bound, 10.0 + 2.292 * std::pow(2.0, 13.0 / 46.0) * std::pow(11.0, 89.0 / 92.0), 1e-9);
    EXPECT_TRUE(c.passed);
    EXPECT_EQ(c.kind, CheckKind::Hard);
}

TEST(CochranePinner, RandomSweep) {
    SplitMix64 rng(42);
    for (u64 p : {101, 499, 1009}) {
        const PrimeContext ctx(p);
        for (int i = 0; i < 100; ++i) {
            const u64 a = 1 + rng.below(p - 1);
            const u64 b = 1 + rng.below(p - 1);
            const u64 e = 1 + rng.below(2 * p);
            const u64 f = 1 + rng.below(2 * p);
            const auto c = cochrane_pinner_check(ctx, a, b, e, f);
            ASSERT_TRUE(c.passed) << p << " " << a << " " << b << " " << e << " " << f;
        }
    }
}

TEST(Weil, Examples) {
    {
        const PrimeContext ctx(101);
        const auto c = weil_check(ctx, std::vector<u64>{1}, std::vector<u64>{1});
        EXPECT_FALSE(c.skipped);
        EXPECT_TRUE(c.passed);
        EXPECT_NEAR(c.observed, 1.0, 1e-10);
    }
    {
        const PrimeContext ctx(1009);
        const auto c = weil_check(ctx, std::vector<u64>{1, 1}, std::vector<u64>{2, 3});
        EXPECT_FALSE(c.skipped);
        EXPECT_TRUE(c.passed);
    }
    {
        const PrimeContext ctx(10007);
        const auto c = weil_check(ctx, std::vector<u64>{1, 2, 3}, std::vector<u64>{2, 5, 11});
        EXPECT_FALSE(c.skipped);
        EXPECT_TRUE(c.passed);
    }
}

TEST(Weil, SkipsWhenVacuousOrMalformed) {
    const PrimeContext ctx(101);
    EXPECT_TRUE(weil_check(ctx, std::vector<u64>{1}, std::vector<u64>{50}).skipped);
    EXPECT_TRUE(weil_check(ctx, std::vector<u64>{1, 1}, std::vector<u64>{3, 3}).skipped);
    EXPECT_TRUE(weil_check(ctx, std::vector<u64>{0}, std::vector<u64>{3}).skipped);
    EXPECT_TRUE(weil_check(ctx, std::vector<u64>{1, 1}, std::vector<u64>{3}).skipped);
}

TEST(DoubleSumW, SingleElementInterval) {
    const PrimeContext ctx(101);
    EXPECT_NEAR(double_sum_W(ctx, 7, 4, 1, 1), 100.0, 1e-10);
    EXPECT_NEAR(double_sum_W(ctx, 7, 4, 1, 2), 100.0, 1e-10);
}

TEST(DoubleSumW, GoldenValue) {
    const PrimeContext ctx(503);
    EXPECT_NEAR(double_sum_W(ctx, 1, 10, 20, 1), kW0, 1e-8);
    EXPECT_NEAR(double_sum_W(ctx, 1, 10, 20, 1), static_cast<double>(oracle::W(503, 1, 10, 20, 1)), 1e-8);
}

TEST(DoubleSumW, FullIntervalMatchesOracle) {
    const u64 p = 211;
    const PrimeContext ctx(p);
    EXPECT_NEAR(double_sum_W(ctx, 3, 0, p - 1, 2), static_cast<double>(oracle::W(p, 3, 0, p - 1, 2)), 1e-6);
}

TEST(DoubleSumW, MatchesReferenceAndRejectsBadK) {
    const PrimeContext ctx(499);
    for (int k : {1, 2}) {
        EXPECT_NEAR(double_sum_W(ctx, 5, 3, 17, k), reference::double_sum_W_by_powers(ctx, 5, 3, 17, k), 1e-8);
    }
    EXPECT_THROW(double_sum_W(ctx, 5, 3, 17, 3), std::invalid_argument);
    EXPECT_THROW(double_sum_W(ctx, 0, 3, 17, 1), std::invalid_argument);
    EXPECT_THROW(double_sum_W(ctx, 1, 480, 30, 1), std::invalid_argument);
}

TEST(WMonitor, RecordsRatios) {
    const PrimeContext ctx(1009);
    for (int k : {1, 2}) {
        const auto c = w_bound_monitor(ctx, 1, 0, 30, k);
        EXPECT_EQ(c.kind, CheckKind::Monitored);
        EXPECT_GT(c.ratio, 0.0);
        EXPECT_TRUE(c.passed);
    }
    const auto one = w_bound_monitor(ctx, 1, 0, 1, 1);
    EXPECT_NEAR(one.observed, 1008.0, 1e-9);
    EXPECT_LT(one.ratio, 1.0);
}

TEST(AverageU, SingleTermReducesToS) {
    const PrimeContext ctx(101);
    const auto u = average_U(ctx, {3, 4}, 1, 6);
    const auto s = sum_S(ctx, std::vector<u64>{3, 4}, std::vector<u64>{7, 7});
    EXPECT_NEAR(u.re, s.re, 1e-10);
    EXPECT_NEAR(u.im, s.im, 1e-10);
    EXPECT_NEAR(average_V(ctx, {3, 4}, 1, 6), s.abs(), 1e-10);
}

TEST(AverageU, GoldenValue) {
    const PrimeContext ctx(101);
    const auto u = average_U(ctx, {1, 1}, 5, 1);
    EXPECT_NEAR(u.re, 74.147273726910070, 1e-6);
    EXPECT_NEAR(u.im, 7.317297142054499758, 1e-6);
    expect_close(u, oracle::U(101, 1, 1, 5, 1), 1e-9);
}

TEST(AverageU, MatchesOracleWithLargerInterval) {
    const PrimeContext ctx(1009);
    const auto u = average_U(ctx, {1, 2}, 30, 1);
    const auto want = oracle::U(1009, 1, 2, 30, 1);
    EXPECT_LT(std::abs(u.value() - complex(static_cast<double>(want.real()), static_cast<double>(want.imag()))),
              1e-6 * std::max(1.0, static_cast<double>(std::abs(want))));
}

TEST(AverageU, DefinitionRouteAgrees) {
    SplitMix64 rng(20);
    for (u64 p : {101, 251, 503}) {
        const PrimeContext ctx(p);
        for (int i = 0; i < 4; ++i) {
            const CoefficientPair a{1 + rng.below(p - 1), 1 + rng.below(p - 1)};
            const u64 H = 1 + rng.below(12);
            const u64 K = rng.below(p - 1 - H);
            const auto swapped = average_U(ctx, a, H, K);
            const auto direct = reference::average_U_by_definition(ctx, a, H, K);
            ASSERT_LT(std::abs(swapped.value() - direct.value()), 1e-6 * std::max(1.0, direct.abs()));
        }
    }
}

TEST(AverageV, GoldenValueAndOracle) {
    const PrimeContext ctx(503);
    const double v = average_V(ctx, {1, 1}, 10, 1);
    EXPECT_NEAR(v, 2488.696177299359495, 1e-8);
    EXPECT_NEAR(v, static_cast<double>(oracle::V(503, 1, 1, 10, 1)), 1e-8);
}

TEST(AverageV, DominatesModulusOfU) {
    const PrimeContext ctx(251);
    const auto u = average_U(ctx, {2, 9}, 15, 0);
    EXPECT_LE(u.abs(), average_V(ctx, {2, 9}, 15, 0) + 1e-9);
}

TEST(TheoremRatios, HarnessExamples) {
    const PrimeContext ctx(1009);
    const auto t = theorem_ratios(ctx, {1, 1}, 31, 0, 2);
    for (const auto& c : t.checks) {
        EXPECT_EQ(c.kind, CheckKind::Monitored);
        EXPECT_TRUE(c.passed) << c.name << " " << c.ratio;
    }
    const PrimeContext ctx2(2003);
    const auto t2 = theorem_ratios(ctx2, {1, 2}, 44, 0, 2);
    for (const auto& c : t2.checks) {
        EXPECT_TRUE(c.passed) << c.name << " " << c.ratio;
    }
}

TEST(TheoremRatios, TinyIntervalIsSkippedAsVacuous) {
    const PrimeContext ctx(1009);
    const auto t = theorem_ratios(ctx, {1, 1}, 2, 0, 1);
    for (const auto& c : t.checks) {
        EXPECT_TRUE(c.skipped) << c.name;
        EXPECT_TRUE(c.passed);
        EXPECT_FALSE(c.note.empty());
    }
}

TEST(TheoremRatios, HypothesesOnCoefficients) {
    const PrimeContext ctx(101);
    const auto zero = theorem_ratios(ctx, {0, 0}, 5, 0, 1);
    EXPECT_TRUE(zero.checks[0].skipped);
    const auto half = theorem_ratios(ctx, {0, 3}, 5, 0, 1);
    EXPECT_TRUE(half.checks[1].skipped);
    EXPECT_TRUE(half.checks[2].skipped);
    EXPECT_THROW(theorem_ratios(ctx, {1, 1}, 5, 0, 0), std::invalid_argument);
}
