#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crpow/bounds.hpp"
#include "crpow/oracle.hpp"
#include "crpow/powers.hpp"
#include "support.hpp"

#include <random>

using namespace crpow;
using namespace crpow::test;

namespace {
constexpr auto RN = RoundingMode::NearestEven;

FpNumber fp_int(std::int64_t k, int p) { return FpNumber::from_exact(ev(k), Precision(p)); }
}  // namespace

TEST_CASE("lin_power: examples") {
    Precision p(53);
    DoubleWord r = lin_power(fp_int(3, 53), 5);
    CHECK(r.hi == fp_int(243, 53));
    CHECK(r.lo.is_zero());

    FpNumber x = FpNumber::from_exact(ev(1) + ExactValue::pow2(-27), p);
    DoubleWord one_step = lin_power(x, 2);  // (1+2^-27)^2 = 1 + 2^-26 + 2^-54, inexact at p=53
    CHECK(one_step.hi == FpNumber::from_exact(ev(1) + ExactValue::pow2(-26), p));
    CHECK(one_step.lo == FpNumber::from_exact(ExactValue::pow2(-54), p));

    // (1+2^-26)^2 fits in 53 bits, so the single Fast2Mult is exact
    FpNumber y = FpNumber::from_exact(ev(1) + ExactValue::pow2(-26), p);
    DoubleWord exact_sq = lin_power(y, 2);
    CHECK(exact_sq.hi == FpNumber::from_exact(y.to_exact() * y.to_exact(), p));
    CHECK(exact_sq.lo.is_zero());

    DoubleWord id = lin_power(x, 1);
    CHECK(id.hi == x);
    CHECK(id.lo.is_zero());

    CHECK_THROWS_AS(lin_power(x, 0), std::invalid_argument);
    CHECK_THROWS_AS(lin_power(FpNumber::zero(p), 3), std::invalid_argument);
}

TEST_CASE("log_power: examples") {
    Precision p(53);
    FpNumber x = fp("1.011x2^-2", 53);
    DoubleWord id = log_power(x, 1);
    CHECK(id.hi == x);
    CHECK(id.lo.is_zero());

    DoubleWord r = log_power(fp_int(3, 53), 5);
    CHECK(r.hi == fp_int(243, 53));
    CHECK(r.lo.is_zero());

    CHECK_THROWS_AS(log_power(x, 0), std::invalid_argument);
}

TEST_CASE("exactly representable powers come out exact in both algorithms") {
    for (int p : {11, 24, 53}) {
        for (std::int64_t base : {2, 3, 5, 7, 6, 10}) {
            for (std::int64_t n = 1; n <= 8; ++n) {
                ExactValue want = ev(base).pow(static_cast<std::uint64_t>(n));
                if (want.bit_length() > p) continue;
                FpNumber x = fp_int(base, p);
                for (auto alg : {PowerAlgorithm::Linear, PowerAlgorithm::Log}) {
                    DoubleWord r = alg == PowerAlgorithm::Linear ? lin_power(x, n) : log_power(x, n);
                    CHECK(r.hi == FpNumber::from_exact(want, Precision(p)));
                    CHECK(r.lo.is_zero());
                }
            }
        }
    }
}

TEST_CASE("flop_count formulas and measured counts") {
    CHECK(flop_count(1, PowerAlgorithm::Linear).min == 0);
    CHECK(flop_count(2, PowerAlgorithm::Linear).min == 3);
    CHECK(flop_count(2, PowerAlgorithm::Linear).max == 3);
    FlopRange log8 = flop_count(8, PowerAlgorithm::Log);
    CHECK(log8.min == 44);
    CHECK(log8.max == 77);
    CHECK(measured_flops(8, PowerAlgorithm::Log) == 44);  // n = 2^3: squarings only
    CHECK(flop_count(1, PowerAlgorithm::Log).min == 11);
    CHECK_THROWS_AS(flop_count(0, PowerAlgorithm::Log), std::invalid_argument);

    for (std::int64_t n = 1; n <= 300; ++n) {
        CHECK(measured_flops(n, PowerAlgorithm::Linear) == 3 * n - 3);
        FlopRange fr = flop_count(n, PowerAlgorithm::Log);
        long long got = measured_flops(n, PowerAlgorithm::Log);
        CHECK(got >= fr.min);
        CHECK(got <= fr.max);
    }
}

TEST_CASE("crossover happens around 30") {
    std::int64_t c = flop_crossover(256);
    CHECK(c >= 20);
    CHECK(c <= 40);
}

TEST_CASE("log_power meets its relative-error bound at p=11 (sampled sweep)") {
    const Precision p(11);
    std::mt19937_64 rng(301);
    for (int i = 0; i < 3000; ++i) {
        FpNumber x = rand_fp(rng, 11, 0, 0, false);
        std::int64_t n = rand_range(rng, 2, 100);
        DoubleWord r = log_power(x, n);
        ExactValue ref = exact_pow(x, n);
        ExactValue err = (r.to_exact() - ref).abs();
        ExactValue bound = logpower_alpha_max(n, p).value.upper;
        CHECK(err <= bound * ref.abs());
        // and the rounded sum is faithful
        CHECK(is_faithful(round(r.to_exact(), p, RN), ref));
    }
}

TEST_CASE("lin and log agree within the sum of their bounds") {
    const Precision p(24);
    std::mt19937_64 rng(302);
    for (int i = 0; i < 1500; ++i) {
        FpNumber x = rand_fp(rng, 24, 0, 0, false);
        std::int64_t n = rand_range(rng, 3, 60);
        ExactValue a = lin_power(x, n).to_exact();
        ExactValue b = log_power(x, n).to_exact();
        ExactValue ref = exact_pow(x, n);
        ExactValue allowance =
            (logpower_alpha_max(n, p).value.upper + linpower_alpha_max(n, p).value.upper) * ref.abs();
        CHECK((a - b).abs() <= allowance);
    }
}

TEST_CASE("negative x powers track the sign") {
    Precision p(24);
    FpNumber x = fp("1.1", 24).negated();
    DoubleWord r = log_power(x, 3);
    CHECK(r.to_exact() == exact_pow(x, 3));  // exact for tiny operand
    CHECK(r.hi.is_negative());
    DoubleWord s = lin_power(x, 4);
    CHECK(s.hi.sign() == +1);
}

TEST_CASE("pow_correctly_rounded: basic behavior") {
    Precision work(64), target(53);
    PowerRequest req{fp_int(3, 53), 5, work, target};
    CHECK(pow_correctly_rounded(req) == fp_int(243, 53));

    PowerRequest same{fp_int(3, 53), 5, Precision(53), Precision(53)};
    CHECK(pow_correctly_rounded(same) == fp_int(243, 53));

    PowerRequest bad{fp_int(3, 53), 0, work, target};
    CHECK_THROWS_AS(pow_correctly_rounded(bad), std::invalid_argument);
    PowerRequest neg{fp_int(3, 53).negated(), 3, work, target};
    CHECK_THROWS_AS(pow_correctly_rounded(neg), std::invalid_argument);
    PowerRequest wide{fp_int(3, 53), 3, Precision(24), Precision(53)};
    CHECK_THROWS_AS(pow_correctly_rounded(wide), std::invalid_argument);
}

TEST_CASE("pow_correctly_rounded: p=24 work, p=11 target, certified n round correctly") {
    const Precision work(24), target(11);
    std::mt19937_64 rng(303);
    for (std::int64_t n : {3, 5, 8, 13, 20}) {
        auto worst = search_worst_cases(target, n);
        REQUIRE(worst.has_value());
        CHECK(correct_rounding_margin(n, work, target, static_cast<int>(worst->run_len)) ==
              MarginResult::Certified);
        for (int i = 0; i < 400; ++i) {
            FpNumber x = rand_fp(rng, 11, 0, 0, false);
            FpNumber got = pow_correctly_rounded({x, n, work, target});
            CHECK(got == round(exact_pow(x, n), target, RN));
        }
    }
}

TEST_CASE("operation counts flow through the powering calls") {
    OpCount ops;
    lin_power(fp_int(3, 24), 7, &ops);
    CHECK(ops.total() == 18);
    CHECK(ops.muls == 6);
    CHECK(ops.fmas == 12);  // one in each Fast2Mult plus the Horner step
    OpCount logops;
    log_power(fp_int(3, 24), 7, &logops);
    FlopRange fr = flop_count(7, PowerAlgorithm::Log);
    CHECK(logops.total() >= fr.min);
    CHECK(logops.total() <= fr.max);
}
