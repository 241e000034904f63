#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crpow/eft.hpp"
#include "support.hpp"

#include <random>

using namespace crpow;
using namespace crpow::test;

namespace {

bool error_free_sum(const DoubleWord& w, const FpNumber& a, const FpNumber& b) {
    return w.to_exact() == a.to_exact() + b.to_exact();
}

bool error_free_product(const DoubleWord& w, const FpNumber& a, const FpNumber& b) {
    return w.to_exact() == a.to_exact() * b.to_exact();
}

bool fast2sum_pre(const FpNumber& a, const FpNumber& b) {
    return a.is_zero() || b.is_zero() || a.exponent() >= b.exponent();
}

// |x+y - ab| <= bound * |ab| with ab the exact product of the double words
bool within_relative(const DoubleWord& result, const ExactValue& reference, const ExactValue& bound) {
    ExactValue err = (result.to_exact() - reference).abs();
    return err <= bound * reference.abs();
}

DoubleWord dw(const FpNumber& hi, const FpNumber& lo) { return DoubleWord{hi, lo}; }

}  // namespace

TEST_CASE("fast2sum: examples and precondition") {
    Precision p(53);
    FpNumber one = FpNumber::one(p);
    FpNumber tiny = FpNumber::from_exact(ExactValue::pow2(-60), p);
    DoubleWord r = fast2sum(one, tiny);
    CHECK(r.hi == one);
    CHECK(r.lo == tiny);
    DoubleWord s = fast2sum(fp("1.1", 53), fp("1.01", 53));
    CHECK(s.hi == FpNumber::from_exact(ExactValue(11, -2), p));  // 2.75
    CHECK(s.lo.is_zero());
    CHECK_THROWS_AS(fast2sum(tiny, one), std::invalid_argument);
    CHECK_NOTHROW(fast2sum(FpNumber::zero(p), one));
    CHECK_NOTHROW(fast2sum(one, FpNumber::zero(p)));
}

TEST_CASE("fast2sum: exhaustive p=5 sweep is error-free") {
    auto xs = enumerate_fp(5, -6, 6, true, true);
    long long checked = 0;
    for (const auto& a : xs)
        for (const auto& b : xs) {
            if (!fast2sum_pre(a, b)) continue;
            DoubleWord r = fast2sum(a, b);
            ++checked;
            CHECK(error_free_sum(r, a, b));
            CHECK(r.hi == add(a, b, RoundingMode::NearestEven));
            CHECK(is_valid_double_word(r));
        }
    CHECK(checked > 90000);
}

TEST_CASE("two_sum: order-free, matches fast2sum when its precondition holds") {
    auto xs = enumerate_fp(5, -6, 6, true, true);
    for (const auto& a : xs)
        for (const auto& b : xs) {
            DoubleWord r = two_sum(a, b);
            CHECK(error_free_sum(r, a, b));
            if (fast2sum_pre(a, b)) {
                DoubleWord f = fast2sum(a, b);
                CHECK(r.hi == f.hi);
                CHECK(r.lo == f.lo);
            }
        }
    // x + (-x) -> (0, 0)
    for (const auto& x : xs) {
        DoubleWord r = two_sum(x, x.negated());
        CHECK(r.hi.is_zero());
        CHECK(r.lo.is_zero());
    }
}

TEST_CASE("fast2mult: examples") {
    Precision p(53);
    FpNumber q = fp("1.0000000000000000000000000000000000000000000000000001", 53);  // 1+2^-52
    DoubleWord r = fast2mult(q, q);
    CHECK(r.hi == fp("1.000000000000000000000000000000000000000000000000001", 53));  // 1+2^-51
    CHECK(r.lo == FpNumber::from_exact(ExactValue::pow2(-104), p));
    DoubleWord s = fast2mult(fp("1.1", 53), FpNumber::from_exact(ev(2), p));
    CHECK(s.hi == FpNumber::from_exact(ev(3), p));
    CHECK(s.lo.is_zero());
}

TEST_CASE("fast2mult: exhaustive p=6 significand pairs are error-free") {
    auto xs = enumerate_fp(6, 0, 0, false, false);
    for (const auto& a : xs)
        for (const auto& b : xs) {
            DoubleWord r = fast2mult(a, b);
            CHECK(error_free_product(r, a, b));
            CHECK(r.hi == mul(a, b, RoundingMode::NearestEven));
            CHECK(is_valid_double_word(r));
        }
}

TEST_CASE("eft: random p=53 spot checks") {
    std::mt19937_64 rng(201);
    for (int i = 0; i < 20000; ++i) {
        FpNumber a = rand_fp(rng, 53, -80, 80);
        FpNumber b = rand_fp(rng, 53, -80, 80);
        CHECK(error_free_sum(two_sum(a, b), a, b));
        CHECK(error_free_product(fast2mult(a, b), a, b));
        if (fast2sum_pre(a, b)) CHECK(error_free_sum(fast2sum(a, b), a, b));
    }
}

TEST_CASE("dbl_mult: algebraic examples") {
    Precision p(53);
    // identity operand (1, 0) passes any double word through
    FpNumber bh = fp("1.0110001", 53);
    FpNumber bl = FpNumber::from_exact(ExactValue::pow2(-57), p);
    DoubleWord r = dbl_mult(dw(FpNumber::one(p), FpNumber::zero(p)), dw(bh, bl));
    CHECK(r.hi == bh);
    CHECK(r.lo == bl);
    // exact square
    DoubleWord s = dbl_mult(DoubleWord::from_fp(fp("1.1", 53)), DoubleWord::from_fp(fp("1.1", 53)));
    CHECK(s.hi == FpNumber::from_exact(ExactValue(9, -2), p));
    CHECK(s.lo.is_zero());
}

TEST_CASE("dbl_mult: operand hypothesis is checked") {
    Precision p(11);
    FpNumber hi = fp("1.0000000001", 11);
    FpNumber big_lo = FpNumber::from_exact(ExactValue::pow2(-9), p);
    CHECK(!dbl_mult_operand_ok(dw(hi, big_lo)));
    CHECK_THROWS_AS(dbl_mult(dw(hi, big_lo), DoubleWord::from_fp(hi)), std::invalid_argument);
    // boundary |lo| = 2^-p |hi| is allowed
    FpNumber two = FpNumber::from_exact(ev(2), p);
    FpNumber edge = FpNumber::from_exact(ExactValue::pow2(1 - 11), p);
    CHECK(dbl_mult_operand_ok(dw(two, edge)));
    CHECK_NOTHROW(dbl_mult(dw(two, edge), DoubleWord::from_fp(two)));
}

TEST_CASE("dbl_mult: exhaustive p=5 sweep meets the 7 eps^2 bound") {
    const Precision p(5);
    const ExactValue bound = ExactValue(7, -10);  // 7 eps^2
    auto his = enumerate_fp(5, 0, 0, false, false);
    std::vector<DoubleWord> words;
    words.reserve(2048);
    for (const auto& hi : his) {
        words.push_back(DoubleWord::from_fp(hi));
        for (std::int64_t e = -15; e <= -5; ++e)
            for (std::uint64_t m = 16; m <= 31; ++m)
                for (int sg : {+1, -1}) {
                    DoubleWord w{hi, FpNumber::from_parts(sg, m, e, p)};
                    if (dbl_mult_operand_ok(w)) words.push_back(w);
                }
    }
    long long cases = 0;
    for (const auto& a : words)
        for (const auto& b : words) {
            DoubleWord r = dbl_mult(a, b);
            ExactValue ref = a.to_exact() * b.to_exact();
            ++cases;
            CHECK(within_relative(r, ref, bound));
            CHECK(is_valid_double_word(r));
        }
    CHECK(cases > 500000);
}

TEST_CASE("dbl_mult: sign and scale symmetry") {
    std::mt19937_64 rng(202);
    Precision p(9);
    for (int i = 0; i < 3000; ++i) {
        FpNumber ah = rand_fp(rng, 9, 0, 0, false);
        FpNumber bh = rand_fp(rng, 9, 0, 0, false);
        FpNumber al = FpNumber::from_parts(+1, 256 + rand_below(rng, 255), -rand_range(rng, 10, 18), p);
        FpNumber bl = FpNumber::from_parts(+1, 256 + rand_below(rng, 255), -rand_range(rng, 10, 18), p);
        DoubleWord a = dw(ah, al), b = dw(bh, bl);
        if (!dbl_mult_operand_ok(a) || !dbl_mult_operand_ok(b)) continue;
        DoubleWord base = dbl_mult(a, b);
        DoubleWord fa = dbl_mult(dw(ah.negated(), al.negated()), b);
        CHECK(fa.hi == base.hi.negated());
        CHECK(fa.lo == base.lo.negated());
        // scaling by powers of two is exact in every operation
        auto scale_fp = [&](const FpNumber& v, std::int64_t k) {
            return v.is_zero() ? v : FpNumber::from_parts(v.sign(), v.significand(), v.exponent() + k, p);
        };
        DoubleWord sa = dw(scale_fp(ah, 7), scale_fp(al, 7));
        DoubleWord sc = dbl_mult(sa, b);
        CHECK(sc.hi == scale_fp(base.hi, 7));
        CHECK(sc.lo == scale_fp(base.lo, 7));
    }
}

TEST_CASE("dbl_mult: random p=24 sample meets the tightened bound") {
    std::mt19937_64 rng(203);
    const Precision p(24);
    // 6.000001 eps^2 = 6000001 / (10^6 * 2^48)
    const BigInt num = 6000001;
    const BigInt den = BigInt(1000000) << 48;
    for (int i = 0; i < 20000; ++i) {
        auto make = [&](std::mt19937_64& r) {
            FpNumber hi = rand_fp(r, 24, 0, 0, false);
            if (rand_below(r, 8) == 0) return DoubleWord::from_fp(hi);
            std::int64_t e = -static_cast<std::int64_t>(24 + rand_below(r, 24));
            FpNumber lo = rand_fp(r, 24, e, e);
            DoubleWord w{hi, lo};
            if (!dbl_mult_operand_ok(w)) w.lo = FpNumber::zero(p);
            return w;
        };
        DoubleWord a = make(rng), b = make(rng);
        DoubleWord r = dbl_mult(a, b);
        ExactValue ref = a.to_exact() * b.to_exact();
        ExactValue err = (r.to_exact() - ref).abs();
        // err <= (num/den) * |ref|, cross-multiplied
        CHECK(err * ExactValue::from_integer(den) <= ref.abs() * ExactValue::from_integer(num));
    }
}
