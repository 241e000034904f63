// Parametric radix-2 precision-p floating-point arithmetic with correct
// rounding in all four IEEE directions, an fma, and an unbounded exponent
// range (no subnormals, no overflow).
#pragma once

#include "crpow/exact_value.hpp"

#include <compare>
#include <cstdint>

namespace crpow {

enum class RoundingMode {
    NearestEven,   // RN: ties to the significand whose last bit is zero
    TowardNegInf,  // RD
    TowardPosInf,  // RU
    TowardZero,    // RZ
};

/// Significand width in bits; 2 <= p <= 64 (64-bit storage).
class Precision {
public:
    explicit Precision(int bits) : bits_(bits) {
        if (bits < 2 || bits > 64) throw std::invalid_argument("Precision: need 2 <= p <= 64");
    }
    int bits() const { return bits_; }
    /// epsilon = 2^-p
    ExactValue eps() const { return ExactValue::pow2(-bits_); }
    friend bool operator==(Precision, Precision) = default;

private:
    int bits_;
};

/// A machine number: sign * m * 2^(e-p+1) with 2^(p-1) <= m < 2^p, or a
/// signed zero. Exponents are plain integers, never clamped.
class FpNumber {
public:
    static FpNumber zero(Precision p, int sign = +1) { return FpNumber(sign, 0, 0, p, true); }
    static FpNumber one(Precision p) {
        return FpNumber(+1, std::uint64_t(1) << (p.bits() - 1), 0, p, false);
    }
    /// Requires m normalized for p (throws otherwise).
    static FpNumber from_parts(int sign, std::uint64_t significand, std::int64_t exponent, Precision p);
    /// Exact conversion; throws if v needs more than p bits.
    static FpNumber from_exact(const ExactValue& v, Precision p);

    int sign() const { return sign_; }
    bool is_zero() const { return zero_; }
    bool is_negative() const { return !zero_ && sign_ < 0; }
    std::int64_t exponent() const;
    std::uint64_t significand() const;
    Precision precision() const { return precision_; }

    ExactValue to_exact() const;
    FpNumber negated() const { return FpNumber(-sign_, significand_, exponent_, precision_, zero_); }
    double to_double_approx() const { return to_exact().to_double_approx(); }

    /// Value comparison; -0 == +0.
    friend bool operator==(const FpNumber& a, const FpNumber& b);
    friend std::strong_ordering operator<=>(const FpNumber& a, const FpNumber& b);

private:
    FpNumber(int sign, std::uint64_t m, std::int64_t e, Precision p, bool zero)
        : sign_(sign), exponent_(e), significand_(m), precision_(p), zero_(zero) {}

    int sign_;
    std::int64_t exponent_;
    std::uint64_t significand_;
    Precision precision_;
    bool zero_;
};

/// Correctly rounded conversion of an exact value.
FpNumber round(const ExactValue& v, Precision p, RoundingMode mode);

FpNumber add(const FpNumber& a, const FpNumber& b, RoundingMode mode);
FpNumber sub(const FpNumber& a, const FpNumber& b, RoundingMode mode);
FpNumber mul(const FpNumber& a, const FpNumber& b, RoundingMode mode);
/// a*x + b with a single final rounding.
FpNumber fma(const FpNumber& a, const FpNumber& x, const FpNumber& b, RoundingMode mode);

/// 2^(e-p+1); requires x != 0.
ExactValue ulp(const FpNumber& x);

/// Single rounding of x to a narrower precision (avoids double rounding).
FpNumber narrow(const FpNumber& x, Precision target, RoundingMode mode);

}  // namespace crpow
