// Exact dyadic values M * 2^s on top of an arbitrary-precision integer.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>

namespace crpow {

using BigInt = boost::multiprecision::cpp_int;

/// An exact dyadic rational M * 2^s, canonical when M is odd (or M = 0, s = 0).
///
/// Every machine number, every error-free residual, and every finite power of
/// a binary floating-point number is dyadic, so this type is closed under the
/// arithmetic the toolkit needs: +, -, * and scaling by powers of two.
class ExactValue {
public:
    ExactValue() = default;
    ExactValue(BigInt mantissa, std::int64_t scale) : mantissa_(std::move(mantissa)), scale_(scale) {
        canonicalize();
    }

    static ExactValue from_integer(BigInt n) { return ExactValue(std::move(n), 0); }
    static ExactValue pow2(std::int64_t k) { return ExactValue(1, k); }

    const BigInt& mantissa() const { return mantissa_; }
    std::int64_t scale() const { return scale_; }

    bool is_zero() const { return mantissa_.is_zero(); }
    int sign() const { return mantissa_.sign(); }

    ExactValue abs() const;
    ExactValue operator-() const;
    /// this * 2^k
    ExactValue scaled(std::int64_t k) const;
    /// this^n, n >= 0
    ExactValue pow(std::uint64_t n) const;

    friend ExactValue operator+(const ExactValue& a, const ExactValue& b);
    friend ExactValue operator-(const ExactValue& a, const ExactValue& b);
    friend ExactValue operator*(const ExactValue& a, const ExactValue& b);

    friend bool operator==(const ExactValue& a, const ExactValue& b) { return compare(a, b) == 0; }
    friend std::strong_ordering operator<=>(const ExactValue& a, const ExactValue& b) {
        int c = compare(a, b);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// floor(log2 |v|); requires v != 0.
    std::int64_t floor_log2() const;

    /// Number of significant bits of |M| (0 for zero).
    std::int64_t bit_length() const;

    /// Largest dyadic with at most `bits` mantissa bits that is <= / >= this.
    ExactValue round_down_to_bits(std::int64_t bits) const;
    ExactValue round_up_to_bits(std::int64_t bits) const;

    double to_double_approx() const;

private:
    static int compare(const ExactValue& a, const ExactValue& b);
    void canonicalize();

    BigInt mantissa_ = 0;
    std::int64_t scale_ = 0;
};

/// |v| / 2^floor(log2 |v|), in [1, 2). Requires v != 0.
ExactValue significand_of(const ExactValue& v);

/// sign of (v - num/den); den > 0. Exact.
int compare_fraction(const ExactValue& v, const BigInt& num, const BigInt& den);

/// num/den rounded toward zero to a dyadic with `bits` mantissa bits, plus one
/// strictly-above companion; used for enclosing non-dyadic rationals.
std::pair<ExactValue, ExactValue> fraction_enclosure(const BigInt& num, const BigInt& den, std::int64_t bits);

}  // namespace crpow
