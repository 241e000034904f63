#include "crpow/exact_value.hpp"

#include <cmath>
#include <utility>

namespace crpow {

namespace mp = boost::multiprecision;

void ExactValue::canonicalize() {
    if (mantissa_.is_zero()) {
        scale_ = 0;
        return;
    }
    std::size_t tz = mp::lsb(mp::abs(mantissa_));
    if (tz > 0) {
        mantissa_ >>= tz;
        scale_ += static_cast<std::int64_t>(tz);
    }
}

ExactValue ExactValue::abs() const { return ExactValue(mp::abs(mantissa_), scale_); }

ExactValue ExactValue::operator-() const { return ExactValue(-mantissa_, scale_); }

ExactValue ExactValue::scaled(std::int64_t k) const {
    if (is_zero()) return ExactValue();
    return ExactValue(mantissa_, scale_ + k);
}

ExactValue ExactValue::pow(std::uint64_t n) const {
    if (n == 0) return ExactValue(1, 0);
    BigInt m = mp::pow(mantissa_, static_cast<unsigned>(n));
    // scale * n must not overflow; realistic inputs stay far below this.
    __int128 s = static_cast<__int128>(scale_) * static_cast<__int128>(n);
    if (s > INT64_MAX || s < INT64_MIN) throw std::overflow_error("ExactValue::pow: scale overflow");
    return ExactValue(std::move(m), static_cast<std::int64_t>(s));
}

ExactValue operator+(const ExactValue& a, const ExactValue& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.scale_ >= b.scale_) {
        BigInt m = (a.mantissa_ << static_cast<std::size_t>(a.scale_ - b.scale_)) + b.mantissa_;
        return ExactValue(std::move(m), b.scale_);
    }
    BigInt m = (b.mantissa_ << static_cast<std::size_t>(b.scale_ - a.scale_)) + a.mantissa_;
    return ExactValue(std::move(m), a.scale_);
}

ExactValue operator-(const ExactValue& a, const ExactValue& b) { return a + (-b); }

ExactValue operator*(const ExactValue& a, const ExactValue& b) {
    if (a.is_zero() || b.is_zero()) return ExactValue();
    return ExactValue(a.mantissa_ * b.mantissa_, a.scale_ + b.scale_);
}

int ExactValue::compare(const ExactValue& a, const ExactValue& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    ExactValue d = a - b;
    return d.sign();
}

std::int64_t ExactValue::bit_length() const {
    if (is_zero()) return 0;
    return static_cast<std::int64_t>(mp::msb(mp::abs(mantissa_))) + 1;
}

std::int64_t ExactValue::floor_log2() const {
    if (is_zero()) throw std::domain_error("floor_log2 of zero");
    return scale_ + bit_length() - 1;
}

ExactValue ExactValue::round_down_to_bits(std::int64_t bits) const {
    if (bits < 1) throw std::invalid_argument("round_down_to_bits: bits < 1");
    std::int64_t excess = bit_length() - bits;
    if (excess <= 0) return *this;
    BigInt a = mp::abs(mantissa_);
    BigInt qa = a >> static_cast<std::size_t>(excess);
    if (sign() >= 0) return ExactValue(std::move(qa), scale_ + excess);
    BigInt ra = a - (qa << static_cast<std::size_t>(excess));
    BigInt q = -qa;
    if (!ra.is_zero()) --q;
    return ExactValue(std::move(q), scale_ + excess);
}

ExactValue ExactValue::round_up_to_bits(std::int64_t bits) const {
    ExactValue d = (-*this).round_down_to_bits(bits);
    return -d;
}

double ExactValue::to_double_approx() const {
    if (is_zero()) return 0.0;
    std::int64_t len = bit_length();
    std::int64_t keep = len > 62 ? 62 : len;
    BigInt top = mp::abs(mantissa_) >> static_cast<std::size_t>(len - keep);
    double m = top.convert_to<double>();
    double e = static_cast<double>(scale_ + (len - keep));
    double r = m * std::exp2(e);
    return sign() < 0 ? -r : r;
}

ExactValue significand_of(const ExactValue& v) {
    if (v.is_zero()) throw std::domain_error("significand_of zero");
    return v.abs().scaled(-v.floor_log2());
}

int compare_fraction(const ExactValue& v, const BigInt& num, const BigInt& den) {
    if (den <= 0) throw std::invalid_argument("compare_fraction: den must be positive");
    // v - num/den  ~  v*den - num
    ExactValue lhs = v * ExactValue::from_integer(den);
    ExactValue d = lhs - ExactValue::from_integer(num);
    return d.sign();
}

std::pair<ExactValue, ExactValue> fraction_enclosure(const BigInt& num, const BigInt& den, std::int64_t bits) {
    if (den <= 0) throw std::invalid_argument("fraction_enclosure: den must be positive");
    if (num < 0) throw std::invalid_argument("fraction_enclosure: num must be nonnegative");
    if (num.is_zero()) return {ExactValue(), ExactValue()};
    // scale num so the quotient carries `bits` significant bits
    std::int64_t shift = bits + 2 + static_cast<std::int64_t>(mp::msb(den)) - static_cast<std::int64_t>(mp::msb(num));
    BigInt n = num;
    std::int64_t s = 0;
    if (shift > 0) {
        n <<= static_cast<std::size_t>(shift);
        s = -shift;
    }
    BigInt q = n / den;
    BigInt r = n - q * den;
    ExactValue lo(q, s);
    ExactValue hi = r.is_zero() ? lo : ExactValue(q + 1, s);
    return {lo, hi};
}

}  // namespace crpow
