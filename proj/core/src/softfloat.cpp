#include "crpow/softfloat.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace crpow {

namespace mp = boost::multiprecision;
using uint256 = mp::uint256_t;
using u128 = unsigned __int128;

// ---------------------------------------------------------------------------
// FpNumber basics

FpNumber FpNumber::from_parts(int sign, std::uint64_t m, std::int64_t e, Precision p) {
    if (sign != +1 && sign != -1) throw std::invalid_argument("FpNumber: sign must be +1/-1");
    const int pb = p.bits();
    const std::uint64_t lo = pb == 64 ? (std::uint64_t(1) << 63) : (std::uint64_t(1) << (pb - 1));
    if (m < lo || (pb < 64 && m >= (std::uint64_t(1) << pb)))
        throw std::invalid_argument("FpNumber: significand not normalized for precision");
    return FpNumber(sign, m, e, p, false);
}

FpNumber FpNumber::from_exact(const ExactValue& v, Precision p) {
    if (v.is_zero()) return zero(p);
    if (v.bit_length() > p.bits()) throw std::invalid_argument("from_exact: value not representable");
    std::int64_t e = v.floor_log2();
    BigInt m = mp::abs(v.mantissa()) << static_cast<std::size_t>(p.bits() - v.bit_length());
    return FpNumber(v.sign(), m.convert_to<std::uint64_t>(), e, p, false);
}

std::int64_t FpNumber::exponent() const {
    if (zero_) throw std::domain_error("exponent of zero");
    return exponent_;
}

std::uint64_t FpNumber::significand() const {
    if (zero_) throw std::domain_error("significand of zero");
    return significand_;
}

ExactValue FpNumber::to_exact() const {
    if (zero_) return ExactValue();
    BigInt m = significand_;
    if (sign_ < 0) m = -m;
    return ExactValue(std::move(m), exponent_ - precision_.bits() + 1);
}

bool operator==(const FpNumber& a, const FpNumber& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.to_exact() == b.to_exact();
}

std::strong_ordering operator<=>(const FpNumber& a, const FpNumber& b) {
    return a.to_exact() <=> b.to_exact();
}

// ---------------------------------------------------------------------------
// Reference rounding: exact value -> machine number, arbitrary-width path.

FpNumber round(const ExactValue& v, Precision p, RoundingMode mode) {
    if (v.is_zero()) return FpNumber::zero(p);
    const int pb = p.bits();
    const int sign = v.sign();
    BigInt a = mp::abs(v.mantissa());
    const std::int64_t len = static_cast<std::int64_t>(mp::msb(a)) + 1;
    std::int64_t exponent = v.scale() + len - 1;

    if (len <= pb) {  // representable (canonical mantissa is odd)
        std::uint64_t m = (a << static_cast<std::size_t>(pb - len)).convert_to<std::uint64_t>();
        return FpNumber::from_parts(sign, m, exponent, p);
    }

    const std::size_t excess = static_cast<std::size_t>(len - pb);
    BigInt keep = a >> excess;
    BigInt rem = a - (keep << excess);
    std::uint64_t m = keep.convert_to<std::uint64_t>();

    bool up = false;
    switch (mode) {
        case RoundingMode::NearestEven: {
            BigInt half = BigInt(1) << (excess - 1);
            if (rem > half)
                up = true;
            else if (rem == half)
                up = (m & 1) != 0;
            break;
        }
        case RoundingMode::TowardZero:
            up = false;
            break;
        case RoundingMode::TowardNegInf:
            up = !rem.is_zero() && sign < 0;
            break;
        case RoundingMode::TowardPosInf:
            up = !rem.is_zero() && sign > 0;
            break;
    }
    if (up) {
        const std::uint64_t all = pb == 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << pb) - 1);
        if (m == all) {
            m = std::uint64_t(1) << (pb - 1);
            ++exponent;
        } else {
            ++m;
        }
    }
    return FpNumber::from_parts(sign, m, exponent, p);
}

// ---------------------------------------------------------------------------
// Native operation kernel.
//
// add/mul/fma reduce to rounding a sum of at most two signed terms
// sign * mag * 2^scale with mag up to 2p bits. The sum is either formed
// exactly in a fixed-width window, or the far-smaller term collapses into a
// sticky marker: value in (W, W+1) * 2^scale units, which is all any of the
// four rounding directions can distinguish.

namespace {

int bit_length(std::uint64_t v) { return v == 0 ? 0 : 64 - std::countl_zero(v); }

int bit_length(u128 v) {
    std::uint64_t hi = static_cast<std::uint64_t>(v >> 64);
    if (hi != 0) return 64 + bit_length(hi);
    return bit_length(static_cast<std::uint64_t>(v));
}

int bit_length(const uint256& v) {
    return v.is_zero() ? 0 : static_cast<int>(mp::msb(v)) + 1;
}

std::uint64_t to_u64(u128 v) { return static_cast<std::uint64_t>(v); }
std::uint64_t to_u64(const uint256& v) { return v.convert_to<std::uint64_t>(); }

uint256 widen(u128 v) {
    return (uint256(static_cast<std::uint64_t>(v >> 64)) << 64) | uint256(static_cast<std::uint64_t>(v));
}

FpNumber signed_zero(Precision p, RoundingMode mode) {
    return FpNumber::zero(p, mode == RoundingMode::TowardNegInf ? -1 : +1);
}

// Round sign * W * 2^scale, where `sticky` marks a true value strictly inside
// (W, W+1) * 2^scale. When sticky is set W always carries more than p bits.
template <class UInt>
FpNumber round_window(int sign, UInt w, std::int64_t scale, bool sticky, Precision p, RoundingMode mode) {
    const int pb = p.bits();
    const int len = bit_length(w);
    assert(len > 0);
    std::int64_t exponent = scale + len - 1;

    if (len <= pb) {
        assert(!sticky);
        std::uint64_t m = to_u64(w) << (pb - len);
        return FpNumber::from_parts(sign, m, exponent, p);
    }

    const int excess = len - pb;
    UInt keep = w >> excess;
    UInt rem = w - (keep << excess);
    std::uint64_t m = to_u64(keep);
    if (rem == 0 && !sticky) return FpNumber::from_parts(sign, m, exponent, p);

    bool up = false;
    switch (mode) {
        case RoundingMode::NearestEven: {
            UInt half = UInt(1) << (excess - 1);
            if (rem > half || (rem == half && sticky))
                up = true;
            else if (rem == half)
                up = (m & 1) != 0;
            break;
        }
        case RoundingMode::TowardZero:
            break;
        case RoundingMode::TowardNegInf:
            up = sign < 0;
            break;
        case RoundingMode::TowardPosInf:
            up = sign > 0;
            break;
    }
    if (up) {
        const std::uint64_t all = pb == 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << pb) - 1);
        if (m == all) {
            m = std::uint64_t(1) << (pb - 1);
            ++exponent;
        } else {
            ++m;
        }
    }
    return FpNumber::from_parts(sign, m, exponent, p);
}

struct Term {
    int sign;
    u128 mag;  // nonzero, at most 2p bits
    std::int64_t scale;
};

// Big term with the other term entirely below a quarter of its last window
// unit: two guard bits plus sticky carry full ordering information.
FpNumber round_dominated(const Term& big, int small_sign, Precision p, RoundingMode mode) {
    const bool opposite = small_sign != big.sign;
    if (bit_length(big.mag) <= 126) {
        u128 w = big.mag << 2;
        if (opposite) w -= 1;
        return round_window(big.sign, w, big.scale - 2, true, p, mode);
    }
    uint256 w = widen(big.mag) << 2;
    if (opposite) w -= 1;
    return round_window(big.sign, w, big.scale - 2, true, p, mode);
}

template <class UInt>
FpNumber aligned_sum(const Term& t1, int sh1, const Term& t2, int sh2, std::int64_t base,
                     Precision p, RoundingMode mode) {
    UInt a;
    UInt b;
    if constexpr (std::is_same_v<UInt, u128>) {
        a = t1.mag << sh1;
        b = t2.mag << sh2;
    } else {
        a = widen(t1.mag) << sh1;
        b = widen(t2.mag) << sh2;
    }
    if (t1.sign == t2.sign) return round_window(t1.sign, a + b, base, false, p, mode);
    if (a == b) return signed_zero(p, mode);
    if (a > b) return round_window(t1.sign, a - b, base, false, p, mode);
    return round_window(t2.sign, b - a, base, false, p, mode);
}

FpNumber round_two_terms(const Term& t1, const Term& t2, Precision p, RoundingMode mode) {
    const std::int64_t e1 = t1.scale + bit_length(t1.mag) - 1;
    const std::int64_t e2 = t2.scale + bit_length(t2.mag) - 1;
    if (e2 <= t1.scale - 3) return round_dominated(t1, t2.sign, p, mode);
    if (e1 <= t2.scale - 3) return round_dominated(t2, t1.sign, p, mode);

    const std::int64_t base = std::min(t1.scale, t2.scale);
    const int sh1 = static_cast<int>(t1.scale - base);
    const int sh2 = static_cast<int>(t2.scale - base);
    const int need = std::max(bit_length(t1.mag) + sh1, bit_length(t2.mag) + sh2) + 1;
    if (need <= 126) return aligned_sum<u128>(t1, sh1, t2, sh2, base, p, mode);
    return aligned_sum<uint256>(t1, sh1, t2, sh2, base, p, mode);
}

void require_same_precision(const FpNumber& a, const FpNumber& b) {
    if (!(a.precision() == b.precision()))
        throw std::invalid_argument("operands have different precisions");
}

Term term_of(const FpNumber& x) {
    return Term{x.sign(), u128(x.significand()), x.exponent() - x.precision().bits() + 1};
}

}  // namespace

FpNumber add(const FpNumber& a, const FpNumber& b, RoundingMode mode) {
    require_same_precision(a, b);
    const Precision p = a.precision();
    if (a.is_zero() && b.is_zero()) {
        if (a.sign() == b.sign()) return FpNumber::zero(p, a.sign());
        return signed_zero(p, mode);
    }
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return round_two_terms(term_of(a), term_of(b), p, mode);
}

FpNumber sub(const FpNumber& a, const FpNumber& b, RoundingMode mode) {
    return add(a, b.negated(), mode);
}

FpNumber mul(const FpNumber& a, const FpNumber& b, RoundingMode mode) {
    require_same_precision(a, b);
    const Precision p = a.precision();
    const int sign = a.sign() * b.sign();
    if (a.is_zero() || b.is_zero()) return FpNumber::zero(p, sign);
    const int pb = p.bits();
    u128 prod = u128(a.significand()) * u128(b.significand());
    std::int64_t scale = (a.exponent() - pb + 1) + (b.exponent() - pb + 1);
    return round_window(sign, prod, scale, false, p, mode);
}

FpNumber fma(const FpNumber& a, const FpNumber& x, const FpNumber& b, RoundingMode mode) {
    require_same_precision(a, x);
    require_same_precision(a, b);
    const Precision p = a.precision();
    if (a.is_zero() || x.is_zero()) {
        if (b.is_zero()) {
            const int ps = a.sign() * x.sign();
            if (ps == b.sign()) return FpNumber::zero(p, ps);
            return signed_zero(p, mode);
        }
        return b;
    }
    if (b.is_zero()) return mul(a, x, mode);
    const int pb = p.bits();
    Term prod{a.sign() * x.sign(), u128(a.significand()) * u128(x.significand()),
              (a.exponent() - pb + 1) + (x.exponent() - pb + 1)};
    return round_two_terms(prod, term_of(b), p, mode);
}

ExactValue ulp(const FpNumber& x) {
    if (x.is_zero()) throw std::domain_error("ulp of zero");
    return ExactValue::pow2(x.exponent() - x.precision().bits() + 1);
}

FpNumber narrow(const FpNumber& x, Precision target, RoundingMode mode) {
    if (target.bits() > x.precision().bits())
        throw std::invalid_argument("narrow: target precision wider than source");
    return round(x.to_exact(), target, mode);
}

}  // namespace crpow
