// Error-free transformations and the near-exact double-word product.
#pragma once

#include "crpow/softfloat.hpp"

namespace crpow {

/// Floating-point operation tally; one accumulator per call chain, so sweeps
/// can run in parallel without shared state.
struct OpCount {
    long long adds = 0;
    long long muls = 0;
    long long fmas = 0;
    long long total() const { return adds + muls + fmas; }
};

/// Unevaluated sum hi + lo. Well-formed when hi = RN(hi + lo), i.e.
/// |lo| <= ulp(hi)/2 or lo = 0.
struct DoubleWord {
    FpNumber hi;
    FpNumber lo;

    static DoubleWord from_fp(const FpNumber& x) {
        return DoubleWord{x, FpNumber::zero(x.precision())};
    }
    ExactValue to_exact() const { return hi.to_exact() + lo.to_exact(); }
    Precision precision() const { return hi.precision(); }
};

bool is_valid_double_word(const DoubleWord& w);

/// |w.lo| <= 2^-p |w.hi| — the product-bound hypothesis checked by dbl_mult.
bool dbl_mult_operand_ok(const DoubleWord& w);

/// s = RN(a+b), s + t = a + b exactly. Requires exponent(a) >= exponent(b),
/// or a zero operand; checked. 3 operations.
DoubleWord fast2sum(const FpNumber& a, const FpNumber& b, OpCount* ops = nullptr);

/// Order-free variant, 6 operations.
DoubleWord two_sum(const FpNumber& a, const FpNumber& b, OpCount* ops = nullptr);

/// c = RN(ab), c + d = ab exactly. 2 operations (one of them the fma).
DoubleWord fast2mult(const FpNumber& a, const FpNumber& b, OpCount* ops = nullptr);

/// Approximate double-word product: x + y = (a.hi+a.lo)(b.hi+b.lo)(1+eta),
/// |eta| <= 6e^2 + 16e^3 + 17e^4 + 11e^5 + 5e^6 + e^7 with e = 2^-p.
/// Requires dbl_mult_operand_ok for both operands; checked. 11 operations.
DoubleWord dbl_mult(const DoubleWord& a, const DoubleWord& b, OpCount* ops = nullptr);

}  // namespace crpow
