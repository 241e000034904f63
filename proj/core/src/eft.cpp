#include "crpow/eft.hpp"

namespace crpow {

namespace {
constexpr RoundingMode RN = RoundingMode::NearestEven;

void count_add(OpCount* ops, int n = 1) {
    if (ops) ops->adds += n;
}
void count_mul(OpCount* ops) {
    if (ops) ++ops->muls;
}
void count_fma(OpCount* ops) {
    if (ops) ++ops->fmas;
}
}  // namespace

bool is_valid_double_word(const DoubleWord& w) {
    return w.hi == round(w.to_exact(), w.precision(), RN);
}

bool dbl_mult_operand_ok(const DoubleWord& w) {
    if (w.lo.is_zero()) return true;
    if (w.hi.is_zero()) return false;
    // |lo| * 2^p <= |hi|, compared exactly
    ExactValue lhs = w.lo.to_exact().abs().scaled(w.precision().bits());
    return lhs <= w.hi.to_exact().abs();
}

DoubleWord fast2sum(const FpNumber& a, const FpNumber& b, OpCount* ops) {
    if (!a.is_zero() && !b.is_zero() && a.exponent() < b.exponent())
        throw std::invalid_argument("fast2sum: exponent(a) < exponent(b)");
    FpNumber s = add(a, b, RN);
    FpNumber z = sub(s, a, RN);
    FpNumber t = sub(b, z, RN);
    count_add(ops, 3);
    return DoubleWord{s, t};
}

DoubleWord two_sum(const FpNumber& a, const FpNumber& b, OpCount* ops) {
    FpNumber s = add(a, b, RN);
    FpNumber ap = sub(s, b, RN);
    FpNumber bp = sub(s, ap, RN);
    FpNumber da = sub(a, ap, RN);
    FpNumber db = sub(b, bp, RN);
    FpNumber t = add(da, db, RN);
    count_add(ops, 6);
    return DoubleWord{s, t};
}

DoubleWord fast2mult(const FpNumber& a, const FpNumber& b, OpCount* ops) {
    FpNumber c = mul(a, b, RN);
    FpNumber d = fma(a, b, c.negated(), RN);
    count_mul(ops);
    count_fma(ops);
    return DoubleWord{c, d};
}

DoubleWord dbl_mult(const DoubleWord& a, const DoubleWord& b, OpCount* ops) {
    if (!dbl_mult_operand_ok(a) || !dbl_mult_operand_ok(b))
        throw std::invalid_argument("dbl_mult: operand violates |lo| <= 2^-p |hi|");
    FpNumber t = mul(a.lo, b.hi, RN);
    count_mul(ops);
    FpNumber s = fma(a.hi, b.lo, t, RN);
    count_fma(ops);
    DoubleWord m = fast2mult(a.hi, b.hi, ops);
    DoubleWord f = fast2sum(m.hi, s, ops);  // hypothesis holds here by construction
    FpNumber y1 = add(m.lo, f.lo, RN);
    count_add(ops);
    return fast2sum(f.hi, y1, ops);
}

}  // namespace crpow
