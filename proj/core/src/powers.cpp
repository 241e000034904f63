#include "crpow/powers.hpp"

namespace crpow {

namespace {
constexpr RoundingMode RN = RoundingMode::NearestEven;

void require_power_args(const FpNumber& x, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("power: n must be >= 1");
    if (x.is_zero()) throw std::invalid_argument("power: x must be nonzero");
}

int floor_log2_i64(std::int64_t n) {
    int k = -1;
    while (n > 0) {
        n >>= 1;
        ++k;
    }
    return k;
}
}  // namespace

DoubleWord lin_power(const FpNumber& x, std::int64_t n, OpCount* ops) {
    require_power_args(x, n);
    DoubleWord hw = DoubleWord::from_fp(x);
    FpNumber l = FpNumber::zero(x.precision());
    for (std::int64_t i = 2; i <= n; ++i) {
        DoubleWord m = fast2mult(hw.hi, x, ops);
        l = fma(l, x, m.lo, RN);
        if (ops) ++ops->fmas;
        hw.hi = m.hi;
    }
    return DoubleWord{hw.hi, l};
}

DoubleWord log_power(const FpNumber& x, std::int64_t n, OpCount* ops) {
    require_power_args(x, n);
    std::int64_t i = n;
    DoubleWord hl = DoubleWord::from_fp(FpNumber::one(x.precision()));
    DoubleWord uv = DoubleWord::from_fp(x);
    while (i > 1) {
        if (i % 2 == 1) hl = dbl_mult(hl, uv, ops);
        uv = dbl_mult(uv, uv, ops);
        i /= 2;
    }
    return dbl_mult(hl, uv, ops);
}

FlopRange flop_count(std::int64_t n, PowerAlgorithm alg) {
    if (n < 1) throw std::invalid_argument("flop_count: n must be >= 1");
    if (alg == PowerAlgorithm::Linear) {
        long long c = 3 * (n - 1);
        return {c, c};
    }
    long long lg = floor_log2_i64(n);
    return {11 * (1 + lg), 11 * (1 + 2 * lg)};
}

long long measured_flops(std::int64_t n, PowerAlgorithm alg) {
    OpCount ops;
    Precision p(11);
    FpNumber x = FpNumber::one(p);  // count does not depend on x
    if (alg == PowerAlgorithm::Linear)
        lin_power(x, n, &ops);
    else
        log_power(x, n, &ops);
    return ops.total();
}

std::int64_t flop_crossover(std::int64_t scan_max) {
    std::int64_t candidate = 0;
    for (std::int64_t n = 2; n <= scan_max; ++n) {
        if (measured_flops(n, PowerAlgorithm::Log) < measured_flops(n, PowerAlgorithm::Linear)) {
            if (candidate == 0) candidate = n;
        } else {
            candidate = 0;
        }
    }
    return candidate;
}

FpNumber pow_correctly_rounded(const PowerRequest& req, OpCount* ops) {
    require_power_args(req.x, req.n);
    if (req.x.is_negative()) throw std::invalid_argument("pow_correctly_rounded: x must be positive");
    if (req.target.bits() > req.work.bits())
        throw std::invalid_argument("pow_correctly_rounded: target precision exceeds working precision");
    if (req.x.precision().bits() > req.work.bits())
        throw std::invalid_argument("pow_correctly_rounded: x wider than working precision");

    // widening is exact
    FpNumber xw = round(req.x.to_exact(), req.work, RN);
    DoubleWord hl = log_power(xw, req.n, ops);
    // One rounding of the exact sum h+l straight to the target format.
    return round(hl.to_exact(), req.target, RN);
}

}  // namespace crpow
