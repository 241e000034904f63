// Integer powering: the linear-time and log-time double-word algorithms and
// the end-to-end correctly rounded evaluator.
#pragma once

#include "crpow/eft.hpp"

namespace crpow {

enum class PowerAlgorithm { Linear, Log };

struct FlopRange {
    long long min = 0;
    long long max = 0;
};

/// O(n) powering: (h,l) accumulates the Fast2Mult residuals with a Horner
/// pass, one fma per step. Uses exactly 3n-3 operations. Requires n >= 1,
/// x != 0.
DoubleWord lin_power(const FpNumber& x, std::int64_t n, OpCount* ops = nullptr);

/// O(log n) powering by binary exponentiation over dbl_mult, ending with an
/// unconditional final product. Requires n >= 1, x != 0.
DoubleWord log_power(const FpNumber& x, std::int64_t n, OpCount* ops = nullptr);

/// Operation-count envelope: Linear -> exactly 3n-3; Log -> between
/// 11(1+floor(log2 n)) and 11(1+2 floor(log2 n)).
FlopRange flop_count(std::int64_t n, PowerAlgorithm alg);

/// Instrumented count for one call (independent of x).
long long measured_flops(std::int64_t n, PowerAlgorithm alg);

/// Smallest n0 <= scan_max such that the measured Log count beats the
/// measured Linear count for every n in [n0, scan_max]; 0 if none.
std::int64_t flop_crossover(std::int64_t scan_max = 256);

struct PowerRequest {
    FpNumber x;  // x > 0
    std::int64_t n = 1;
    Precision work;
    Precision target;
};

/// log_power at the working precision, then a single rounding of the exact
/// sum h+l to the target precision (no double rounding).
FpNumber pow_correctly_rounded(const PowerRequest& req, OpCount* ops = nullptr);

}  // namespace crpow
