// Shared helpers for the test suites: literal construction, deterministic
// random generators, and small-precision enumeration.
#pragma once

#include "crpow/fp_text.hpp"
#include "crpow/softfloat.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace crpow::test {

inline FpNumber fp(const std::string& literal, int p) {
    return parse_binary_significand(literal, Precision(p));
}

/// Exactly representable dyadic, by value: m * 2^k.
inline FpNumber fpv(std::int64_t m, std::int64_t k, int p) {
    return FpNumber::from_exact(ExactValue(m, k), Precision(p));
}

inline ExactValue ev(std::int64_t m, std::int64_t k = 0) { return ExactValue(m, k); }

/// Deterministic across platforms: avoid std::uniform_int_distribution.
inline std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;
}

inline std::int64_t rand_range(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rand_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline FpNumber rand_fp(std::mt19937_64& rng, int p, std::int64_t emin, std::int64_t emax,
                        bool allow_negative = true) {
    const std::uint64_t lo = std::uint64_t(1) << (p - 1);
    const std::uint64_t span = p == 64 ? 0 : (std::uint64_t(1) << p) - lo;
    std::uint64_t m = p == 64 ? (rng() | (std::uint64_t(1) << 63)) : lo + rand_below(rng, span);
    int sign = allow_negative && (rng() & 1) ? -1 : +1;
    return FpNumber::from_parts(sign, m, rand_range(rng, emin, emax), Precision(p));
}

/// All nonzero numbers at precision p with exponents in [emin, emax]
/// (optionally both signs), plus zero when requested.
inline std::vector<FpNumber> enumerate_fp(int p, std::int64_t emin, std::int64_t emax,
                                          bool signs = true, bool with_zero = true) {
    std::vector<FpNumber> out;
    Precision prec(p);
    if (with_zero) out.push_back(FpNumber::zero(prec));
    const std::uint64_t lo = std::uint64_t(1) << (p - 1);
    const std::uint64_t hi = (std::uint64_t(1) << p) - 1;
    for (std::int64_t e = emin; e <= emax; ++e)
        for (std::uint64_t m = lo; m <= hi; ++m) {
            out.push_back(FpNumber::from_parts(+1, m, e, prec));
            if (signs) out.push_back(FpNumber::from_parts(-1, m, e, prec));
        }
    return out;
}

}  // namespace crpow::test
