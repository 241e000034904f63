// Exact ground truth: big-integer powers, rounding classification, breakpoint
// distances, run lengths, and brute-force worst-case search at small p.
#pragma once

#include "crpow/softfloat.hpp"

#include <optional>
#include <string>

namespace crpow {

/// x^n computed exactly (arbitrary-precision). Requires n >= 1, x != 0.
ExactValue exact_pow(const FpNumber& x, std::int64_t n);

/// Certified dyadic enclosure of x^n (x > 0) by interval square-and-multiply
/// with outward truncation to window_bits; relative width stays far below
/// 2^(1-window_bits) per step. For n too large for exact_pow.
std::pair<ExactValue, ExactValue> pow_enclosure(const FpNumber& x, std::int64_t n,
                                                std::int64_t window_bits = 192);

enum class RoundPosition { Exact, BelowMid, AtMid, AboveMid };

struct RoundingNeighborhood {
    FpNumber below;  // RD(v)
    FpNumber above;  // RU(v)
    RoundPosition position;
};

/// Bracketing machine numbers and position of v against the breakpoint
/// (below+above)/2, all decided by exact integer comparison. Requires v != 0.
RoundingNeighborhood classify_rounding(const ExactValue& v, Precision p);

/// Significand bit of |v| (1-indexed; bit 1 is the leading 1). Requires v != 0.
int significand_bit(const ExactValue& v, std::int64_t index);

struct RunInfo {
    enum class Kind {
        ExactAtPrecision,  // v is a machine number at p: no rounding bit
        ExactBreakpoint,   // v ends exactly at the rounding bit (a midpoint)
        Normal,
    };
    Kind kind = Kind::Normal;
    int rounding_bit = 0;      // significand bit p+1
    std::int64_t run_len = 0;  // identical bits right after the rounding bit
    int next_bit = 0;          // first bit that breaks the run
};

/// Run-length decomposition b1.b2..bp | r | c1 c2 ... of v's significand.
RunInfo run_length(const ExactValue& v, Precision p);

/// result in {RD(v), RU(v)}.
bool is_faithful(const FpNumber& result, const ExactValue& v);

/// |result - v| / ulp(result), exact (dyadic). Requires result != 0.
ExactValue ulp_distance(const FpNumber& result, const ExactValue& v);

/// Upper bound of |result - v| / ulp(result) over v in [vlo, vhi].
ExactValue ulp_distance_max(const FpNumber& result, const ExactValue& vlo, const ExactValue& vhi);

struct WorstCaseRecord {
    FpNumber x;
    std::int64_t n = 0;
    int rounding_bit = 0;
    std::int64_t run_len = 0;
    int next_bit = 0;
    std::int64_t distance_exponent = 0;  // |sig(x^n) - nearest half-grid point| >= 2^-this
};

/// Enumerate every significand x in [1,2) at precision p, maximize the run
/// length of x^n; ties go to the smallest x. Returns nothing when every x^n
/// is exact (n = 1). Guard: rejects p > 30. Deterministic for any thread
/// count (range partition + ordered merge).
std::optional<WorstCaseRecord> search_worst_cases(Precision p, std::int64_t n, int threads = 1);

/// One-line JSON serialization with fixed key order.
std::string to_json_line(const WorstCaseRecord& rec);

}  // namespace crpow
