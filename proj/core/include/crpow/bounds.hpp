// Exact evaluation of the powering error bounds: the double-word product
// bound, the log-time and linear-time powering bounds, table generation,
// the faithfulness limit and the correct-rounding margin test.
#pragma once

#include "crpow/softfloat.hpp"

#include <string>
#include <vector>

namespace crpow {

/// Exact dyadic enclosure of a positive bound. lower == upper iff exact.
struct BoundValue {
    ExactValue lower;
    ExactValue upper;
    bool exact = false;
};

struct ErrorBound {
    BoundValue value;
    std::string neg_log2;  // floor(-log2 value) to 2 decimals, exact arithmetic
};

/// The dbl_mult relative-error bound 6e^2+16e^3+17e^4+11e^5+5e^6+e^7, e=2^-p.
ExactValue eta_value(Precision p);
ErrorBound eta_bound(Precision p);

/// Bound on |alpha| for the log-time powering: (1+eta)^(n-1) - 1, n >= 2.
/// Large n is handled by a certified truncated binomial enclosure.
ErrorBound logpower_alpha_max(std::int64_t n, Precision p);

/// gamma = (n-1) + (n-2)(1+e) + ... + 2(1+e)^(n-3), by direct summation.
/// Requires n >= 3.
ExactValue linpower_gamma(std::int64_t n, Precision p);

/// Same coefficient from the derivative of the generating polynomial at 1;
/// agrees exactly with the summation (kept as an independent route).
ExactValue linpower_gamma_closed_form(std::int64_t n, Precision p);

/// 2 e^2 gamma, exact. Requires n >= 3.
ErrorBound linpower_alpha_max(std::int64_t n, Precision p);

/// The quadratic shorthand (n^2 - n - 2) e^2.
ExactValue linpower_alpha_approx(std::int64_t n, Precision p);

/// Largest n with 2 * alpha_max(n, work) < 2^-target (monotone search).
/// Can exceed 2^64 when the working precision is much wider than the target.
BigInt faithful_limit(Precision work, Precision target);

enum class MarginResult { Certified, NotCertified };

/// Certified iff 2 * alpha_max(n, work) <= 2^-(target + run_len + 1): the
/// computed double-word result then rounds to the correct target-precision
/// value for every x whose post-rounding-bit run is at most run_len.
MarginResult correct_rounding_margin(std::int64_t n, Precision work, Precision target, int run_len);

enum class TableKind { LogPower, LinPower };

struct TableRow {
    std::int64_t n;
    std::string neg_log2;
};

/// The (n, -log2 alpha_max) rows for the standard table layouts.
std::vector<TableRow> make_tables(Precision p, TableKind kind);

/// floor(100 * -log2 v) for dyadic v > 0, by exact integer comparison.
std::int64_t neg_log2_centibits(const ExactValue& v);

/// Render centibits as a fixed two-decimal string.
std::string format_centibits(std::int64_t t);

/// Two-decimal -log2 of an enclosure; empty if the ends disagree.
std::string neg_log2_string(const BoundValue& v);

}  // namespace crpow
