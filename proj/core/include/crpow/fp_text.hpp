// Textual machine-number formats: the fixture form "sign 0bMANTISSA p EXP",
// the human-readable binary-significand form "1.b1b2...x2^e", and decimal
// input with an explicit inexactness report.
#pragma once

#include "crpow/softfloat.hpp"

#include <string>

namespace crpow {

/// "+ 0b110110... 53 17" (sign, p mantissa bits, precision, exponent);
/// zeros print as "+ 0b0 53 0".
std::string format_fp(const FpNumber& x);
FpNumber parse_fp(const std::string& text);

/// "1.0100...x2^17", "-1.1", "1.0", "0". The suffix is omitted when e = 0.
std::string format_binary_significand(const FpNumber& x);

/// Parse the binary-significand form at a given precision; the literal must
/// be exactly representable (at most p bits). Errors carry the position.
FpNumber parse_binary_significand(const std::string& text, Precision p);

struct DecimalParse {
    FpNumber value;
    bool exact = false;  // decimal literals are rounded (RN) when not dyadic
};

/// Decimal literal ("3", "1.5", "0.1", "2.5e-3") rounded to precision p.
DecimalParse parse_decimal(const std::string& text, Precision p,
                           RoundingMode mode = RoundingMode::NearestEven);

/// Either input form: literals shaped like "1.《0/1 bits》[x2^E]" are read as
/// binary significands (always exact); anything else is decimal.
DecimalParse parse_fp_literal(const std::string& text, Precision p);

/// Round-to-nearest decimal rendering with `digits` significant digits;
/// appends "..." when the expansion was cut.
std::string to_decimal_string(const ExactValue& v, int digits = 21);

}  // namespace crpow
