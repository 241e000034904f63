#include "crpow/fp_text.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <sstream>

namespace crpow {

namespace mp = boost::multiprecision;

namespace {

[[noreturn]] void parse_fail(const std::string& text, std::size_t pos, const std::string& what) {
    std::ostringstream out;
    out << "parse error at position " << pos << " in \"" << text << "\": " << what;
    throw std::invalid_argument(out.str());
}

}  // namespace

std::string format_fp(const FpNumber& x) {
    std::ostringstream out;
    out << (x.sign() < 0 ? "- " : "+ ");
    if (x.is_zero()) {
        out << "0b0 " << x.precision().bits() << " 0";
        return out.str();
    }
    out << "0b";
    std::uint64_t m = x.significand();
    for (int i = x.precision().bits() - 1; i >= 0; --i) out << ((m >> i) & 1);
    out << ' ' << x.precision().bits() << ' ' << x.exponent();
    return out.str();
}

FpNumber parse_fp(const std::string& text) {
    std::istringstream in(text);
    std::string sign_tok, mant_tok;
    int pbits = 0;
    std::int64_t exp = 0;
    if (!(in >> sign_tok >> mant_tok >> pbits >> exp)) parse_fail(text, 0, "expected: sign 0bMANTISSA p EXP");
    int sign = sign_tok == "-" ? -1 : +1;
    if (sign_tok != "-" && sign_tok != "+") parse_fail(text, 0, "sign must be + or -");
    if (mant_tok.rfind("0b", 0) != 0) parse_fail(text, 2, "mantissa must start with 0b");
    std::uint64_t m = 0;
    for (std::size_t i = 2; i < mant_tok.size(); ++i) {
        char c = mant_tok[i];
        if (c != '0' && c != '1') parse_fail(text, i, "mantissa digit must be 0/1");
        m = (m << 1) | static_cast<std::uint64_t>(c - '0');
    }
    Precision p(pbits);
    if (m == 0) return FpNumber::zero(p, sign);
    return FpNumber::from_parts(sign, m, exp, p);
}

std::string format_binary_significand(const FpNumber& x) {
    if (x.is_zero()) return x.sign() < 0 ? "-0" : "0";
    std::ostringstream out;
    if (x.sign() < 0) out << '-';
    const int pb = x.precision().bits();
    std::uint64_t m = x.significand();
    out << "1.";
    for (int i = pb - 2; i >= 0; --i) out << ((m >> i) & 1);
    if (x.exponent() != 0) out << "x2^" << x.exponent();
    return out.str();
}

FpNumber parse_binary_significand(const std::string& text, Precision p) {
    std::size_t i = 0;
    int sign = +1;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        sign = text[i] == '-' ? -1 : +1;
        ++i;
    }
    if (i >= text.size()) parse_fail(text, i, "empty literal");
    if (text[i] == '0' && i + 1 == text.size()) return FpNumber::zero(p, sign);
    if (text[i] != '1') parse_fail(text, i, "significand must start with 1 or be 0");
    ++i;
    BigInt m = 1;
    int bits = 1;
    if (i < text.size() && text[i] == '.') {
        ++i;
        for (; i < text.size() && (text[i] == '0' || text[i] == '1'); ++i) {
            m = (m << 1) | (text[i] - '0');
            ++bits;
        }
    }
    std::int64_t exp = 0;
    if (i < text.size()) {
        if (text.compare(i, 3, "x2^") == 0)
            i += 3;
        else if (text.compare(i, 3, "*2^") == 0)
            i += 3;
        else
            parse_fail(text, i, "expected x2^E after significand bits");
        if (i >= text.size()) parse_fail(text, i, "missing exponent");
        std::size_t used = 0;
        exp = std::stoll(text.substr(i), &used);
        if (used == 0 || i + used != text.size()) parse_fail(text, i, "bad exponent");
    }
    if (bits > p.bits()) parse_fail(text, 2, "literal has more bits than the precision holds");
    ExactValue v(sign < 0 ? -m : m, exp - bits + 1);
    return FpNumber::from_exact(v, p);
}

DecimalParse parse_decimal(const std::string& text, Precision p, RoundingMode mode) {
    std::size_t i = 0;
    int sign = +1;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        sign = text[i] == '-' ? -1 : +1;
        ++i;
    }
    BigInt digits = 0;
    std::int64_t frac = 0;
    bool any = false, dot = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (dot) parse_fail(text, i, "second decimal point");
            dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = digits * 10 + (c - '0');
            if (dot) ++frac;
            any = true;
        } else {
            break;
        }
    }
    if (!any) parse_fail(text, i, "expected a decimal number");
    std::int64_t exp10 = -frac;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        std::size_t used = 0;
        exp10 += std::stoll(text.substr(i), &used);
        if (used == 0) parse_fail(text, i, "bad decimal exponent");
        i += used;
    }
    if (i != text.size()) parse_fail(text, i, "trailing characters");
    if (sign < 0) digits = -digits;

    // value = digits * 10^exp10 = digits * 5^exp10 * 2^exp10
    if (digits.is_zero()) return {FpNumber::zero(p, sign), true};
    if (exp10 >= 0) {
        BigInt m = digits * mp::pow(BigInt(5), static_cast<unsigned>(exp10));
        ExactValue v(std::move(m), exp10);
        return {round(v, p, mode), v.bit_length() <= p.bits()};
    }
    BigInt den = mp::pow(BigInt(5), static_cast<unsigned>(-exp10));
    // exact when den divides digits
    BigInt q = digits / den;
    bool dyadic = q * den == digits;
    if (dyadic) {
        ExactValue v(std::move(q), exp10);
        return {round(v, p, mode), v.bit_length() <= p.bits()};
    }
    auto [lo, hi] = fraction_enclosure(mp::abs(digits), den, p.bits() + 2);
    // not exactly representable: round the tight enclosure (safe because the
    // enclosure is narrower than the distance to any rounding boundary only
    // when its ends agree; widen until they do)
    for (std::int64_t bits = p.bits() + 2;; bits *= 2) {
        FpNumber a = round(sign < 0 ? -hi : lo, p, mode);
        FpNumber b = round(sign < 0 ? -lo : hi, p, mode);
        if (a == b) return {a, false};
        std::tie(lo, hi) = fraction_enclosure(mp::abs(digits), den, bits * 2);
        if (bits > (std::int64_t(1) << 20)) throw std::runtime_error("parse_decimal: no convergence");
    }
}

DecimalParse parse_fp_literal(const std::string& text, Precision p) {
    std::string body = text;
    if (!body.empty() && (body[0] == '+' || body[0] == '-')) body = body.substr(1);
    bool binary = body.rfind("1.", 0) == 0 || body == "1" || body == "0";
    if (body.rfind("1.", 0) == 0) {
        // binary only if every significand digit is 0/1
        for (std::size_t i = 2; i < body.size() && body[i] != 'x' && body[i] != '*'; ++i) {
            if (body[i] != '0' && body[i] != '1') {
                binary = false;
                break;
            }
        }
    }
    if (binary) return {parse_binary_significand(text, p), true};
    return parse_decimal(text, p);
}

std::string to_decimal_string(const ExactValue& v, int digits) {
    if (v.is_zero()) return "0";
    if (digits < 1) digits = 1;
    BigInt a = mp::abs(v.mantissa());
    std::int64_t s = v.scale();
    // produce >= digits+2 leading decimal digits of |v| plus a base-10 exponent
    std::string dec;
    std::int64_t exp10;
    bool tail_nonzero = false;
    if (s >= 0) {
        dec = (a << static_cast<std::size_t>(s)).convert_to<std::string>();
        exp10 = static_cast<std::int64_t>(dec.size()) - 1;
    } else {
        std::int64_t q = static_cast<std::int64_t>((-s) * 0.30103) + digits + 3;
        BigInt num = a * mp::pow(BigInt(10), static_cast<unsigned>(q));
        BigInt scaled = num >> static_cast<std::size_t>(-s);
        tail_nonzero = (scaled << static_cast<std::size_t>(-s)) != num;
        dec = scaled.convert_to<std::string>();
        exp10 = static_cast<std::int64_t>(dec.size()) - 1 - q;
    }
    while (dec.size() > 1 && dec.back() == '0') dec.pop_back();
    bool cut = static_cast<std::size_t>(digits) < dec.size();
    std::string kept = cut ? dec.substr(0, static_cast<std::size_t>(digits)) : dec;
    if (cut && dec[kept.size()] >= '5') {  // display rounding, half up
        int carry = 1;
        for (std::size_t j = kept.size(); j-- > 0 && carry;) {
            if (kept[j] == '9') {
                kept[j] = '0';
            } else {
                ++kept[j];
                carry = 0;
            }
        }
        if (carry) {
            kept.insert(kept.begin(), '1');
            kept.pop_back();
            ++exp10;
        }
        while (kept.size() > 1 && kept.back() == '0') kept.pop_back();
    }
    std::ostringstream out;
    if (v.sign() < 0) out << '-';
    out << kept[0];
    if (kept.size() > 1) out << '.' << kept.substr(1);
    if (exp10 != 0) out << 'e' << exp10;
    if (cut || tail_nonzero) out << "...";
    return out.str();
}

}  // namespace crpow
