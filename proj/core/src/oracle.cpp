#include "crpow/oracle.hpp"

#include "crpow/fp_text.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <thread>
#include <vector>

namespace crpow {

namespace mp = boost::multiprecision;

ExactValue exact_pow(const FpNumber& x, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("exact_pow: n must be >= 1");
    if (x.is_zero()) throw std::invalid_argument("exact_pow: x must be nonzero");
    return x.to_exact().pow(static_cast<std::uint64_t>(n));
}

std::pair<ExactValue, ExactValue> pow_enclosure(const FpNumber& x, std::int64_t n,
                                                std::int64_t window_bits) {
    if (n < 1) throw std::invalid_argument("pow_enclosure: n must be >= 1");
    if (x.is_zero() || x.is_negative()) throw std::invalid_argument("pow_enclosure: need x > 0");
    if (window_bits < 64) window_bits = 64;

    ExactValue rlo = ExactValue::from_integer(1), rhi = rlo;
    ExactValue blo = x.to_exact(), bhi = blo;
    std::uint64_t k = static_cast<std::uint64_t>(n);
    auto cut = [&](ExactValue& lo, ExactValue& hi) {
        lo = lo.round_down_to_bits(window_bits);
        hi = hi.round_up_to_bits(window_bits);
    };
    while (k != 0) {
        if (k & 1) {
            rlo = rlo * blo;
            rhi = rhi * bhi;
            cut(rlo, rhi);
        }
        k >>= 1;
        if (k != 0) {
            blo = blo * blo;
            bhi = bhi * bhi;
            cut(blo, bhi);
        }
    }
    return {rlo, rhi};
}

namespace {

// RD/RU of a positive value by truncation of the canonical mantissa.
struct PositiveBrackets {
    std::uint64_t m_lo;
    std::int64_t e_lo;
    bool exact;
    int cmp_mid;  // -1 below, 0 at, +1 above the midpoint (when inexact)
};

PositiveBrackets bracket_positive(const ExactValue& v, Precision p) {
    const BigInt a = mp::abs(v.mantissa());
    const std::int64_t len = static_cast<std::int64_t>(mp::msb(a)) + 1;
    const std::int64_t e = v.scale() + len - 1;
    const int pb = p.bits();
    if (len <= pb) {
        std::uint64_t m = (a << static_cast<std::size_t>(pb - len)).convert_to<std::uint64_t>();
        return {m, e, true, 0};
    }
    const std::size_t excess = static_cast<std::size_t>(len - pb);
    BigInt keep = a >> excess;
    BigInt rem = a - (keep << excess);
    BigInt half = BigInt(1) << (excess - 1);
    int cmp = rem < half ? -1 : (rem == half ? 0 : +1);
    return {keep.convert_to<std::uint64_t>(), e, false, cmp};
}

FpNumber successor(std::uint64_t m, std::int64_t e, Precision p) {
    const int pb = p.bits();
    const std::uint64_t all = pb == 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << pb) - 1);
    if (m == all) return FpNumber::from_parts(+1, std::uint64_t(1) << (pb - 1), e + 1, p);
    return FpNumber::from_parts(+1, m + 1, e, p);
}

}  // namespace

RoundingNeighborhood classify_rounding(const ExactValue& v, Precision p) {
    if (v.is_zero()) throw std::invalid_argument("classify_rounding: v must be nonzero");
    PositiveBrackets b = bracket_positive(v.abs(), p);
    FpNumber lo = FpNumber::from_parts(+1, b.m_lo, b.e_lo, p);
    if (b.exact) {
        FpNumber r = v.sign() < 0 ? lo.negated() : lo;
        return {r, r, RoundPosition::Exact};
    }
    FpNumber hi = successor(b.m_lo, b.e_lo, p);
    RoundPosition pos = b.cmp_mid == 0
                            ? RoundPosition::AtMid
                            : (b.cmp_mid < 0 ? RoundPosition::BelowMid : RoundPosition::AboveMid);
    if (v.sign() < 0) {
        // mirror: brackets swap and the midpoint relation flips
        if (pos == RoundPosition::BelowMid)
            pos = RoundPosition::AboveMid;
        else if (pos == RoundPosition::AboveMid)
            pos = RoundPosition::BelowMid;
        return {hi.negated(), lo.negated(), pos};
    }
    return {lo, hi, pos};
}

int significand_bit(const ExactValue& v, std::int64_t index) {
    if (v.is_zero()) throw std::invalid_argument("significand_bit: v must be nonzero");
    if (index < 1) throw std::invalid_argument("significand_bit: index is 1-based");
    const BigInt a = mp::abs(v.mantissa());
    const std::int64_t len = static_cast<std::int64_t>(mp::msb(a)) + 1;
    if (index > len) return 0;
    return mp::bit_test(a, static_cast<unsigned>(len - index)) ? 1 : 0;
}

RunInfo run_length(const ExactValue& v, Precision p) {
    if (v.is_zero()) throw std::invalid_argument("run_length: v must be nonzero");
    const std::int64_t len = v.bit_length();  // canonical: mantissa is odd
    const std::int64_t pb = p.bits();
    RunInfo info;
    if (len <= pb) {
        info.kind = RunInfo::Kind::ExactAtPrecision;
        return info;
    }
    info.rounding_bit = significand_bit(v, pb + 1);
    if (len == pb + 1) {
        // the expansion stops at the rounding bit: exactly a midpoint
        info.kind = RunInfo::Kind::ExactBreakpoint;
        return info;
    }
    const int first = significand_bit(v, pb + 2);
    std::int64_t j = 1;
    while (pb + 2 + j <= len && significand_bit(v, pb + 2 + j) == first) ++j;
    info.run_len = j;
    info.next_bit = pb + 2 + j <= len ? 1 - first : 0;  // implicit zeros end a run of ones
    return info;
}

bool is_faithful(const FpNumber& result, const ExactValue& v) {
    RoundingNeighborhood nb = classify_rounding(v, result.precision());
    return result == nb.below || result == nb.above;
}

ExactValue ulp_distance(const FpNumber& result, const ExactValue& v) {
    if (result.is_zero()) throw std::invalid_argument("ulp_distance: result must be nonzero");
    ExactValue d = (result.to_exact() - v).abs();
    return d.scaled(result.precision().bits() - 1 - result.exponent());
}

ExactValue ulp_distance_max(const FpNumber& result, const ExactValue& vlo, const ExactValue& vhi) {
    ExactValue a = ulp_distance(result, vlo);
    ExactValue b = ulp_distance(result, vhi);
    return a < b ? b : a;
}

std::optional<WorstCaseRecord> search_worst_cases(Precision p, std::int64_t n, int threads) {
    if (n < 1) throw std::invalid_argument("search_worst_cases: n must be >= 1");
    if (p.bits() > 30) {
        std::ostringstream out;
        out << "search_worst_cases: p = " << p.bits() << " means enumerating 2^" << (p.bits() - 1)
            << " significands; refusing p > 30";
        throw std::invalid_argument(out.str());
    }
    const std::uint64_t m_first = std::uint64_t(1) << (p.bits() - 1);
    const std::uint64_t m_last = (std::uint64_t(1) << p.bits()) - 1;

    struct Best {
        std::int64_t run = -1;
        std::uint64_t m = 0;
        RunInfo info;
    };
    auto scan = [&](std::uint64_t from, std::uint64_t to) {
        Best best;
        for (std::uint64_t m = from; m <= to; ++m) {
            BigInt mw = mp::pow(BigInt(m), static_cast<unsigned>(n));
            RunInfo info = run_length(ExactValue(std::move(mw), 0), p);
            if (info.kind != RunInfo::Kind::Normal) continue;  // exact cases carry no run
            if (info.run_len > best.run) best = {info.run_len, m, info};
        }
        return best;
    };

    Best overall;
    if (threads <= 1) {
        overall = scan(m_first, m_last);
    } else {
        std::vector<Best> parts(static_cast<std::size_t>(threads));
        std::vector<std::thread> pool;
        const std::uint64_t total = m_last - m_first + 1;
        for (int t = 0; t < threads; ++t) {
            std::uint64_t a = m_first + total * static_cast<std::uint64_t>(t) / static_cast<std::uint64_t>(threads);
            std::uint64_t b = m_first + total * (static_cast<std::uint64_t>(t) + 1) / static_cast<std::uint64_t>(threads) - 1;
            pool.emplace_back([&, a, b, t] { parts[static_cast<std::size_t>(t)] = scan(a, b); });
        }
        for (auto& th : pool) th.join();
        for (const Best& b : parts) {
            // max run; ties resolved to the smallest significand (parts are ordered)
            if (b.run > overall.run) overall = b;
        }
    }
    if (overall.run < 0) return std::nullopt;

    WorstCaseRecord rec{FpNumber::from_parts(+1, overall.m, 0, p),
                        n,
                        overall.info.rounding_bit,
                        overall.info.run_len,
                        overall.info.next_bit,
                        p.bits() + overall.info.run_len + 1};
    return rec;
}

std::string to_json_line(const WorstCaseRecord& rec) {
    std::ostringstream out;
    out << "{\"x\":\"" << format_binary_significand(rec.x) << "\",\"n\":" << rec.n
        << ",\"rounding_bit\":" << rec.rounding_bit << ",\"run_len\":" << rec.run_len
        << ",\"next_bit\":" << rec.next_bit << ",\"distance_exponent\":" << rec.distance_exponent
        << "}";
    return out.str();
}

}  // namespace crpow
