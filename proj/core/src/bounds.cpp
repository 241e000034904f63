#include "crpow/bounds.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <sstream>

namespace crpow {

namespace mp = boost::multiprecision;

ExactValue eta_value(Precision p) {
    const std::int64_t pb = p.bits();
    static constexpr std::array<int, 6> coeff = {6, 16, 17, 11, 5, 1};
    ExactValue sum;
    for (int k = 0; k < 6; ++k)
        sum = sum + ExactValue(coeff[static_cast<std::size_t>(k)], -(k + 2) * pb);
    return sum;
}

ErrorBound eta_bound(Precision p) {
    ExactValue v = eta_value(p);
    BoundValue bv{v, v, true};
    return ErrorBound{bv, neg_log2_string(bv)};
}

namespace {

// Truncated binomial expansion of (1+eta)^(n-1) - 1 with k <= terms; exact
// when terms >= n-1, otherwise paired with a geometric remainder bound valid
// while the term ratio eta*(n-2-K)/(K+2) stays at most 1/2.
BoundValue alpha_partial(const BigInt& n, Precision p, std::int64_t terms) {
    const ExactValue eta = eta_value(p);
    const bool complete = n - 1 <= terms;
    const std::int64_t K = complete ? (n - 1).convert_to<std::int64_t>() : terms;

    ExactValue sum;
    ExactValue eta_pow = eta;       // eta^k
    BigInt binom = n - 1;           // C(n-1, k)
    for (std::int64_t k = 1; k <= K; ++k) {
        sum = sum + ExactValue::from_integer(binom) * eta_pow;
        if (k < K || !complete) {
            binom *= (n - 1 - k);
            binom /= (k + 1);
            eta_pow = eta_pow * eta;
        }
    }
    if (complete) return BoundValue{sum, sum, true};

    // binom/eta_pow now hold the first dropped term T_{K+1}
    ExactValue tail_head = ExactValue::from_integer(binom) * eta_pow;
    ExactValue ratio2 = eta * ExactValue::from_integer(2 * (n - 2 - K));  // 2 * (K+2) * r*
    if (!(ratio2 <= ExactValue::from_integer(K + 2)))
        return BoundValue{sum, ExactValue(), false};  // no certified upper end yet
    ExactValue upper = sum + tail_head.scaled(1);
    return BoundValue{sum, upper, false};
}

bool upper_usable(const BoundValue& b) { return b.exact || !b.upper.is_zero(); }

// sign of (2*alpha - thr) decided from the enclosure; 0 means undecided.
int compare_twice_alpha(const BoundValue& b, const ExactValue& thr) {
    if (b.exact) {
        ExactValue d = b.lower.scaled(1) - thr;
        return d.is_zero() ? 0 : d.sign();  // exact: zero means equal
    }
    if (b.lower.scaled(1) > thr) return 1;
    if (upper_usable(b) && b.upper.scaled(1) < thr) return -1;
    return 0;
}

constexpr std::int64_t kExactCutoff = 600;

BoundValue alpha_enclosure_for(const BigInt& n, Precision p, std::int64_t terms) {
    if (n - 1 <= kExactCutoff) return alpha_partial(n, p, kExactCutoff);
    return alpha_partial(n, p, terms);
}

}  // namespace

ErrorBound logpower_alpha_max(std::int64_t n, Precision p) {
    if (n < 2) throw std::invalid_argument("logpower_alpha_max: n must be >= 2");
    for (std::int64_t terms = 4; terms <= 4096; terms *= 4) {
        BoundValue b = alpha_enclosure_for(n, p, terms);
        if (!upper_usable(b)) continue;
        std::string s = neg_log2_string(b);
        if (!s.empty()) return ErrorBound{b, s};
        if (b.exact) break;
    }
    throw std::runtime_error("logpower_alpha_max: enclosure did not converge");
}

ExactValue linpower_gamma(std::int64_t n, Precision p) {
    if (n < 3) throw std::invalid_argument("linpower_gamma: n must be >= 3");
    const ExactValue one_plus_eps = ExactValue::from_integer(1) + p.eps();
    ExactValue sum;
    ExactValue powj = ExactValue::from_integer(1);
    for (std::int64_t j = 0; j <= n - 3; ++j) {
        sum = sum + ExactValue::from_integer(n - 1 - j) * powj;
        if (j < n - 3) powj = powj * one_plus_eps;
    }
    return sum;
}

ExactValue linpower_gamma_closed_form(std::int64_t n, Precision p) {
    if (n < 3) throw std::invalid_argument("linpower_gamma_closed_form: n must be >= 3");
    // With D = 2^p and N = D+1 (so 1+e = N/D and u = 1/(1+e) = D/N), the
    // derivative formula collapses over the common denominator to
    //   phi'(1) = [(n-1) D^n - n D^(n-1) N + N^n - N^(n-2)] / D^(n-2).
    const BigInt D = BigInt(1) << static_cast<std::size_t>(p.bits());
    const BigInt N = D + 1;
    BigInt Dn2 = mp::pow(D, static_cast<unsigned>(n - 2));
    BigInt Dn1 = Dn2 * D;
    BigInt Dn = Dn1 * D;
    BigInt Nn2 = mp::pow(N, static_cast<unsigned>(n - 2));
    BigInt Nn = Nn2 * N * N;
    BigInt numer = BigInt(n - 1) * Dn - BigInt(n) * Dn1 * N + Nn - Nn2;
    return ExactValue(std::move(numer), -static_cast<std::int64_t>(p.bits()) * (n - 2));
}

ErrorBound linpower_alpha_max(std::int64_t n, Precision p) {
    ExactValue v = linpower_gamma(n, p).scaled(1) * p.eps() * p.eps();  // 2 e^2 gamma
    BoundValue bv{v, v, true};
    return ErrorBound{bv, neg_log2_string(bv)};
}

ExactValue linpower_alpha_approx(std::int64_t n, Precision p) {
    if (n < 3) throw std::invalid_argument("linpower_alpha_approx: n must be >= 3");
    return ExactValue::from_integer(BigInt(n) * n - n - 2) * p.eps() * p.eps();
}

namespace {

// 2*alpha(n) < thr, decided with refinement.
bool alpha_twice_below(const BigInt& n, Precision p, const ExactValue& thr, bool strict) {
    for (std::int64_t terms = 4; terms <= 65536; terms *= 4) {
        BoundValue b = alpha_enclosure_for(n, p, terms);
        // the lower end alone can refute
        if (b.lower.scaled(1) > thr || (strict && b.exact && b.lower.scaled(1) == thr)) return false;
        int c = compare_twice_alpha(b, thr);
        if (c < 0) return true;
        if (c > 0) return false;
        if (c == 0 && b.exact) return !strict;  // exactly equal
    }
    throw std::runtime_error("alpha_twice_below: could not decide");
}

}  // namespace

BigInt faithful_limit(Precision work, Precision target) {
    if (target.bits() > work.bits())
        throw std::invalid_argument("faithful_limit: target precision exceeds working precision");
    const ExactValue thr = ExactValue::pow2(-target.bits());
    if (!alpha_twice_below(2, work, thr, true)) return 1;
    BigInt lo = 2;  // known below
    BigInt hi = 4;
    while (alpha_twice_below(hi, work, thr, true)) {
        lo = hi;
        if (hi > (BigInt(1) << 200)) throw std::runtime_error("faithful_limit: search overflow");
        hi *= 2;
    }
    // largest below is in [lo, hi)
    while (hi - lo > 1) {
        BigInt mid = lo + (hi - lo) / 2;
        if (alpha_twice_below(mid, work, thr, true))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

MarginResult correct_rounding_margin(std::int64_t n, Precision work, Precision target, int run_len) {
    if (run_len < 0) throw std::invalid_argument("correct_rounding_margin: run_len must be >= 0");
    if (n < 2) throw std::invalid_argument("correct_rounding_margin: n must be >= 2");
    const ExactValue thr = ExactValue::pow2(-(target.bits() + run_len + 1));
    // certified iff 2*alpha <= thr
    return alpha_twice_below(n, work, thr, false) ? MarginResult::Certified : MarginResult::NotCertified;
}

std::vector<TableRow> make_tables(Precision p, TableKind kind) {
    static const std::vector<std::int64_t> log_rows = {
        3, 4, 5, 10, 20, 30, 40, 50, 100, 200,
        1000, 10000, 100000, 1000000, 10000000, 100000000, std::int64_t(1) << 32};
    static const std::vector<std::int64_t> lin_rows = {3, 4, 5, 10, 20, 30, 100};

    std::vector<TableRow> rows;
    if (kind == TableKind::LogPower) {
        rows.reserve(log_rows.size());
        for (std::int64_t n : log_rows) rows.push_back({n, logpower_alpha_max(n, p).neg_log2});
    } else {
        rows.reserve(lin_rows.size());
        for (std::int64_t n : lin_rows) rows.push_back({n, linpower_alpha_max(n, p).neg_log2});
    }
    return rows;
}

std::int64_t neg_log2_centibits(const ExactValue& v) {
    if (v.sign() <= 0) throw std::domain_error("neg_log2_centibits: value must be positive");
    // work on a 320-bit outward-rounded pair; if they straddle a centibit
    // boundary, fall back to the full value
    ExactValue w = v;
    if (w.bit_length() > 320) {
        ExactValue lo = v.round_down_to_bits(320);
        ExactValue hi = v.round_up_to_bits(320);
        auto cent = [](const ExactValue& x) {
            ExactValue beta = x.pow(100);
            std::int64_t L = beta.floor_log2();
            bool is_pow2 = beta.mantissa() == 1;
            return is_pow2 ? -L : -L - 1;
        };
        std::int64_t a = cent(hi);  // smaller -log2
        std::int64_t b = cent(lo);
        if (a == b) return a;
        // fall through with the exact value (rare)
    }
    ExactValue beta = w.pow(100);
    std::int64_t L = beta.floor_log2();
    return beta.mantissa() == 1 ? -L : -L - 1;
}

std::string format_centibits(std::int64_t t) {
    std::ostringstream out;
    std::int64_t a = t;
    if (a < 0) {
        out << '-';
        a = -a;
    }
    out << a / 100 << '.';
    std::int64_t frac = a % 100;
    out << char('0' + frac / 10) << char('0' + frac % 10);
    return out.str();
}

std::string neg_log2_string(const BoundValue& v) {
    if (v.exact) return format_centibits(neg_log2_centibits(v.lower));
    std::int64_t from_hi = neg_log2_centibits(v.upper);
    std::int64_t from_lo = neg_log2_centibits(v.lower);
    if (from_hi != from_lo) return {};
    return format_centibits(from_hi);
}

}  // namespace crpow
