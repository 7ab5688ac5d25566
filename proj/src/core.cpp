#include "aghf/core.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace aghf {

namespace {

using U128 = unsigned __int128;

// Largest parameter sizes accepted by Params::make.  They keep every derived
// quantity (b^m, the enumeration bound, digit-square sums) comfortably inside
// 64 bits without per-operation overflow checks downstream.
constexpr Nat kMaxC = 1'000'000'000'000'000ULL;  // 10^15
constexpr std::uint32_t kMaxB = 1u << 20;

}  // namespace

std::uint32_t descent_exponent(Nat c, std::uint32_t b) {
    if (b < 2) throw std::invalid_argument("radix must be at least 2");
    // b^2 - 3b + 3 + c, rearranged so the unsigned subtraction cannot wrap
    // (b^2 + 3 + c >= 3b holds for every b >= 2).
    const U128 threshold = U128(b) * b + 3 + c - U128(3) * b;
    U128 pw = 1;
    std::uint32_t m = 0;
    do {
        ++m;
        pw *= b;
    } while (pw <= threshold);
    return m;
}

Nat enumeration_bound(Nat c, std::uint32_t b) {
    const std::uint32_t m = descent_exponent(c, b);
    U128 pw = 1;
    for (std::uint32_t i = 0; i < m; ++i) pw *= b;
    const U128 digit_cap = U128(c) + U128(m) * (b - 1) * (b - 1);
    const U128 bound = std::max(pw, digit_cap);
    if (bound > std::numeric_limits<Nat>::max())
        throw std::overflow_error("enumeration bound exceeds 64 bits");
    return Nat(bound);
}

Params Params::make(Nat c, std::uint32_t b) {
    if (b < 2) throw std::invalid_argument("radix must be at least 2");
    if (b > kMaxB) throw std::invalid_argument("radix too large");
    if (c > kMaxC) throw std::invalid_argument("additive constant too large");
    Params p;
    p.c = c;
    p.b = b;
    p.d = (b % 2 == 0) ? 1 : 2;  // gcd(2, b-1)
    p.m = descent_exponent(c, b);
    p.bound = enumeration_bound(c, b);
    return p;
}

// ---------------------------------------------------------------------------
// DigitString

DigitString::DigitString(std::uint32_t radix) : digits_{0}, radix_(radix) {
    if (radix < 2) throw std::invalid_argument("radix must be at least 2");
}

DigitString DigitString::from_value(Nat value, std::uint32_t radix) {
    DigitString ds(radix);
    if (value == 0) return ds;
    ds.digits_.clear();
    while (value > 0) {
        ds.digits_.push_back(std::uint32_t(value % radix));
        value /= radix;
    }
    return ds;
}

DigitString DigitString::parse(std::string_view text, std::uint32_t radix) {
    DigitString ds(radix);
    if (text.empty()) throw std::invalid_argument("empty digit string");
    std::vector<std::uint32_t> msb_first;
    if (radix <= 10) {
        msb_first.reserve(text.size());
        for (char ch : text) {
            if (ch < '0' || ch > '9')
                throw std::invalid_argument("invalid character in digit string");
            const std::uint32_t dv = std::uint32_t(ch - '0');
            if (dv >= radix) throw std::invalid_argument("digit value exceeds radix");
            msb_first.push_back(dv);
        }
    } else {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t next = text.find(':', pos);
            const std::string_view tok =
                text.substr(pos, next == std::string_view::npos ? next : next - pos);
            if (tok.empty()) throw std::invalid_argument("empty digit in digit string");
            Nat dv = 0;
            for (char ch : tok) {
                if (ch < '0' || ch > '9')
                    throw std::invalid_argument("invalid character in digit string");
                dv = dv * 10 + Nat(ch - '0');
                if (dv >= radix) throw std::invalid_argument("digit value exceeds radix");
            }
            msb_first.push_back(std::uint32_t(dv));
            if (next == std::string_view::npos) break;
            pos = next + 1;
        }
    }
    // strip redundant leading zeros, keep canonical zero
    std::size_t lead = 0;
    while (lead + 1 < msb_first.size() && msb_first[lead] == 0) ++lead;
    ds.digits_.assign(msb_first.rbegin(), msb_first.rend() - lead);
    return ds;
}

DigitString DigitString::ones_then_zeros(Nat ones, Nat zeros, std::uint32_t radix) {
    DigitString ds(radix);
    if (ones == 0) return ds;  // all zeros collapse to the canonical zero
    ds.digits_.assign(std::size_t(ones + zeros), 0);
    std::fill(ds.digits_.begin() + std::ptrdiff_t(zeros), ds.digits_.end(), 1u);
    return ds;
}

bool DigitString::fits_value() const {
    U128 acc = 0;
    for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) {
        acc = acc * radix_ + *it;
        if (acc > std::numeric_limits<Nat>::max()) return false;
    }
    return true;
}

Nat DigitString::value() const {
    U128 acc = 0;
    for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) {
        acc = acc * radix_ + *it;
        if (acc > std::numeric_limits<Nat>::max())
            throw std::overflow_error("digit string value exceeds 64 bits");
    }
    return Nat(acc);
}

void DigitString::add(Nat x) {
    U128 carry = x;
    for (std::size_t i = 0; carry != 0 && i < digits_.size(); ++i) {
        const U128 t = carry + digits_[i];
        digits_[i] = std::uint32_t(t % radix_);
        carry = t / radix_;
    }
    while (carry != 0) {
        digits_.push_back(std::uint32_t(carry % radix_));
        carry /= radix_;
    }
    // adding to the canonical zero may leave a stale high zero: {0} + b -> {0,1}
    // is fine, but {0} stays {0} when x == 0, so only trim if non-canonical.
    while (digits_.size() > 1 && digits_.back() == 0) digits_.pop_back();
}

std::string DigitString::str() const {
    std::string out;
    if (radix_ <= 10) {
        out.reserve(digits_.size());
        for (auto it = digits_.rbegin(); it != digits_.rend(); ++it)
            out.push_back(char('0' + *it));
    } else {
        for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) {
            if (!out.empty()) out.push_back(':');
            out += std::to_string(*it);
        }
    }
    return out;
}

DigitString to_digits(Nat a, const Params& p) { return DigitString::from_value(a, p.b); }

DigitString add_small(const DigitString& a, Nat x) {
    DigitString out = a;
    out.add(x);
    return out;
}

// ---------------------------------------------------------------------------
// The map itself

Nat sum_of_digit_squares(Nat a, std::uint32_t b) {
    Nat acc = 0;
    while (a > 0) {
        const Nat dv = a % b;
        acc += dv * dv;  // < 2^40 per digit and at most 64 digits: no overflow
        a /= b;
    }
    return acc;
}

Nat s_apply(Nat a, const Params& p) { return p.c + sum_of_digit_squares(a, p.b); }

Nat s_apply(const DigitString& a, const Params& p) {
    if (a.radix() != p.b)
        throw std::invalid_argument("digit string radix does not match parameters");
    U128 acc = p.c;
    for (std::uint32_t dv : a.digits()) acc += U128(dv) * dv;
    if (acc > std::numeric_limits<Nat>::max())
        throw std::overflow_error("digit-square sum exceeds 64 bits");
    return Nat(acc);
}

Nat s_iterate(Nat a, Nat k, const Params& p) {
    for (Nat i = 0; i < k; ++i) a = s_apply(a, p);
    return a;
}

int parity_predict(Nat a, Nat k, const Params& p) {
    if (p.b % 2 == 0)
        throw std::invalid_argument("parity prediction requires an odd radix");
    return int(((k & 1) * (p.c & 1) + (a & 1)) & 1);
}

std::vector<std::uint32_t> nonzero_digits_sorted(Nat a, std::uint32_t b) {
    std::vector<std::uint32_t> out;
    while (a > 0) {
        const std::uint32_t dv = std::uint32_t(a % b);
        if (dv != 0) out.push_back(dv);
        a /= b;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace aghf
