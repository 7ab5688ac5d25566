#pragma once

// Core arithmetic for augmented happy functions.
//
// S[c,b] maps a natural number to c plus the sum of the squares of its
// base-b digits.  Everything else in this library (cycle enumeration,
// attraction classification, witness construction) is built on the small
// set of primitives defined here: parameter derivation, digit-string
// arithmetic of unbounded length, single applications of the map, and the
// mod-2 shortcut available in odd bases.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace aghf {

using Nat = std::uint64_t;

/// Parameters (c, b) of the map S[c,b] together with derived constants that
/// the rest of the library relies on.
struct Params {
    Nat c = 0;             ///< additive constant, c >= 0
    std::uint32_t b = 10;  ///< radix, b >= 2
    std::uint32_t d = 1;   ///< gcd(2, b-1): step width of attainable consecutive runs
    std::uint32_t m = 1;   ///< smallest m >= 1 with b^m > b^2 - 3b + 3 + c
    Nat bound = 0;         ///< B = max(b^m, c + m*(b-1)^2); see enumeration_bound()

    /// Validates b >= 2 and derives d, m and bound.  Throws
    /// std::invalid_argument for b < 2 and std::overflow_error when the
    /// derived bound would not fit in 64 bits.
    static Params make(Nat c, std::uint32_t b);

    bool operator==(const Params&) const = default;
};

/// Smallest m >= 1 with b^m > b^2 - 3b + 3 + c.  Above b^m the map strictly
/// descends: a - S[c,b](a) > 0 for every a >= b^m.
std::uint32_t descent_exponent(Nat c, std::uint32_t b);
inline std::uint32_t descent_exponent(const Params& p) { return p.m; }

/// B = max(b^m, c + m*(b-1)^2).  The interval [1, B] is closed under
/// S[c,b] and every trajectory eventually enters it, so enumerating cycles
/// inside [1, B] finds all of them.
Nat enumeration_bound(Nat c, std::uint32_t b);
inline Nat enumeration_bound(const Params& p) { return p.bound; }

/// A base-b natural number of arbitrary length.  Digits are stored least
/// significant first.  Canonical form never carries a most-significant zero
/// digit; the value zero is the single digit 0.
///
/// Text format: for b <= 10 a contiguous digit string, most significant
/// first ("11120200"); for b > 10 colon-separated decimal digit values,
/// most significant first ("12:0:7").
class DigitString {
public:
    explicit DigitString(std::uint32_t radix);  // the value zero

    static DigitString from_value(Nat value, std::uint32_t radix);
    /// Parses the canonical text format.  Throws std::invalid_argument on
    /// malformed input or digits >= radix.
    static DigitString parse(std::string_view text, std::uint32_t radix);
    /// n ones followed by r zeros (least significant side), the shape that
    /// appears when a witness program is rewritten across an application of
    /// the map.  ones == 0 yields r zeros, i.e. the value zero.
    static DigitString ones_then_zeros(Nat ones, Nat zeros, std::uint32_t radix);

    std::uint32_t radix() const { return radix_; }
    const std::vector<std::uint32_t>& digits() const { return digits_; }  // LSB first
    std::size_t digit_count() const { return digits_.size(); }
    bool is_zero() const { return digits_.size() == 1 && digits_[0] == 0; }

    /// True when the numeric value fits in 64 bits.
    bool fits_value() const;
    /// Numeric value; throws std::overflow_error if it does not fit.
    Nat value() const;

    /// In-place addition of a machine-size constant with carry propagation.
    void add(Nat x);

    /// Canonical text rendering (see class comment).
    std::string str() const;

    bool operator==(const DigitString&) const = default;

private:
    std::vector<std::uint32_t> digits_;
    std::uint32_t radix_;
};

/// Base-b digit expansion of a.
DigitString to_digits(Nat a, const Params& p);

/// a + x without leaving digit-string form.
DigitString add_small(const DigitString& a, Nat x);

/// Sum of the squares of the base-b digits of a.
Nat sum_of_digit_squares(Nat a, std::uint32_t b);

/// One application of the map: c + sum of squared base-b digits.
/// S[c,b](0) = c: an empty digit-square sum contributes nothing, so only
/// the constant remains.  (This convention keeps the congruence behind the
/// third merge case valid when the pair differs by exactly 1.)
Nat s_apply(Nat a, const Params& p);
/// Same, reading the digits directly from a digit string (no value bound).
/// Throws std::invalid_argument when the radix disagrees with p.b.
Nat s_apply(const DigitString& a, const Params& p);

/// k-fold application of S[c,b]; k = 0 returns a unchanged.
Nat s_iterate(Nat a, Nat k, const Params& p);

/// Parity of S^k(a) in odd bases, computed without iterating:
/// S^k(a) == k*c + a (mod 2).  Returns 0 or 1; throws
/// std::invalid_argument when b is even.
int parity_predict(Nat a, Nat k, const Params& p);

/// The nonzero base-b digits of a, sorted ascending.  s_apply depends on a
/// number only through this multiset.
std::vector<std::uint32_t> nonzero_digits_sorted(Nat a, std::uint32_t b);

}  // namespace aghf
