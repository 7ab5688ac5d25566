#pragma once

// Constructive goodness witnesses.
//
// A set T is "good" for S[c,b] when, for any requested cycle element u,
// some shift n and iteration count k satisfy S^k(t + n) = u for every t in
// T.  This module builds such witnesses as explicit step programs: ordered
// sequences of "add a constant" and "apply the map" steps that collapse the
// whole set onto u.  The classical (n, k) form is recovered by
// normalize_witness, which rewrites the program into a single shift whose
// digit expansion can be enormous — hence the digit cap.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aghf/core.hpp"

namespace aghf {

struct Step {
    enum class Op {
        add_const,  ///< t -> t + amount
        apply_s,    ///< t -> S[c,b](t)
    };
    Op op = Op::apply_s;
    Nat amount = 0;  ///< used by add_const only

    bool operator==(const Step&) const = default;
};

/// An ordered list of steps applied left to right, tied to fixed (c, b).
class StepProgram {
public:
    StepProgram() = default;
    explicit StepProgram(Params p) : params_(std::move(p)) {}

    const Params& params() const { return params_; }
    const std::vector<Step>& steps() const { return steps_; }
    bool empty() const { return steps_.empty(); }

    void push_add(Nat m) { steps_.push_back(Step{Step::Op::add_const, m}); }
    void push_apply() { steps_.push_back(Step{Step::Op::apply_s, 0}); }
    /// Concatenates other's steps; both programs must share (c, b).
    void append(const StepProgram& other);

    /// Runs the program on t.
    Nat apply(Nat t) const;
    /// Values seen while running the program on t: the input to every step
    /// followed by the final result (size steps()+1).
    std::vector<Nat> trace(Nat t) const;

    bool operator==(const StepProgram&) const = default;

private:
    Params params_;
    std::vector<Step> steps_;
};

/// True when a witness can exist for t_set: all elements agree mod
/// d = gcd(2, b-1).  (For odd b, elements of different parity can never be
/// collapsed: the map preserves the parity gap.)
bool is_good_possible(const std::vector<Nat>& t_set, const Params& p);

/// The digit j in [0, b-1) with 2j == -S(w-1) + c - 1 (mod b-1), the
/// alignment digit used by the third merge case for a pair at distance w.
/// Smallest solution.  For even b the solution is unique (2 is invertible
/// mod b-1); for odd b one exists exactly when w is even, the only
/// distance a mergeable pair can have.  Throws std::invalid_argument when
/// w == 0 or no digit solves the congruence.
std::uint32_t case3_j(Nat w, const Params& p);

/// How a pair was merged.  merge_case selects which fields are meaningful:
///   1  equal nonzero digit multisets          -> [S]
///   2  t1 == t2 (mod b-1)                     -> [+align_add, S]
///   3  otherwise                              -> [+congr_add, S, +align_add, S]
/// Case 3 first forces the images congruent mod b-1 (digit_j, congr_pow,
/// congr_add), then falls through to the case-2 alignment for the new pair.
struct MergeTrace {
    int merge_case = 0;
    Nat t1 = 0, t2 = 0;  ///< the merged pair, ordered t1 > t2

    // case 3, congruence stage
    Nat diff = 0;                  ///< w = t1 - t2
    std::uint32_t digit_j = 0;     ///< alignment digit j
    std::uint32_t congr_pow = 0;   ///< exponent r' with (j+1) b^r' > t1 and b^r' > w-1
    Nat congr_add = 0;             ///< (j+1) b^r' - t2 - 1
    Nat s1 = 0, s2 = 0;            ///< pair after the congruence stage

    // case 2 alignment (also the second stage of case 3)
    Nat quotient = 0;              ///< v = (t1 - t2) / (b-1)
    std::uint32_t align_pow = 0;   ///< exponent r with b^r > b v + t2 - v
    Nat align_add = 0;             ///< b^r + v - t2

    Nat merged_value = 0;          ///< common image of the pair under the program
};

struct MergeResult {
    StepProgram program;
    MergeTrace trace;
};

/// A short program P with P(a) == P(other): one or two rounds of "shift so
/// the two values share their nonzero digits, then apply the map".
/// Requires distinct positive values congruent mod d.
MergeResult merge_pair(Nat a, Nat other, const Params& p);

/// Folds t_set to a single value by repeatedly merging the two largest
/// distinct images.  Returns the concatenated program; requires
/// is_good_possible(t_set).
StepProgram reduce_to_singleton(const std::vector<Nat>& t_set, const Params& p);

/// Some v with S(v) = u.  For a cycle element u this is its predecessor on
/// the cycle.  Otherwise the digit multiset with the fewest digits whose
/// squares sum to u - c is found by dynamic programming, ties broken so the
/// resulting value is smallest (digits ascending, most significant first).
/// Throws std::invalid_argument when u has no preimage (including u <= c).
Nat find_preimage(Nat u, const Params& p);

/// Witness for a single value: S(t + n) = u with n = v b^r - t for a
/// preimage v of u scaled just past t.  k is always 1.
struct SingletonWitness {
    DigitString n;
    Nat k = 1;
    Nat preimage = 0;      ///< v
    std::uint32_t pow = 0; ///< r
};
SingletonWitness singleton_witness(Nat t, Nat u, const Params& p);

/// A full goodness witness: program applied to every element of domain
/// yields u.
struct GoodWitness {
    StepProgram program;
    Nat u = 0;
    std::vector<Nat> domain;  ///< sorted, duplicates removed
    bool verified = false;    ///< replay confirmed program(t) == u for all t
};

/// reduce_to_singleton + a final singleton witness onto u.  Throws when the
/// set cannot be collapsed (mixed residues mod d) or u has no preimage.
GoodWitness good_witness(std::vector<Nat> t_set, Nat u, const Params& p);

/// The classical witness shape: S^k(t + n) = u for every t in the domain.
struct Normalized {
    DigitString n;
    Nat k = 0;
};

struct NormalizeResult {
    std::optional<Normalized> value;  ///< present on success
    std::size_t blowup_step = 0;      ///< program step where the cap was exceeded
    std::string detail;               ///< diagnostic, set on failure
    bool ok() const { return value.has_value(); }
};

/// Rewrites a program witness into (n, k) form by folding from the last
/// step towards the first: an add-step folds its constant into n; crossing
/// an apply-step turns the accumulated n' into "n' ones followed by r
/// zeros", where r is the digit count of the largest value entering that
/// step.  Each crossing exponentiates the length, so the fold aborts (with
/// the offending step) once n would exceed digit_cap digits.
NormalizeResult normalize_witness(const GoodWitness& w, Nat digit_cap = 1000000);

/// Replays a normalized witness with digit-string arithmetic (exact for any
/// n length): checks S^k(t + n) == u for every t in domain.
bool check_normalized(const std::vector<Nat>& domain, const Normalized& nf, Nat u,
                      const Params& p);

/// Witness that run_length consecutive-step-d u-attracted numbers exist:
/// a good witness over {1..N} (even b) or {2,4,...,2N} (odd b).  The
/// witnessed integers are t + n for the normalized shift n.
GoodWitness sequence_witness(Nat u, Nat run_length, const Params& p);

}  // namespace aghf
