#pragma once

// Long-run behaviour of S[c,b]: the finite set of cycles and fixed points,
// which cycle a starting value is attracted to, and scanning for runs of
// consecutive (step d) u-attracted numbers.

#include <cstdint>
#include <optional>
#include <vector>

#include "aghf/core.hpp"

namespace aghf {

/// One cycle of the map.  A fixed point is a cycle of length 1.  Elements
/// are rotated so the smallest comes first.
struct Cycle {
    std::vector<Nat> elements;

    Nat min() const { return elements.front(); }
    std::size_t length() const { return elements.size(); }

    bool operator==(const Cycle&) const = default;
};

/// Every cycle of S[c,b] plus an attraction table for the absorbing
/// interval [1, B].  Immutable once constructed, safe to share across
/// threads.
class CycleSet {
public:
    /// Enumerates all cycles by walking the trajectory of every a in
    /// [1, B].  Cycles are sorted by their smallest element.
    static CycleSet find(const Params& p);

    const Params& params() const { return params_; }
    const std::vector<Cycle>& cycles() const { return cycles_; }

    /// Index of the cycle containing value, or nullopt when value is not a
    /// cycle element.
    std::optional<std::size_t> cycle_of(Nat value) const;
    /// True when value lies on some cycle (equivalently cycle_of != nullopt).
    bool contains(Nat value) const;

    struct Attraction {
        std::size_t cycle = 0;  ///< index into cycles()
        Nat steps = 0;          ///< applications of the map until first cycle contact
    };
    /// Follows the trajectory of a (a >= 1) until it meets a cycle.  Values
    /// above B are iterated down first; values in [1, B] use the
    /// precomputed table.
    Attraction attraction_target(Nat a) const;

    /// True when the trajectory of a reaches u, i.e. a lands in the cycle
    /// through u.  Throws std::invalid_argument when u is on no cycle.
    bool is_attracted(Nat a, Nat u) const;

private:
    Params params_;
    std::vector<Cycle> cycles_;
    // Per value in [0, B]: eventual cycle and distance to first contact.
    // target_[v] doubles as the membership index (steps_[v] == 0 <=> v on a
    // cycle).
    std::vector<std::uint32_t> target_;
    std::vector<std::uint32_t> steps_;
};

inline CycleSet find_cycles(const Params& p) { return CycleSet::find(p); }
inline CycleSet::Attraction attraction_target(Nat a, const CycleSet& cs) {
    return cs.attraction_target(a);
}
inline bool is_attracted(Nat a, Nat u, const CycleSet& cs) { return cs.is_attracted(a, u); }

/// A run of length consecutive (step stride) u-attracted numbers starting
/// at start.  verified is set after the run has been re-checked by plain
/// iteration, independent of the scanner's lookup tables.
struct RunReport {
    Nat start = 0;
    std::uint32_t stride = 1;
    Nat length = 0;
    Nat u = 0;
    bool verified = false;

    bool operator==(const RunReport&) const = default;
};

struct ScanOptions {
    Nat length = 1;    ///< required run length N
    Nat limit = 1000;  ///< scan starts a in [1, limit]
    /// Step between run members.  Defaults to d = gcd(2, b-1), the only
    /// stride along which arbitrarily long runs exist; override for
    /// experiments (e.g. demonstrating that stride 1 is empty in odd bases).
    std::optional<std::uint32_t> stride;
    bool first_only = false;  ///< stop after the earliest run
    unsigned workers = 0;     ///< worker threads; 0 picks the hardware count
};

/// All starts a <= limit such that a, a+s, ..., a+(N-1)s are u-attracted
/// (run members may exceed limit).  Chunks of the start range are scanned
/// in parallel and merged in order, so the result does not depend on the
/// worker count.  Throws std::invalid_argument when u is on no cycle.
std::vector<RunReport> scan_runs(Nat u, const ScanOptions& opt, const CycleSet& cs);

}  // namespace aghf
