#pragma once

// Reference cycle tables.  Two families are shipped as golden text and can
// be diffed byte-for-byte against a fresh enumeration:
//
//   * base 10, c = 0..9            (decimal rendering)
//   * odd bases 3..9, odd c <= 9   (base-b rendering)
//
// Format: one line per cycle, "[c,b] e1 -> e2 -> ...", elements written as
// canonical digit strings in base b, cycles sorted by smallest element and
// rotated so that element comes first.

#include <string>

#include "aghf/dynamics.hpp"

namespace aghf::tables {

/// Golden text for the base-10 family (c = 0..9).
const std::string& base10_golden();
/// Golden text for the odd-base family (b in {3,5,7,9}, odd c in 1..9).
const std::string& odd_base_golden();

/// Renders a cycle set in the table line format described above.
std::string render_cycles(const CycleSet& cs);

/// Fresh enumeration of either family, rendered in table format.
std::string compute_base10();
std::string compute_odd_base();

struct Diff {
    bool ok = false;
    std::string detail;  // empty when ok, else the first mismatching line pair
};

/// Byte comparison of golden vs freshly computed text.
Diff check_base10();
Diff check_odd_base();

}  // namespace aghf::tables
