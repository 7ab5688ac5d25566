#include "aghf/tables.hpp"

#include <sstream>

namespace aghf::tables {

namespace {

// Cycles of S[c,10] for c = 0..9.  Fixed points are single-element lines.
const char kBase10[] =
    "[0,10] 1\n"
    "[0,10] 4 -> 16 -> 37 -> 58 -> 89 -> 145 -> 42 -> 20\n"
    "[1,10] 6 -> 37 -> 59 -> 107 -> 51 -> 27 -> 54 -> 42 -> 21\n"
    "[1,10] 35\n"
    "[1,10] 75\n"
    "[2,10] 28 -> 70 -> 51\n"
    "[2,10] 29 -> 87 -> 115\n"
    "[3,10] 7 -> 52 -> 32 -> 16 -> 40 -> 19 -> 85 -> 92 -> 88 -> 131 -> 14 -> 20\n"
    "[3,10] 13\n"
    "[3,10] 93\n"
    "[4,10] 6 -> 40 -> 20 -> 8 -> 68 -> 104 -> 21 -> 9 -> 85 -> 93 -> 94 -> 101\n"
    "[4,10] 24\n"
    "[4,10] 45\n"
    "[4,10] 65\n"
    "[4,10] 84\n"
    "[5,10] 15 -> 31\n"
    "[5,10] 55\n"
    "[6,10] 16 -> 43 -> 31\n"
    "[6,10] 19 -> 88 -> 134 -> 32\n"
    "[7,10] 9 -> 88 -> 135 -> 42 -> 27 -> 60 -> 43 -> 32 -> 20 -> 11\n"
    "[7,10] 12\n"
    "[7,10] 36 -> 52\n"
    "[7,10] 66 -> 79 -> 137\n"
    "[7,10] 92\n"
    "[8,10] 26 -> 48 -> 88 -> 136 -> 54 -> 49 -> 105 -> 34 -> 33\n"
    "[9,10] 10\n"
    "[9,10] 11\n"
    "[9,10] 34\n"
    "[9,10] 46 -> 61\n"
    "[9,10] 74\n"
    "[9,10] 90\n"
    "[9,10] 91\n";

// Cycles of S[c,b] for odd b in 3..9 and odd c in 1..9, elements written in
// base b.  There are no fixed points: c and b odd forces even cycle lengths.
const char kOddBase[] =
    "[1,3] 12 -> 20\n"
    "[3,3] 22 -> 102\n"
    "[5,3] 20 -> 100\n"
    "[5,3] 21 -> 101\n"
    "[5,3] 22 -> 111\n"
    "[7,3] 22 -> 120 -> 110 -> 100\n"
    "[9,3] 112 -> 120\n"
    "[1,5] 2 -> 10\n"
    "[3,5] 23 -> 31\n"
    "[5,5] 11 -> 12 -> 20 -> 14 -> 42 -> 100\n"
    "[7,5] 23 -> 40 -> 43 -> 112\n"
    "[9,5] 21 -> 24 -> 104 -> 101\n"
    "[1,7] 13 -> 14 -> 24 -> 30\n"
    "[1,7] 35 -> 50\n"
    "[3,7] 25 -> 44 -> 50 -> 40\n"
    "[3,7] 26 -> 61 -> 55 -> 104\n"
    "[5,7] 6 -> 56 -> 123 -> 25 -> 46 -> 111 -> 11 -> 10\n"
    "[5,7] 13 -> 21\n"
    "[5,7] 34 -> 42\n"
    "[7,7] 26 -> 65 -> 125 -> 52 -> 51 -> 45 -> 66 -> 142 -> 40 -> 32\n"
    "[9,7] 46 -> 115 -> 51 -> 50\n"
    "[1,9] 3 -> 11\n"
    "[3,9] 4 -> 21 -> 8 -> 74 -> 75 -> 85 -> 112 -> 10\n"
    "[5,9] 25 -> 37 -> 70 -> 60 -> 45 -> 51 -> 34 -> 33\n"
    "[5,9] 28 -> 81 -> 77 -> 124\n"
    "[5,9] 46 -> 63 -> 55 -> 61\n"
    "[5,9] 88 -> 157\n"
    "[7,9] 8 -> 78 -> 143 -> 36 -> 57 -> 100\n"
    "[7,9] 25 -> 40\n"
    "[7,9] 45 -> 53\n"
    "[7,9] 48 -> 106\n"
    "[9,9] 12 -> 15 -> 38 -> 101\n"
    "[9,9] 24 -> 32\n";

Diff diff_lines(const std::string& golden, const std::string& computed) {
    if (golden == computed) return Diff{true, ""};
    std::istringstream ga(golden), cb(computed);
    std::string gl, cl;
    std::size_t line = 0;
    while (true) {
        ++line;
        const bool gok = bool(std::getline(ga, gl));
        const bool cok = bool(std::getline(cb, cl));
        if (!gok && !cok) break;
        if (!gok || !cok || gl != cl) {
            std::ostringstream os;
            os << "line " << line << ": golden \"" << (gok ? gl : "<eof>")
               << "\" vs computed \"" << (cok ? cl : "<eof>") << "\"";
            return Diff{false, os.str()};
        }
    }
    return Diff{false, "texts differ only in trailing bytes"};
}

}  // namespace

const std::string& base10_golden() {
    static const std::string text = kBase10;
    return text;
}

const std::string& odd_base_golden() {
    static const std::string text = kOddBase;
    return text;
}

std::string render_cycles(const CycleSet& cs) {
    const Params& p = cs.params();
    std::ostringstream os;
    for (const Cycle& cyc : cs.cycles()) {
        os << '[' << p.c << ',' << p.b << "] ";
        for (std::size_t i = 0; i < cyc.elements.size(); ++i) {
            if (i) os << " -> ";
            os << DigitString::from_value(cyc.elements[i], p.b).str();
        }
        os << '\n';
    }
    return os.str();
}

std::string compute_base10() {
    std::string out;
    for (Nat c = 0; c <= 9; ++c)
        out += render_cycles(CycleSet::find(Params::make(c, 10)));
    return out;
}

std::string compute_odd_base() {
    std::string out;
    for (std::uint32_t b = 3; b <= 9; b += 2)
        for (Nat c = 1; c <= 9; c += 2)
            out += render_cycles(CycleSet::find(Params::make(c, b)));
    return out;
}

Diff check_base10() { return diff_lines(base10_golden(), compute_base10()); }

Diff check_odd_base() { return diff_lines(odd_base_golden(), compute_odd_base()); }

}  // namespace aghf::tables
