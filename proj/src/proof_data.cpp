#include <sstream>
#include <stdexcept>
#include <string>

#include "aghf/cycle_witness.hpp"

namespace aghf {

namespace {

// Shift constants for the seven odd parameter pairs with more than one
// cycle and both parameters at most 9.  All numerals are written base-b;
// the set and cycle indices and the application counts are decimal.
constexpr std::string_view kEmbedded =
    R"(pair [5,3]
v 20
V 1 20 100
V 2 20 21
V 3 20 111
cycle-shift 1 0 0
cycle-shift 2 0 1
cycle-shift 3 2 11120200
link-shift 2 2 1202
link-shift 3 2 12112

pair [1,7]
v 13
V 1 13 14
V 2 13 30
V 3 13 50
cycle-shift 1 0 0
cycle-shift 2 1 1111111
link-shift 2 1 0
link-shift 3 5 14

pair [3,7]
v 44
V 1 44 25
V 2 44 50
V 3 44 61
V 4 44 104
cycle-shift 1 0 0
cycle-shift 2 0 30
link-shift 2 3 0
link-shift 3 5 131
link-shift 4 3 3

pair [5,7]
v 6
V 1 6 10
V 2 6 21
V 3 6 25
V 4 6 34
V 5 6 56
V 6 6 111
cycle-shift 1 0 0
cycle-shift 2 1 3
cycle-shift 3 1 121303
link-shift 2 9 1
link-shift 3 5 16
link-shift 4 6 114
link-shift 5 7 0
link-shift 6 6 114

pair [5,9]
v 37
V 1 37 25
V 2 37 34
V 3 37 45
V 4 37 61
V 5 37 63
V 6 37 70
V 7 37 81
V 8 37 124
V 9 37 157
cycle-shift 1 0 0
cycle-shift 2 2 81
cycle-shift 3 5 11
cycle-shift 4 1 156155
link-shift 2 9 212
link-shift 3 4 7
link-shift 4 6 22
link-shift 5 5 147
link-shift 6 7 0
link-shift 7 1 212
link-shift 8 6 147
link-shift 9 7 32

pair [7,9]
v 8
V 1 8 25
V 2 8 36
V 3 8 45
V 4 8 78
V 5 8 100
V 6 8 106
cycle-shift 1 3 2
cycle-shift 2 6 131
cycle-shift 3 4 135
cycle-shift 4 3 13
link-shift 2 9 3
link-shift 3 6 150
link-shift 4 4 16
link-shift 5 11 31
link-shift 6 9 31

pair [9,9]
v 15
V 1 15 12
V 2 15 32
V 3 15 38
cycle-shift 1 0 0
cycle-shift 2 3 218
link-shift 2 7 6
link-shift 3 3 0
)";

Nat numeral_value(const std::string& text, std::uint32_t b) {
    return DigitString::parse(text, b).value();
}

[[noreturn]] void bad_line(const std::string& line) {
    throw std::logic_error("malformed embedded constants line: " + line);
}

std::vector<ProofConstants> parse_all() {
    std::vector<ProofConstants> out;
    std::istringstream in{std::string(kEmbedded)};
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;  // blank separator
        if (tag == "pair") {
            std::string head;  // "[c,b]" with decimal c and b
            if (!(ls >> head) || head.size() < 5 || head.front() != '[' || head.back() != ']')
                bad_line(line);
            const auto comma = head.find(',');
            if (comma == std::string::npos) bad_line(line);
            const Nat c = std::stoull(head.substr(1, comma - 1));
            const auto b = std::uint32_t(std::stoul(head.substr(comma + 1, head.size() - comma - 2)));
            ProofConstants pc;
            pc.params = Params::make(c, b);
            out.push_back(std::move(pc));
            continue;
        }
        if (out.empty()) bad_line(line);
        ProofConstants& pc = out.back();
        const std::uint32_t b = pc.params.b;
        if (tag == "v") {
            std::string text;
            if (!(ls >> text)) bad_line(line);
            pc.anchor = numeral_value(text, b);
        } else if (tag == "V") {
            std::size_t j = 0;
            std::string first, second;
            if (!(ls >> j >> first >> second) || j != pc.pair_sets.size() + 1) bad_line(line);
            pc.pair_sets.push_back({numeral_value(first, b), numeral_value(second, b)});
        } else if (tag == "cycle-shift") {
            std::size_t i = 0;
            Nat k = 0;
            std::string text;
            if (!(ls >> i >> k >> text) || i != pc.cycle_shifts.size() + 1) bad_line(line);
            pc.cycle_shifts.push_back({k, numeral_value(text, b), text});
        } else if (tag == "link-shift") {
            std::size_t j = 0;
            Nat k = 0;
            std::string text;
            if (!(ls >> j >> k >> text) || j != pc.pair_shifts.size() + 2) bad_line(line);
            pc.pair_shifts.push_back({k, numeral_value(text, b), text});
        } else {
            bad_line(line);
        }
    }
    return out;
}

}  // namespace

const std::vector<ProofConstants>& ProofConstants::all() {
    static const std::vector<ProofConstants> data = parse_all();
    return data;
}

const ProofConstants* ProofConstants::find(Nat c, std::uint32_t b) {
    for (const ProofConstants& pc : all())
        if (pc.params.c == c && pc.params.b == b) return &pc;
    return nullptr;
}

std::string_view ProofConstants::embedded_text() { return kEmbedded; }

}  // namespace aghf
