#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aghf/core.hpp"
#include "aghf/witness.hpp"

namespace aghf {

// One tabulated shift: add n, then apply the map k times.  n_text keeps the
// base-b rendering the constant block uses.
struct ShiftPair {
    Nat k = 0;
    Nat n = 0;
    std::string n_text;
};

// Verified constants for one odd parameter pair with several cycles: the
// even anchor v, the two-element sets V_j = {v, j-th smallest odd cycle
// element}, shifts carrying V_1 into each cycle, and shifts carrying each
// V_j back into V_1.
struct ProofConstants {
    Params params{};
    Nat anchor = 0;
    std::vector<std::array<Nat, 2>> pair_sets;  // pair_sets[j-1] is V_j
    std::vector<ShiftPair> cycle_shifts;        // cycle_shifts[i] targets cycle i
    std::vector<ShiftPair> pair_shifts;         // pair_shifts[j-2] maps V_j to V_1

    static const std::vector<ProofConstants>& all();
    static const ProofConstants* find(Nat c, std::uint32_t b);
    static std::string_view embedded_text();
};

struct CellCheck {
    std::string cell;
    bool pass = false;
    std::string detail;
};

struct TableReport {
    std::vector<CellCheck> cells;
    bool ok() const;
};

// Recomputes every claim the constant block makes and reports cell by cell.
TableReport verify_tables(const ProofConstants& pc);

struct CycleProgram {
    std::size_t cycle = 0;
    StepProgram program;
    bool verified = false;
};

// For each cycle of the parameter pair, a program sending every element of
// the domain into that cycle.
struct CycleGoodWitness {
    Params params{};
    std::vector<Nat> domain;
    std::vector<CycleProgram> programs;
    std::optional<std::size_t> pair_set_index;  // V_j the mixed-parity image hit
    std::optional<Nat> settle_steps;            // applications that brought the stray into a cycle
    std::optional<std::size_t> focus_cycle;
    bool verified = false;
};

CycleGoodWitness cycle_good_witness(std::vector<Nat> t_set, const Params& p);

// Witness that some run of consecutive integers of the requested length is
// entirely attracted to the cycle of u.
CycleGoodWitness consecutive_witness(Nat u, Nat run_length, const Params& p);

}  // namespace aghf
