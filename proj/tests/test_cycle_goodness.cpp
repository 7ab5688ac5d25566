#include <algorithm>
#include <array>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "aghf/cycle_witness.hpp"
#include "aghf/dynamics.hpp"
#include "aghf/json_io.hpp"

using namespace aghf;

namespace {

const std::vector<std::array<Nat, 2>> kOddMultiCyclePairs = {
    {5, 3}, {1, 7}, {3, 7}, {5, 7}, {5, 9}, {7, 9}, {9, 9}};

}  // namespace

TEST_CASE("embedded constants cover exactly the odd multi-cycle pairs") {
    const auto& all = ProofConstants::all();
    REQUIRE(all.size() == 7);
    for (const auto& [c, b] : kOddMultiCyclePairs) {
        const ProofConstants* pc = ProofConstants::find(c, std::uint32_t(b));
        REQUIRE(pc != nullptr);
        CHECK(pc->params.c == c);
        CHECK(pc->params.b == b);
    }
    CHECK(ProofConstants::find(0, 10) == nullptr);
    CHECK(ProofConstants::find(7, 7) == nullptr);
    CHECK(!ProofConstants::embedded_text().empty());

    // These seven are precisely the odd pairs with c, b <= 9 and more than
    // one cycle; every other odd pair in that box has a single cycle.
    for (Nat c = 1; c <= 9; c += 2)
        for (std::uint32_t b = 3; b <= 9; b += 2) {
            const bool multi = CycleSet::find(Params::make(c, b)).cycles().size() > 1;
            CHECK(multi == (ProofConstants::find(c, b) != nullptr));
        }
}

TEST_CASE("constants parse to the expected decimal values") {
    const ProofConstants* pc = ProofConstants::find(5, 3);
    REQUIRE(pc != nullptr);
    CHECK(pc->anchor == 6);  // "20" in base 3
    REQUIRE(pc->pair_sets.size() == 3);
    CHECK(pc->pair_sets[0] == std::array<Nat, 2>{6, 9});
    CHECK(pc->pair_sets[1] == std::array<Nat, 2>{6, 7});
    CHECK(pc->pair_sets[2] == std::array<Nat, 2>{6, 13});
    REQUIRE(pc->cycle_shifts.size() == 3);
    CHECK(pc->cycle_shifts[2].k == 2);
    CHECK(pc->cycle_shifts[2].n == 3339);  // "11120200" in base 3
    CHECK(pc->cycle_shifts[2].n_text == "11120200");
    REQUIRE(pc->pair_shifts.size() == 2);
    CHECK(pc->pair_shifts[1].k == 2);
    CHECK(pc->pair_shifts[1].n == 149);  // "12112" in base 3

    const ProofConstants* pc79 = ProofConstants::find(7, 9);
    REQUIRE(pc79 != nullptr);
    CHECK(pc79->anchor == 8);
    CHECK(pc79->pair_sets[0] == std::array<Nat, 2>{8, 23});  // "25" in base 9
    CHECK(pc79->cycle_shifts[0].k == 3);
    CHECK(pc79->cycle_shifts[0].n == 2);
}

TEST_CASE("anchors are even cycle elements of the first cycle") {
    const std::vector<Nat> expected_anchors = {6, 10, 32, 6, 34, 8, 14};
    for (std::size_t i = 0; i < kOddMultiCyclePairs.size(); ++i) {
        const auto& [c, b] = kOddMultiCyclePairs[i];
        const ProofConstants* pc = ProofConstants::find(c, std::uint32_t(b));
        REQUIRE(pc != nullptr);
        CHECK(pc->anchor == expected_anchors[i]);
        CHECK(pc->anchor % 2 == 0);
        const CycleSet cs = CycleSet::find(pc->params);
        const auto& first = cs.cycles()[0].elements;
        CHECK(std::find(first.begin(), first.end(), pc->anchor) != first.end());
    }
}

TEST_CASE("every embedded constant block verifies") {
    for (const ProofConstants& pc : ProofConstants::all()) {
        const TableReport rep = verify_tables(pc);
        CHECK(rep.ok());
        for (const CellCheck& cc : rep.cells) {
            INFO(cc.cell, ": ", cc.detail);
            CHECK(cc.pass);
        }
        // 3 structural cells + one per pair set, cycle shift and link shift
        CHECK(rep.cells.size() ==
              3 + pc.pair_sets.size() + pc.cycle_shifts.size() + pc.pair_shifts.size());
    }
}

TEST_CASE("verification notices corrupted constants") {
    const ProofConstants* pc = ProofConstants::find(5, 3);
    REQUIRE(pc != nullptr);

    ProofConstants bad = *pc;
    bad.cycle_shifts[2].n += 1;
    CHECK_FALSE(verify_tables(bad).ok());

    // (Corrupting a link-shift k alone would go unnoticed here: V1 = {6,9}
    // is the whole first cycle, so it is closed under the map.)
    ProofConstants bad2 = *pc;
    bad2.pair_shifts[0].n += 1;
    CHECK_FALSE(verify_tables(bad2).ok());

    ProofConstants bad3 = *pc;
    bad3.anchor = 7;  // odd, wrong cycle
    CHECK_FALSE(verify_tables(bad3).ok());

    ProofConstants bad4 = *pc;
    bad4.pair_sets[1][1] = 9;  // duplicates pair set 1
    CHECK_FALSE(verify_tables(bad4).ok());
}

TEST_CASE("mixed-parity pipeline on the smallest odd pair") {
    const Params p = Params::make(5, 3);
    const CycleGoodWitness w = cycle_good_witness({1, 2}, p);
    CHECK(w.verified);
    CHECK(w.domain == std::vector<Nat>{1, 2});
    CHECK(w.pair_set_index == 2);  // lands on V3 = {6, 13}
    CHECK(w.settle_steps == 0);
    REQUIRE(w.programs.size() == 3);

    // Stage constants of the collapse: evens onto the anchor with +7, the
    // shifted odds onto the anchor with +14.
    const auto& steps = w.programs[0].program.steps();
    REQUIRE(steps.size() >= 4);
    CHECK(steps[0].op == Step::Op::add_const);
    CHECK(steps[0].amount == 7);
    CHECK(steps[1].op == Step::Op::apply_s);
    CHECK(steps[2].op == Step::Op::add_const);
    CHECK(steps[2].amount == 14);

    const CycleSet cs = CycleSet::find(p);
    for (const CycleProgram& cp : w.programs) {
        CHECK(cp.verified);
        for (Nat t : w.domain)
            CHECK(cs.cycle_of(cp.program.apply(t)) == cp.cycle);
    }
}

TEST_CASE("parity-homogeneous sets bypass the pair-set machinery") {
    const Params p = Params::make(5, 3);
    const CycleGoodWitness w = cycle_good_witness({2, 4}, p);
    CHECK(w.verified);
    CHECK_FALSE(w.pair_set_index.has_value());
    REQUIRE(w.programs.size() == 3);
    const CycleSet cs = CycleSet::find(p);
    for (const CycleProgram& cp : w.programs)
        for (Nat t : w.domain) CHECK(cs.cycle_of(cp.program.apply(t)) == cp.cycle);

    const CycleGoodWitness w10 = cycle_good_witness({1, 2, 3}, Params::make(0, 10));
    CHECK(w10.verified);
    CHECK(w10.programs.size() == 2);
}

TEST_CASE("single-cycle parameters need no collapse at all") {
    const Params p = Params::make(1, 3);
    const CycleSet cs = CycleSet::find(p);
    REQUIRE(cs.cycles().size() == 1);
    const CycleGoodWitness w = cycle_good_witness({1, 2, 3, 4}, p);
    CHECK(w.verified);
    REQUIRE(w.programs.size() == 1);
    CHECK(w.settle_steps.has_value());
    // the program is pure iteration: no add steps
    for (const Step& st : w.programs[0].program.steps())
        CHECK(st.op == Step::Op::apply_s);
}

TEST_CASE("odd pairs outside the constant table are rejected") {
    // c even, b odd: the map preserves parity, so a mixed set cannot be
    // collapsed toward any single cycle; with several cycles present there
    // are also no tabulated constants.
    const Params p = Params::make(0, 9);
    REQUIRE(CycleSet::find(p).cycles().size() > 1);
    CHECK_THROWS_AS(cycle_good_witness({1, 2}, p), std::invalid_argument);
}

TEST_CASE("cycle witnesses validate their input") {
    CHECK_THROWS_AS(cycle_good_witness({}, Params::make(0, 10)), std::invalid_argument);
    CHECK_THROWS_AS(cycle_good_witness({0, 1}, Params::make(0, 10)), std::invalid_argument);
    CHECK_THROWS_AS(consecutive_witness(2, 3, Params::make(0, 10)), std::invalid_argument);
    CHECK_THROWS_AS(consecutive_witness(1, 0, Params::make(0, 10)), std::invalid_argument);
}

TEST_CASE("consecutive-run witnesses focus on the requested cycle") {
    const Params p = Params::make(3, 10);
    const CycleSet cs = CycleSet::find(p);
    const CycleGoodWitness w = consecutive_witness(7, 4, p);
    CHECK(w.verified);
    CHECK(w.domain == std::vector<Nat>{1, 2, 3, 4});
    REQUIRE(w.focus_cycle.has_value());
    CHECK(*w.focus_cycle == cs.cycle_of(7));
    const CycleProgram& focus = w.programs[*w.focus_cycle];
    for (Nat t : w.domain) CHECK(cs.is_attracted(focus.program.apply(t), 7));
}

TEST_CASE("consecutive-run witnesses across the whole constant table") {
    for (const auto& [c, b] : kOddMultiCyclePairs) {
        const Params p = Params::make(c, std::uint32_t(b));
        const CycleSet cs = CycleSet::find(p);
        const CycleGoodWitness w = consecutive_witness(cs.cycles()[0].min(), 6, p);
        CHECK(w.verified);
        CHECK(w.pair_set_index.has_value());  // {1..6} is mixed parity
        CHECK(w.programs.size() == cs.cycles().size());
    }
}

TEST_CASE("cycle witnesses serialize") {
    const CycleGoodWitness w = cycle_good_witness({1, 2}, Params::make(5, 3));
    const Json j = to_json(w);
    CHECK(j.at("verified").get<bool>());
    CHECK(j.at("pair_set").get<std::size_t>() == 3);   // 1-based in the output
    CHECK(j.at("settle_steps").get<Nat>() == 0);
    CHECK(j.at("programs").size() == 3);
    CHECK(j.at("focus_cycle").is_null());
    const StepProgram back =
        step_program_from_json(j.at("programs").at(0).at("program"));
    CHECK(back.apply(1) == w.programs[0].program.apply(1));
}
