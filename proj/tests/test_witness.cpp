#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

#include "aghf/dynamics.hpp"
#include "aghf/json_io.hpp"
#include "aghf/witness.hpp"

using namespace aghf;

TEST_CASE("step programs apply and trace") {
    const Params p = Params::make(0, 10);
    StepProgram prog(p);
    prog.push_add(27);
    prog.push_apply();
    CHECK(prog.apply(5) == 13);  // 32 -> 9 + 4
    CHECK(prog.trace(5) == std::vector<Nat>{5, 32, 13});
    CHECK(prog.steps().size() == 2);
    CHECK_FALSE(prog.empty());

    StepProgram other(Params::make(1, 10));
    other.push_apply();
    CHECK_THROWS_AS(prog.append(other), std::logic_error);

    StepProgram same(p);
    same.push_apply();
    prog.append(same);
    CHECK(prog.apply(5) == s_apply(Nat(13), p));
}

TEST_CASE("goodness precondition is the mod-d congruence") {
    const Params even = Params::make(0, 10);
    const Params odd = Params::make(5, 3);
    CHECK(is_good_possible({1, 2, 3}, even));
    CHECK(is_good_possible({1, 3, 5}, odd));
    CHECK(is_good_possible({2, 4}, odd));
    CHECK_FALSE(is_good_possible({1, 2}, odd));
    CHECK_THROWS_AS(is_good_possible({}, even), std::invalid_argument);
    CHECK_THROWS_AS(is_good_possible({0, 1}, even), std::invalid_argument);
}

TEST_CASE("alignment digit solves the congruence") {
    // j is the smallest value in [0, b-2] with
    //   2j + 1 + (digit-square sum of w-1) == 0  (mod b-1).
    CHECK(case3_j(3, Params::make(0, 10)) == 2);
    CHECK(case3_j(2, Params::make(5, 3)) == 0);
    CHECK(case3_j(1, Params::make(0, 10)) == 4);  // 2j == b-2
    for (Nat c = 0; c <= 9; ++c)
        for (std::uint32_t b = 3; b <= 10; ++b) {
            const Params p = Params::make(c, b);
            for (Nat w = 1; w <= 60; ++w) {
                const Nat sums = s_apply(w - 1, p) - p.c;  // plain digit-square sum
                std::uint32_t first = b;  // sentinel
                for (std::uint32_t cand = 0; cand + 1 <= b - 1; ++cand)
                    if ((2 * Nat(cand) + 1 + sums) % (b - 1) == 0) {
                        first = cand;
                        break;
                    }
                if (first == b) {
                    // Unsolvable residue: only possible for odd b with odd w,
                    // a difference a genuine merge can never produce (parity).
                    CHECK(b % 2 == 1);
                    CHECK(w % 2 == 1);
                    CHECK_THROWS_AS(case3_j(w, p), std::invalid_argument);
                    continue;
                }
                const std::uint32_t j = case3_j(w, p);
                CHECK(j <= b - 2);
                CHECK(j == first);
            }
        }
    CHECK_THROWS_AS(case3_j(0, Params::make(0, 10)), std::invalid_argument);
}

TEST_CASE("merging equal digit multisets") {
    const MergeResult mr = merge_pair(16, 61, Params::make(0, 10));
    CHECK(mr.trace.merge_case == 1);
    CHECK(mr.program.steps().size() == 1);
    CHECK(mr.trace.merged_value == 37);
    CHECK(mr.program.apply(16) == 37);
    CHECK(mr.program.apply(61) == 37);
}

TEST_CASE("merging values congruent mod b-1") {
    const MergeResult mr = merge_pair(11, 2, Params::make(0, 10));
    CHECK(mr.trace.merge_case == 2);
    CHECK(mr.trace.quotient == 1);
    CHECK(mr.trace.align_pow == 2);
    CHECK(mr.trace.align_add == 99);  // 11+99 = 110 and 2+99 = 101 share digits
    CHECK(mr.program.steps().size() == 2);
    CHECK(mr.trace.merged_value == 2);
    CHECK(mr.program.apply(11) == mr.program.apply(2));
}

TEST_CASE("merging incongruent values via the alignment digit") {
    const MergeResult mr = merge_pair(5, 2, Params::make(0, 10));
    CHECK(mr.trace.merge_case == 3);
    CHECK(mr.trace.diff == 3);
    CHECK(mr.trace.digit_j == 2);
    CHECK(mr.trace.congr_pow == 1);
    CHECK(mr.trace.congr_add == 27);  // (j+1) * 10 - 2 - 1
    CHECK(mr.trace.s1 == 13);         // S(32)
    CHECK(mr.trace.s2 == 85);         // S(29)
    CHECK(mr.trace.align_add == 95);
    CHECK(mr.trace.merged_value == 65);
    CHECK(mr.program.steps().size() == 4);
    CHECK(mr.program.apply(5) == 65);
    CHECK(mr.program.apply(2) == 65);
}

TEST_CASE("third merge case keeps digit blocks apart") {
    // With t1 = 25, t2 = 6 the difference w = 19 spans two digits, so the
    // first power clearing (j+1) b^r > t1 is not enough: b^r must also
    // exceed w - 1 or the low block collides with the alignment digit.
    const MergeResult mr = merge_pair(25, 6, Params::make(0, 10));
    CHECK(mr.trace.merge_case == 3);
    CHECK(mr.trace.congr_pow == 2);
    CHECK(mr.program.apply(25) == mr.program.apply(6));

    // A pair where the two-stage route degenerates: the images after the
    // congruence stage may coincide, and the alignment stage must accept a
    // zero quotient.
    for (Nat t2 = 1; t2 <= 40; ++t2)
        for (Nat w = 1; w <= 40; ++w) {
            const Params p = Params::make(3, 10);
            const MergeResult r = merge_pair(t2 + w, t2, p);
            CHECK(r.program.apply(t2 + w) == r.program.apply(t2));
        }
}

TEST_CASE("merge soundness on random congruent pairs") {
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 10000; ++i) {
        const std::uint32_t b = 2 + std::uint32_t(rng() % 9);
        const Params p = Params::make(rng() % 10, b);
        Nat t1 = 1 + rng() % 5000;
        Nat t2 = 1 + rng() % 5000;
        if (p.d == 2 && ((t1 ^ t2) & 1)) ++t2;
        if (t1 == t2) continue;
        const MergeResult mr = merge_pair(t1, t2, p);
        CHECK(mr.program.apply(t1) == mr.trace.merged_value);
        CHECK(mr.program.apply(t2) == mr.trace.merged_value);
        const std::size_t steps = mr.program.steps().size();
        switch (mr.trace.merge_case) {
            case 1: CHECK(steps == 1); break;
            case 2: CHECK(steps == 2); break;
            case 3: CHECK(steps == 4); break;
            default: FAIL("unknown merge case");
        }
    }
}

TEST_CASE("merging consecutive values in even bases") {
    for (Nat c = 0; c <= 9; ++c)
        for (std::uint32_t b : {4u, 6u, 8u, 10u}) {
            const Params p = Params::make(c, b);
            for (Nat t = 1; t <= 60; ++t) {
                const MergeResult mr = merge_pair(t + 1, t, p);
                CHECK(mr.program.apply(t) == mr.program.apply(t + 1));
            }
        }
}

TEST_CASE("merge input validation") {
    const Params p = Params::make(0, 10);
    CHECK_THROWS_AS(merge_pair(5, 5, p), std::invalid_argument);
    CHECK_THROWS_AS(merge_pair(5, 0, p), std::invalid_argument);
    CHECK_THROWS_AS(merge_pair(1, 2, Params::make(5, 3)), std::invalid_argument);
}

TEST_CASE("reduction collapses a whole set") {
    const Params p = Params::make(0, 10);
    const StepProgram prog = reduce_to_singleton({1, 2, 3, 4, 5}, p);
    const Nat image = prog.apply(1);
    for (Nat t = 2; t <= 5; ++t) CHECK(prog.apply(t) == image);
    CHECK_THROWS_AS(reduce_to_singleton({1, 2}, Params::make(0, 9)), std::invalid_argument);
}

TEST_CASE("preimages of cycle elements follow the cycle") {
    CHECK(find_preimage(6, Params::make(5, 3)) == 9);
    CHECK(find_preimage(9, Params::make(5, 3)) == 6);
    CHECK(find_preimage(1, Params::make(0, 10)) == 1);   // fixed point
    CHECK(find_preimage(4, Params::make(0, 10)) == 20);  // cycle predecessor
}

TEST_CASE("preimages off the cycles are the smallest values") {
    const Params p = Params::make(0, 10);
    CHECK(find_preimage(23, p) == 1233);  // digits {1,2,3,3}, fewest possible
    CHECK(find_preimage(120, p) == 2468);
    CHECK_THROWS_AS(find_preimage(3, Params::make(3, 10)), std::invalid_argument);  // u <= c

    for (const Params& q : {Params::make(0, 10), Params::make(3, 10), Params::make(0, 7)}) {
        const CycleSet cs = CycleSet::find(q);
        for (Nat u = q.c + 1; u <= q.c + 120; ++u) {
            if (cs.contains(u)) continue;
            const Nat got = find_preimage(u, q);
            CHECK(s_apply(got, q) == u);
            Nat brute = 0;
            for (Nat a = 1; a <= 400000; ++a)
                if (s_apply(a, q) == u) {
                    brute = a;
                    break;
                }
            REQUIRE(brute != 0);
            CHECK(got == brute);
        }
    }
}

TEST_CASE("single-value witnesses") {
    const SingletonWitness sw = singleton_witness(65, 1, Params::make(0, 10));
    CHECK(sw.preimage == 1);
    CHECK(sw.pow == 2);
    CHECK(sw.n.value() == 35);
    CHECK(sw.k == 1);

    const SingletonWitness sw53 = singleton_witness(2, 6, Params::make(5, 3));
    CHECK(sw53.preimage == 9);
    CHECK(sw53.pow == 0);
    CHECK(sw53.n.value() == 7);

    CHECK_THROWS_AS(singleton_witness(0, 1, Params::make(0, 10)), std::invalid_argument);
}

TEST_CASE("good witness for the digit-twin pair") {
    const GoodWitness w = good_witness({16, 61}, 1, Params::make(0, 10));
    CHECK(w.verified);
    CHECK(w.domain == std::vector<Nat>{16, 61});
    REQUIRE(w.program.steps().size() == 3);
    CHECK(w.program.steps()[0].op == Step::Op::apply_s);
    CHECK(w.program.steps()[1].op == Step::Op::add_const);
    CHECK(w.program.steps()[1].amount == 63);
    CHECK(w.program.steps()[2].op == Step::Op::apply_s);
    CHECK(w.program.apply(16) == 1);
    CHECK(w.program.apply(61) == 1);
}

TEST_CASE("good witnesses replay on random sets") {
    std::mt19937_64 rng(777);
    for (int i = 0; i < 1000; ++i) {
        const std::uint32_t b = 2 + std::uint32_t(rng() % 9);
        const Params p = Params::make(rng() % 10, b);
        const CycleSet cs = CycleSet::find(p);
        std::vector<Nat> t_set;
        const std::size_t n = 1 + rng() % 5;
        const Nat parity = rng() % 2;
        while (t_set.size() < n) {
            Nat t = 1 + rng() % 3000;
            if (p.d == 2 && (t & 1) != parity) ++t;
            t_set.push_back(t);
        }
        const Cycle& cyc = cs.cycles()[rng() % cs.cycles().size()];
        const Nat u = cyc.elements[rng() % cyc.length()];
        const GoodWitness w = good_witness(t_set, u, p);
        CHECK(w.verified);
        for (Nat t : w.domain) CHECK(w.program.apply(t) == u);
    }
}

TEST_CASE("parity makes mixed sets impossible in odd bases") {
    CHECK_THROWS_AS(good_witness({1, 2}, 6, Params::make(5, 3)), std::invalid_argument);
    CHECK_THROWS_AS(sequence_witness(6, 0, Params::make(5, 3)), std::invalid_argument);
}

TEST_CASE("normalization of a witness with one interior crossing") {
    const Params p = Params::make(0, 10);
    const GoodWitness w = good_witness({16, 61}, 1, p);
    const NormalizeResult nf = normalize_witness(w);
    REQUIRE(nf.ok());
    CHECK(nf.value->k == 2);
    CHECK(nf.value->n.digit_count() == 65);
    CHECK(nf.value->n.str() == std::string(63, '1') + "00");
    CHECK(check_normalized(w.domain, *nf.value, 1, p));

    // The digit budget is sharp: 63 ones plus 2 zeros need 65 digits.
    CHECK(normalize_witness(w, 65).ok());
    const NormalizeResult tight = normalize_witness(w, 64);
    CHECK_FALSE(tight.ok());
    CHECK(tight.blowup_step == 0);
    CHECK(tight.detail.find("exceeds cap") != std::string::npos);
}

TEST_CASE("normalization of a plain singleton witness") {
    const Params p = Params::make(0, 10);
    const GoodWitness w = good_witness({65}, 1, p);
    const NormalizeResult nf = normalize_witness(w);
    REQUIRE(nf.ok());
    CHECK(nf.value->k == 1);
    CHECK(nf.value->n.value() == 35);
    CHECK(check_normalized({65}, *nf.value, 1, p));
}

TEST_CASE("normalization reports doubly exponential blow-up") {
    const Params p = Params::make(0, 10);
    const GoodWitness w = good_witness({5, 2}, 1, p);
    CHECK(w.verified);
    const NormalizeResult nf = normalize_witness(w);  // default million-digit cap
    CHECK_FALSE(nf.ok());
    CHECK(nf.blowup_step == 1);  // the first application in [Add, S, Add, S, Add, S]
    CHECK(nf.detail.find("exceeds cap") != std::string::npos);
}

TEST_CASE("a corrupted normalized shift fails the check") {
    const Params p = Params::make(0, 10);
    // Target an element of the 8-cycle: a fixed-point target would forgive
    // a corrupted k, because iterating once more stays put.
    const GoodWitness w = good_witness({16, 61}, 4, p);
    const NormalizeResult nf = normalize_witness(w);
    REQUIRE(nf.ok());
    CHECK(check_normalized(w.domain, *nf.value, 4, p));
    Normalized bad = *nf.value;
    bad.k += 1;
    CHECK_FALSE(check_normalized(w.domain, bad, 4, p));
    Normalized bad2 = *nf.value;
    bad2.n.add(1);
    CHECK_FALSE(check_normalized(w.domain, bad2, 4, p));
}

TEST_CASE("run witnesses cover initial segments") {
    const GoodWitness w10 = sequence_witness(1, 5, Params::make(0, 10));
    CHECK(w10.verified);
    CHECK(w10.domain == std::vector<Nat>{1, 2, 3, 4, 5});

    const GoodWitness w3 = sequence_witness(6, 3, Params::make(5, 3));
    CHECK(w3.verified);
    CHECK(w3.domain == std::vector<Nat>{2, 4, 6});  // step-2 runs in odd bases
}

TEST_CASE("step programs survive the JSON round trip") {
    const Params p = Params::make(5, 3);
    const GoodWitness w = good_witness({2, 4}, 6, p);
    const Json j = to_json(w.program);
    const StepProgram back = step_program_from_json(j);
    CHECK(back.params() == p);
    CHECK(back.steps().size() == w.program.steps().size());
    for (Nat t : {Nat(2), Nat(4), Nat(8)}) CHECK(back.apply(t) == w.program.apply(t));
}

TEST_CASE("witnesses survive the JSON round trip and are re-verified") {
    const Params p = Params::make(0, 10);
    const GoodWitness w = good_witness({16, 61, 8}, 1, p);
    REQUIRE(w.verified);
    const Json j = to_json(w);
    const GoodWitness back = good_witness_from_json(j);
    CHECK(back.verified);
    CHECK(back.domain == w.domain);
    CHECK(back.u == w.u);

    Json tampered = j;
    tampered["u"] = 4;  // same parameters, wrong target
    CHECK_FALSE(good_witness_from_json(tampered).verified);
}
