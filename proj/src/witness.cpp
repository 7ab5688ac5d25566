#include "aghf/witness.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "aghf/dynamics.hpp"

namespace aghf {

namespace {

using U128 = unsigned __int128;

constexpr Nat kNatMax = std::numeric_limits<Nat>::max();

Nat checked_add(Nat a, Nat b) {
    if (kNatMax - a < b) throw std::overflow_error("value exceeds 64 bits");
    return a + b;
}

struct Pow {
    std::uint32_t r = 0;
    Nat value = 0;  // b^r
};

// Smallest r >= 1 with coeff * b^r > threshold and b^r > floor2.
Pow pow_exceeding(Nat coeff, U128 threshold, U128 floor2, std::uint32_t b) {
    U128 pw = 1;
    std::uint32_t r = 0;
    do {
        pw *= b;
        ++r;
        if (pw > kNatMax) throw std::overflow_error("alignment power exceeds 64 bits");
    } while (U128(coeff) * pw <= threshold || pw <= floor2);
    return Pow{r, Nat(pw)};
}

}  // namespace

// ---------------------------------------------------------------------------
// StepProgram

void StepProgram::append(const StepProgram& other) {
    if (params_.c != other.params_.c || params_.b != other.params_.b)
        throw std::logic_error("cannot append a step program with different parameters");
    steps_.insert(steps_.end(), other.steps_.begin(), other.steps_.end());
}

Nat StepProgram::apply(Nat t) const {
    for (const Step& st : steps_)
        t = (st.op == Step::Op::add_const) ? checked_add(t, st.amount) : s_apply(t, params_);
    return t;
}

std::vector<Nat> StepProgram::trace(Nat t) const {
    std::vector<Nat> values;
    values.reserve(steps_.size() + 1);
    values.push_back(t);
    for (const Step& st : steps_) {
        t = (st.op == Step::Op::add_const) ? checked_add(t, st.amount) : s_apply(t, params_);
        values.push_back(t);
    }
    return values;
}

// ---------------------------------------------------------------------------
// Goodness preconditions and the merge construction

bool is_good_possible(const std::vector<Nat>& t_set, const Params& p) {
    if (t_set.empty()) throw std::invalid_argument("the set must be nonempty");
    for (Nat t : t_set)
        if (t == 0) throw std::invalid_argument("set elements must be positive");
    if (p.d == 1) return true;
    const Nat parity = t_set.front() & 1;
    return std::all_of(t_set.begin(), t_set.end(),
                       [parity](Nat t) { return (t & 1) == parity; });
}

std::uint32_t case3_j(Nat w, const Params& p) {
    if (w == 0) throw std::invalid_argument("pair distance must be positive");
    const Nat mod = p.b - 1;
    if (mod == 1) return 0;
    const Nat s = s_apply(w - 1, p);  // S(0) = c matters here when w == 1
    __int128 rhs = __int128(p.c) - 1 - __int128(s);
    rhs %= __int128(mod);
    if (rhs < 0) rhs += mod;
    const Nat r = Nat(rhs);
    if (p.b % 2 == 0) {
        // 2 * (b/2) = b == 1 (mod b-1), so b/2 inverts 2; the solution is
        // unique in [0, b-1).
        return std::uint32_t((U128(r) * (p.b / 2)) % mod);
    }
    // Odd base: b-1 is even and so is the right side; j = r/2 is the smaller
    // of the two solutions.
    if (r % 2 != 0)
        throw std::invalid_argument(
            "no alignment digit: in an odd base the pair distance must be even");
    return std::uint32_t(r / 2);
}

namespace {

// Appends the alignment stage for a pair with t1 == t2 (mod b-1), t1 >= t2:
// after adding m = b^r + v - t2 the two values are b^r + bv and b^r + v,
// which share their nonzero digits, so one application of the map merges
// them.  Degenerate pairs (t1 == t2, v = 0) are allowed and stay equal.
void emit_alignment(StepProgram& prog, MergeTrace& tr, Nat t1, Nat t2, const Params& p) {
    const Nat v = (t1 - t2) / (p.b - 1);
    // b^r must clear bv so the leading 1 of b^r + bv does not collide with
    // the shifted digits of v, and must reach t2 - v so the shift m = b^r +
    // v - t2 is nonnegative.
    const U128 no_collision = U128(p.b) * v;
    const U128 nonnegative = (t2 > v) ? U128(t2 - v - 1) : 0;
    const Pow pw = pow_exceeding(1, no_collision, nonnegative, p.b);
    const U128 m = U128(pw.value) + v - t2;
    if (m > kNatMax) throw std::overflow_error("alignment shift exceeds 64 bits");
    tr.quotient = v;
    tr.align_pow = pw.r;
    tr.align_add = Nat(m);
    prog.push_add(Nat(m));
    prog.push_apply();
}

}  // namespace

MergeResult merge_pair(Nat a, Nat other, const Params& p) {
    Nat t1 = std::max(a, other), t2 = std::min(a, other);
    if (t2 == 0) throw std::invalid_argument("pair values must be positive");
    if (t1 == t2) throw std::invalid_argument("pair values must be distinct");
    if (p.d == 2 && ((t1 ^ t2) & 1))
        throw std::invalid_argument("pair values differ mod d: no merge exists");

    MergeResult mr{StepProgram(p), MergeTrace{}};
    MergeTrace& tr = mr.trace;
    tr.t1 = t1;
    tr.t2 = t2;

    if (nonzero_digits_sorted(t1, p.b) == nonzero_digits_sorted(t2, p.b)) {
        tr.merge_case = 1;  // the map cannot tell the two apart
        mr.program.push_apply();
    } else if ((t1 - t2) % (p.b - 1) == 0) {
        tr.merge_case = 2;
        emit_alignment(mr.program, tr, t1, t2, p);
    } else {
        // Shift so the images become congruent mod b-1, apply the map, then
        // fall through to the alignment stage on the new pair.
        tr.merge_case = 3;
        const Nat w = t1 - t2;
        tr.diff = w;
        tr.digit_j = case3_j(w, p);
        // b^r' must clear t1 so there is room for the digit j+1, and clear
        // w-1 so the digits of t1 + m' = (j+1) b^r' + (w-1) do not collide.
        const Pow pw = pow_exceeding(tr.digit_j + 1, t1, w - 1, p.b);
        const U128 top = U128(tr.digit_j + 1) * pw.value;
        if (top > kNatMax) throw std::overflow_error("congruence shift exceeds 64 bits");
        tr.congr_pow = pw.r;
        tr.congr_add = Nat(top) - t2 - 1;
        mr.program.push_add(tr.congr_add);
        mr.program.push_apply();
        tr.s1 = s_apply(checked_add(t1, tr.congr_add), p);
        tr.s2 = s_apply(checked_add(t2, tr.congr_add), p);
        if ((std::max(tr.s1, tr.s2) - std::min(tr.s1, tr.s2)) % (p.b - 1) != 0)
            throw std::logic_error("congruence stage failed to align the pair mod b-1");
        emit_alignment(mr.program, tr, std::max(tr.s1, tr.s2), std::min(tr.s1, tr.s2), p);
    }

    tr.merged_value = mr.program.apply(t2);
    if (mr.program.apply(t1) != tr.merged_value)
        throw std::logic_error("merge program failed to collapse the pair");
    return mr;
}

StepProgram reduce_to_singleton(const std::vector<Nat>& t_set, const Params& p) {
    if (!is_good_possible(t_set, p))
        throw std::invalid_argument("set elements differ mod d: cannot be collapsed");
    std::vector<Nat> image(t_set);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());

    StepProgram prog(p);
    while (image.size() > 1) {
        const Nat t1 = image[image.size() - 1];
        const Nat t2 = image[image.size() - 2];
        const MergeResult mr = merge_pair(t1, t2, p);
        prog.append(mr.program);
        std::vector<Nat> next;
        next.reserve(image.size());
        for (Nat t : image) next.push_back(mr.program.apply(t));
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (next.size() >= image.size())
            throw std::logic_error("merge did not shrink the image set");
        image = std::move(next);
    }
    return prog;
}

// ---------------------------------------------------------------------------
// Preimages and witnesses

namespace {

// Lexicographically smallest non-decreasing digit sequence (fewest digits
// first) whose squares sum to target, digits in [1, dmax].  Leftmost
// depth-first search with a fewest-digits table for pruning.
class PreimageSearch {
public:
    PreimageSearch(Nat target, std::uint32_t dmax)
        : target_(target), dmax_(dmax), fewest_(target + 1, kInf) {
        fewest_[0] = 0;
        for (Nat t = 1; t <= target_; ++t)
            for (std::uint32_t dv = 1; dv <= dmax_ && Nat(dv) * dv <= t; ++dv) {
                const std::uint32_t cand = fewest_[t - Nat(dv) * dv];
                if (cand != kInf && cand + 1 < fewest_[t]) fewest_[t] = cand + 1;
            }
    }

    bool feasible() const { return fewest_[target_] != kInf; }

    std::vector<std::uint32_t> run() {
        digits_.clear();
        if (!dfs(target_, 1, fewest_[target_]))
            throw std::logic_error("preimage search failed despite feasible target");
        return digits_;
    }

private:
    static constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

    bool dfs(Nat t, std::uint32_t dmin, std::uint32_t remaining) {
        if (t == 0) return remaining == 0;
        if (++nodes_ > 2'000'000)
            throw std::logic_error("preimage search exceeded its node budget");
        for (std::uint32_t dv = dmin; dv <= dmax_ && Nat(dv) * dv <= t; ++dv) {
            const Nat rest = t - Nat(dv) * dv;
            if (remaining == 0 || fewest_[rest] > remaining - 1) continue;
            if (U128(remaining - 1) * dmax_ * dmax_ < rest) continue;
            digits_.push_back(dv);
            if (dfs(rest, dv, remaining - 1)) return true;
            digits_.pop_back();
        }
        return false;
    }

    Nat target_;
    std::uint32_t dmax_;
    std::vector<std::uint32_t> fewest_;
    std::vector<std::uint32_t> digits_;
    std::size_t nodes_ = 0;
};

}  // namespace

Nat find_preimage(Nat u, const Params& p) {
    // A cycle element has a canonical preimage: its predecessor on the cycle.
    const CycleSet cs = CycleSet::find(p);
    if (const auto cid = cs.cycle_of(u)) {
        const auto& el = cs.cycles()[*cid].elements;
        for (std::size_t i = 0; i < el.size(); ++i)
            if (el[(i + 1) % el.size()] == u) return el[i];
        throw std::logic_error("cycle orbit inconsistent");
    }
    if (u <= p.c) throw std::invalid_argument("u is not in the image of S[c,b]");
    const Nat target = u - p.c;
    if (target > 200000) throw std::invalid_argument("preimage search target too large");
    std::uint32_t dmax = 1;
    while (dmax + 1 < p.b && Nat(dmax + 1) * (dmax + 1) <= target) ++dmax;
    PreimageSearch search(target, dmax);
    if (!search.feasible()) throw std::invalid_argument("u is not in the image of S[c,b]");
    const auto digits = search.run();  // ascending; place smallest most significant
    U128 value = 0;
    for (std::uint32_t dv : digits) {
        value = value * p.b + dv;
        if (value > kNatMax) throw std::overflow_error("preimage value exceeds 64 bits");
    }
    return Nat(value);
}

SingletonWitness singleton_witness(Nat t, Nat u, const Params& p) {
    if (t == 0) throw std::invalid_argument("witness values must be positive");
    const Nat v = find_preimage(u, p);
    U128 scaled = v;
    std::uint32_t r = 0;
    while (scaled < t) {
        scaled *= p.b;
        ++r;
        if (scaled > kNatMax) throw std::overflow_error("scaled preimage exceeds 64 bits");
    }
    // Trailing zeros leave the digit-square sum alone: S(v b^r) = S(v) = u.
    return SingletonWitness{DigitString::from_value(Nat(scaled) - t, p.b), 1, v, r};
}

GoodWitness good_witness(std::vector<Nat> t_set, Nat u, const Params& p) {
    std::sort(t_set.begin(), t_set.end());
    t_set.erase(std::unique(t_set.begin(), t_set.end()), t_set.end());
    StepProgram prog = reduce_to_singleton(t_set, p);
    const Nat collapsed = prog.apply(t_set.front());
    const SingletonWitness sw = singleton_witness(collapsed, u, p);
    prog.push_add(sw.n.value());
    prog.push_apply();

    GoodWitness w;
    w.program = std::move(prog);
    w.u = u;
    w.domain = std::move(t_set);
    w.verified = std::all_of(w.domain.begin(), w.domain.end(),
                             [&](Nat t) { return w.program.apply(t) == u; });
    return w;
}

NormalizeResult normalize_witness(const GoodWitness& w, Nat digit_cap) {
    const Params& p = w.program.params();
    const auto& steps = w.program.steps();
    if (w.domain.empty()) throw std::invalid_argument("witness domain is empty");

    // Largest value entering each step, over the whole domain: crossing an
    // application needs room for every digit expansion at that stage.
    std::vector<Nat> stage_max(steps.size(), 0);
    for (Nat t : w.domain) {
        const std::vector<Nat> tr = w.program.trace(t);
        for (std::size_t i = 0; i < steps.size(); ++i)
            stage_max[i] = std::max(stage_max[i], tr[i]);
    }

    DigitString n(p.b);  // accumulated shift, zero to start
    Nat k = 0;
    for (std::size_t idx = steps.size(); idx-- > 0;) {
        if (steps[idx].op == Step::Op::add_const) {
            n.add(steps[idx].amount);
            continue;
        }
        const Nat r = DigitString::from_value(stage_max[idx], p.b).digit_count();
        const bool fits = n.fits_value();
        if (!fits || n.value() > digit_cap || digit_cap - n.value() < r) {
            NormalizeResult res;
            res.blowup_step = idx;
            std::ostringstream os;
            os << "exceeds cap: rewriting across step " << idx << " needs ";
            if (fits)
                os << n.value() << "+" << r << " digits";
            else
                os << "one digit per unit of a " << n.digit_count() << "-digit number";
            os << " (cap " << digit_cap << ")";
            res.detail = os.str();
            return res;
        }
        // S(t + n) = S(t) + n' exactly when n is n' ones on top of r zeros:
        // the zeros hold every t at this stage, the ones add n' to the
        // digit-square sum.
        n = DigitString::ones_then_zeros(n.value(), r, p.b);
        ++k;
    }

    NormalizeResult res;
    res.value = Normalized{std::move(n), k};
    return res;
}

bool check_normalized(const std::vector<Nat>& domain, const Normalized& nf, Nat u,
                      const Params& p) {
    for (Nat t : domain) {
        DigitString x = nf.n;
        x.add(t);
        if (nf.k == 0) {
            if (!x.fits_value() || x.value() != u) return false;
            continue;
        }
        Nat y = s_apply(x, p);  // first application reads the long digit string
        for (Nat i = 1; i < nf.k; ++i) y = s_apply(y, p);
        if (y != u) return false;
    }
    return true;
}

GoodWitness sequence_witness(Nat u, Nat run_length, const Params& p) {
    if (run_length == 0) throw std::invalid_argument("run length must be positive");
    std::vector<Nat> t_set;
    t_set.reserve(run_length);
    for (Nat i = 1; i <= run_length; ++i) t_set.push_back(p.d == 1 ? i : 2 * i);
    return good_witness(std::move(t_set), u, p);
}

}  // namespace aghf
