#include "aghf/cycle_witness.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "aghf/dynamics.hpp"

namespace aghf {

namespace {

std::string pair_label(const Params& p) {
    std::ostringstream os;
    os << "[" << p.c << "," << p.b << "]";
    return os.str();
}

Nat iterate_s(Nat x, Nat k, const Params& p) {
    for (Nat i = 0; i < k; ++i) x = s_apply(x, p);
    return x;
}

void add_cell(TableReport& rep, std::string cell, bool pass, std::string detail) {
    rep.cells.push_back(CellCheck{std::move(cell), pass, std::move(detail)});
}

std::string render_set(const std::array<Nat, 2>& s) {
    std::ostringstream os;
    os << "{" << s[0] << "," << s[1] << "}";
    return os.str();
}

}  // namespace

bool TableReport::ok() const {
    return std::all_of(cells.begin(), cells.end(),
                       [](const CellCheck& cc) { return cc.pass; });
}

TableReport verify_tables(const ProofConstants& pc) {
    TableReport rep;
    const Params& p = pc.params;
    const std::string lbl = pair_label(p);
    const CycleSet cs = CycleSet::find(p);
    const auto& cycles = cs.cycles();

    std::vector<Nat> odd_u;
    for (const Cycle& cyc : cycles)
        for (Nat e : cyc.elements)
            if (e & 1) odd_u.push_back(e);
    std::sort(odd_u.begin(), odd_u.end());

    {
        std::ostringstream os;
        os << cycles.size() << " cycles, " << odd_u.size() << " odd elements, "
           << pc.pair_sets.size() << " pair sets, " << pc.cycle_shifts.size()
           << " cycle shifts, " << pc.pair_shifts.size() << " link shifts";
        const bool pass = !cycles.empty() && pc.cycle_shifts.size() == cycles.size() &&
                          pc.pair_sets.size() == odd_u.size() && !pc.pair_sets.empty() &&
                          pc.pair_shifts.size() + 1 == pc.pair_sets.size();
        add_cell(rep, lbl + " shape", pass, os.str());
    }

    {
        std::ostringstream os;
        os << "lengths";
        bool pass = true;
        for (const Cycle& cyc : cycles) {
            os << " " << cyc.length();
            if (cyc.length() % 2 != 0) pass = false;
        }
        add_cell(rep, lbl + " cycles even", pass, os.str());
    }

    {
        const bool in_first =
            !cycles.empty() && std::find(cycles[0].elements.begin(), cycles[0].elements.end(),
                                         pc.anchor) != cycles[0].elements.end();
        std::ostringstream os;
        os << "v=" << pc.anchor << (in_first ? " lies on" : " misses") << " the first cycle";
        add_cell(rep, lbl + " anchor", pc.anchor % 2 == 0 && in_first, os.str());
    }

    // Together with the count check above, these make the odd halves a
    // bijection onto the odd cycle elements.
    for (std::size_t j = 1; j <= pc.pair_sets.size(); ++j) {
        const auto& ps = pc.pair_sets[j - 1];
        const bool odd_in_u = (ps[1] & 1) && std::binary_search(odd_u.begin(), odd_u.end(), ps[1]);
        bool fresh = true;
        for (std::size_t prev = 0; prev + 1 < j; ++prev)
            if (pc.pair_sets[prev][1] == ps[1]) fresh = false;
        const bool pass = ps[0] == pc.anchor && odd_in_u && fresh;
        std::ostringstream os;
        os << render_set(ps) << (pass ? " = {v, odd cycle element}" : " malformed");
        std::ostringstream cell;
        cell << lbl << " pair set " << j;
        add_cell(rep, cell.str(), pass, os.str());
    }

    const std::array<Nat, 2> v1 =
        pc.pair_sets.empty() ? std::array<Nat, 2>{pc.anchor, pc.anchor} : pc.pair_sets[0];

    for (std::size_t i = 0; i < pc.cycle_shifts.size(); ++i) {
        const ShiftPair& sh = pc.cycle_shifts[i];
        bool pass = true;
        std::ostringstream os;
        for (Nat x : v1) {
            const Nat y = iterate_s(x + sh.n, sh.k, p);
            const auto cid = cs.cycle_of(y);
            os << x << "+" << sh.n << " -> " << y << " ";
            if (!cid || *cid != i) pass = false;
        }
        std::ostringstream cell;
        cell << lbl << " cycle-shift " << (i + 1);
        add_cell(rep, cell.str(), pass, os.str());
    }

    for (std::size_t idx = 0; idx < pc.pair_shifts.size(); ++idx) {
        const std::size_t j = idx + 2;
        const ShiftPair& sh = pc.pair_shifts[idx];
        bool pass = j <= pc.pair_sets.size();
        std::ostringstream os;
        if (pass) {
            for (Nat x : pc.pair_sets[j - 1]) {
                const Nat y = iterate_s(x + sh.n, sh.k, p);
                os << x << "+" << sh.n << " -> " << y << " ";
                if (y != v1[0] && y != v1[1]) pass = false;
            }
        }
        std::ostringstream cell;
        cell << lbl << " link-shift " << j;
        add_cell(rep, cell.str(), pass, os.str());
    }

    return rep;
}

// ---------------------------------------------------------------------------

namespace {

void push_applies(StepProgram& prog, Nat count) {
    for (Nat i = 0; i < count; ++i) prog.push_apply();
}

bool lands_in_cycle(const StepProgram& prog, const std::vector<Nat>& domain, std::size_t cycle,
                    const CycleSet& cs) {
    return std::all_of(domain.begin(), domain.end(), [&](Nat t) {
        const auto cid = cs.cycle_of(prog.apply(t));
        return cid && *cid == cycle;
    });
}

}  // namespace

CycleGoodWitness cycle_good_witness(std::vector<Nat> t_set, const Params& p) {
    std::sort(t_set.begin(), t_set.end());
    t_set.erase(std::unique(t_set.begin(), t_set.end()), t_set.end());
    if (t_set.empty()) throw std::invalid_argument("the set must be nonempty");
    for (Nat t : t_set)
        if (t == 0) throw std::invalid_argument("set elements must be positive");

    const CycleSet cs = CycleSet::find(p);
    const auto& cycles = cs.cycles();

    CycleGoodWitness w;
    w.params = p;
    w.domain = t_set;

    if (is_good_possible(t_set, p)) {
        // One collapse per cycle: everything is sent to the cycle minimum.
        for (std::size_t i = 0; i < cycles.size(); ++i) {
            GoodWitness gw = good_witness(t_set, cycles[i].min(), p);
            const bool ok = gw.verified && lands_in_cycle(gw.program, t_set, i, cs);
            w.programs.push_back(CycleProgram{i, std::move(gw.program), ok});
        }
    } else if (cycles.size() == 1) {
        // A single cycle attracts everything: apply the map until the
        // slowest element has arrived.
        Nat worst = 0;
        for (Nat t : t_set) worst = std::max(worst, cs.attraction_target(t).steps);
        StepProgram prog(p);
        push_applies(prog, worst);
        const bool ok = lands_in_cycle(prog, t_set, 0, cs);
        w.programs.push_back(CycleProgram{0, std::move(prog), ok});
        w.settle_steps = worst;
    } else {
        const ProofConstants* pc = ProofConstants::find(p.c, p.b);
        if (!pc)
            throw std::invalid_argument(
                "mixed-parity set: no shift constants for these parameters");

        std::vector<Nat> evens, odds;
        for (Nat t : t_set) ((t & 1) ? odds : evens).push_back(t);

        // Collapse the evens onto the anchor, push the odds through, then
        // collapse their images (all odd, by parity) onto the anchor too.
        // The two halves land on {anchor, x} with x odd.
        GoodWitness g1 = good_witness(evens, pc->anchor, p);
        StepProgram prog = g1.program;
        std::vector<Nat> shifted;
        for (Nat t : odds) shifted.push_back(prog.apply(t));
        GoodWitness g2 = good_witness(shifted, pc->anchor, p);
        prog.append(g2.program);
        const Nat x = g2.program.apply(pc->anchor);

        // Walk the stray value into a cycle with a multiple of the first
        // cycle's length, so the anchor comes back to itself.
        const Nat ell = cycles[0].length();
        const Nat arrive = cs.attraction_target(x).steps;
        const Nat k3 = ((arrive + ell - 1) / ell) * ell;
        push_applies(prog, k3);
        w.settle_steps = k3;
        const Nat y = iterate_s(x, k3, p);

        std::size_t j = 0;  // 1-based index of the pair set {anchor, y}
        for (std::size_t idx = 0; idx < pc->pair_sets.size(); ++idx)
            if (pc->pair_sets[idx][0] == pc->anchor && pc->pair_sets[idx][1] == y) j = idx + 1;
        if (j == 0) {
            std::ostringstream os;
            os << "collapsed image {" << pc->anchor << "," << y
               << "} is not a tabulated pair set";
            throw std::logic_error(os.str());
        }
        w.pair_set_index = j - 1;

        if (j != 1) {
            const ShiftPair& link = pc->pair_shifts[j - 2];
            if (link.n > 0) prog.push_add(link.n);
            push_applies(prog, link.k);
        }

        for (std::size_t i = 0; i < cycles.size(); ++i) {
            const ShiftPair& sh = pc->cycle_shifts[i];
            StepProgram prog_i = prog;
            if (sh.n > 0) prog_i.push_add(sh.n);
            push_applies(prog_i, sh.k);
            const bool ok = lands_in_cycle(prog_i, t_set, i, cs);
            w.programs.push_back(CycleProgram{i, std::move(prog_i), ok});
        }
    }

    w.verified = !w.programs.empty() &&
                 std::all_of(w.programs.begin(), w.programs.end(),
                             [](const CycleProgram& cp) { return cp.verified; });
    return w;
}

CycleGoodWitness consecutive_witness(Nat u, Nat run_length, const Params& p) {
    if (run_length == 0) throw std::invalid_argument("run length must be positive");
    const CycleSet cs = CycleSet::find(p);
    const auto cid = cs.cycle_of(u);
    if (!cid) throw std::invalid_argument("u is not a cycle element");
    std::vector<Nat> t_set;
    t_set.reserve(run_length);
    for (Nat i = 1; i <= run_length; ++i) t_set.push_back(i);
    CycleGoodWitness w = cycle_good_witness(std::move(t_set), p);
    w.focus_cycle = *cid;
    return w;
}

}  // namespace aghf
