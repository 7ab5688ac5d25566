#include "aghf/dynamics.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <thread>

namespace aghf {

namespace {
constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
}

CycleSet CycleSet::find(const Params& p) {
    CycleSet cs;
    cs.params_ = p;
    const Nat B = p.bound;

    // 0 = untouched, 1 = on the current walk, 2 = settled.
    std::vector<std::uint8_t> color(B + 1, 0);
    std::vector<Nat> path;
    for (Nat a = 1; a <= B; ++a) {
        if (color[a]) continue;
        path.clear();
        Nat x = a;
        while (color[x] == 0) {
            color[x] = 1;
            path.push_back(x);
            x = s_apply(x, p);
            if (x == 0 || x > B)  // [1, B] is closed under the map
                throw std::logic_error("trajectory left the absorbing interval");
        }
        if (color[x] == 1) {
            // x is on the walk we just laid down: everything from its first
            // occurrence to the end of the path is a new cycle.
            const auto it = std::find(path.begin(), path.end(), x);
            Cycle cyc;
            cyc.elements.assign(it, path.end());
            cs.cycles_.push_back(std::move(cyc));
        }
        for (Nat y : path) color[y] = 2;
    }

    for (Cycle& cyc : cs.cycles_) {
        const auto mn = std::min_element(cyc.elements.begin(), cyc.elements.end());
        std::rotate(cyc.elements.begin(), mn, cyc.elements.end());
    }
    std::sort(cs.cycles_.begin(), cs.cycles_.end(),
              [](const Cycle& lhs, const Cycle& rhs) { return lhs.min() < rhs.min(); });

    // Attraction table over the absorbing interval.
    cs.target_.assign(B + 1, 0);
    cs.steps_.assign(B + 1, kUnset);
    for (std::size_t i = 0; i < cs.cycles_.size(); ++i)
        for (Nat e : cs.cycles_[i].elements) {
            cs.target_[e] = std::uint32_t(i);
            cs.steps_[e] = 0;
        }
    std::vector<Nat> chain;
    for (Nat v = 1; v <= B; ++v) {
        if (cs.steps_[v] != kUnset) continue;
        chain.clear();
        Nat x = v;
        while (cs.steps_[x] == kUnset) {
            chain.push_back(x);
            x = s_apply(x, p);
        }
        std::uint32_t dist = cs.steps_[x];
        const std::uint32_t tgt = cs.target_[x];
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            cs.steps_[*it] = ++dist;
            cs.target_[*it] = tgt;
        }
    }
    return cs;
}

std::optional<std::size_t> CycleSet::cycle_of(Nat value) const {
    if (value == 0 || value > params_.bound || steps_[value] != 0) return std::nullopt;
    return target_[value];
}

bool CycleSet::contains(Nat value) const { return cycle_of(value).has_value(); }

CycleSet::Attraction CycleSet::attraction_target(Nat a) const {
    if (a == 0) throw std::invalid_argument("attraction is defined for positive values");
    Nat x = a;
    Nat descent = 0;
    while (x > params_.bound) {  // strict descent above B
        x = s_apply(x, params_);
        ++descent;
    }
    return Attraction{target_[x], descent + steps_[x]};
}

bool CycleSet::is_attracted(Nat a, Nat u) const {
    const auto cid = cycle_of(u);
    if (!cid) throw std::invalid_argument("u is not a cycle element of S[c,b]");
    return attraction_target(a).cycle == *cid;
}

// ---------------------------------------------------------------------------
// Run scanning

namespace {

// Classification table for the scanner: eventual cycle of every value in
// [1, M], where M is large enough that one application of the map lands any
// scanned value inside the table.
struct TargetTable {
    Nat m = 0;
    std::vector<std::uint32_t> target;

    static TargetTable build(const CycleSet& cs, Nat max_scanned) {
        const Params& p = cs.params();
        Nat digits = 0;
        for (Nat x = max_scanned; x > 0; x /= p.b) ++digits;
        const Nat M =
            std::max<Nat>(p.bound, p.c + digits * Nat(p.b - 1) * Nat(p.b - 1));
        TargetTable tt;
        tt.m = M;
        tt.target.assign(M + 1, kUnset);
        for (Nat v = 1; v <= p.bound; ++v) tt.target[v] = std::uint32_t(cs.attraction_target(v).cycle);
        std::vector<Nat> chain;
        for (Nat v = p.bound + 1; v <= M; ++v) {
            if (tt.target[v] != kUnset) continue;
            chain.clear();
            Nat x = v;
            while (tt.target[x] == kUnset) {  // descends below B, stays <= M
                chain.push_back(x);
                x = s_apply(x, p);
            }
            const std::uint32_t tgt = tt.target[x];
            for (Nat y : chain) tt.target[y] = tgt;
        }
        return tt;
    }

    std::uint32_t classify(Nat x, const Params& p) const {
        if (x <= m) return target[x];
        return target[s_apply(x, p)];
    }
};

void scan_chunk(const CycleSet& cs, const TargetTable& tt, std::uint32_t cid, Nat lo,
                Nat hi, Nat length, std::uint32_t stride, Nat u,
                std::vector<RunReport>* out) {
    const Params& p = cs.params();
    const Nat tail = (length - 1) * stride;
    for (Nat r = lo; r < lo + stride && r <= hi; ++r) {
        Nat run = 0;
        for (Nat pos = r; pos <= hi + tail; pos += stride) {
            if (tt.classify(pos, p) == cid)
                ++run;
            else
                run = 0;
            if (run >= length) {
                const Nat start = pos - tail;
                if (start >= lo && start <= hi)
                    out->push_back(RunReport{start, stride, length, u, false});
            }
        }
    }
    std::sort(out->begin(), out->end(),
              [](const RunReport& a, const RunReport& b) { return a.start < b.start; });
}

}  // namespace

std::vector<RunReport> scan_runs(Nat u, const ScanOptions& opt, const CycleSet& cs) {
    const Params& p = cs.params();
    const auto cid = cs.cycle_of(u);
    if (!cid) throw std::invalid_argument("u is not a cycle element of S[c,b]");
    if (opt.length == 0) throw std::invalid_argument("run length must be positive");
    if (opt.limit == 0) throw std::invalid_argument("scan limit must be positive");
    const std::uint32_t stride = opt.stride.value_or(p.d);
    if (stride == 0) throw std::invalid_argument("stride must be positive");
    if (opt.limit > Nat(1) << 40 || opt.length * Nat(stride) > Nat(1) << 30)
        throw std::invalid_argument("scan range too large");

    const Nat max_scanned = opt.limit + (opt.length - 1) * stride;
    const TargetTable tt = TargetTable::build(cs, max_scanned);

    const Nat chunk = Nat(1) << 20;
    const Nat nchunks = (opt.limit + chunk - 1) / chunk;
    unsigned workers = opt.workers ? opt.workers : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;

    std::vector<RunReport> found;
    for (Nat base = 0; base < nchunks; base += workers) {
        const unsigned round = unsigned(std::min<Nat>(workers, nchunks - base));
        std::vector<std::vector<RunReport>> results(round);
        std::vector<std::thread> pool;
        pool.reserve(round);
        for (unsigned i = 0; i < round; ++i) {
            const Nat lo = (base + i) * chunk + 1;
            const Nat hi = std::min(opt.limit, (base + i + 1) * chunk);
            pool.emplace_back(scan_chunk, std::cref(cs), std::cref(tt), std::uint32_t(*cid),
                              lo, hi, opt.length, stride, u, &results[i]);
        }
        for (auto& th : pool) th.join();
        for (auto& res : results)
            found.insert(found.end(), res.begin(), res.end());
        if (opt.first_only && !found.empty()) break;
    }

    if (opt.first_only && found.size() > 1) found.resize(1);
    // Independent re-check of every reported run by plain trajectory walking.
    for (RunReport& rep : found) {
        bool ok = true;
        for (Nat i = 0; i < rep.length && ok; ++i)
            ok = cs.is_attracted(rep.start + i * stride, u);
        rep.verified = ok;
    }
    return found;
}

}  // namespace aghf
