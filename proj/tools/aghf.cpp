#include <cstdint>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "aghf/core.hpp"
#include "aghf/cycle_witness.hpp"
#include "aghf/dynamics.hpp"
#include "aghf/json_io.hpp"
#include "aghf/tables.hpp"
#include "aghf/witness.hpp"

namespace {

using namespace aghf;

Nat parse_decimal(const std::string& text) {
    std::size_t used = 0;
    Nat v = 0;
    try {
        v = std::stoull(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a decimal value: " + text);
    }
    if (used != text.size()) throw std::invalid_argument("not a decimal value: " + text);
    return v;
}

Nat parse_value(const std::string& text, const Params& p, bool radix_b) {
    if (!radix_b) return parse_decimal(text);
    return DigitString::parse(text, p.b).value();
}

std::vector<Nat> parse_set(const std::vector<std::string>& items, const Params& p, bool radix_b) {
    std::vector<Nat> out;
    out.reserve(items.size());
    for (const std::string& s : items) out.push_back(parse_value(s, p, radix_b));
    return out;
}

std::string render_value(Nat v, const Params& p) {
    if (p.b == 10) return std::to_string(v);
    std::ostringstream os;
    os << DigitString::from_value(v, p.b).str() << " (dec " << v << ")";
    return os.str();
}

std::string render_digits(const DigitString& ds) {
    const std::string text = ds.str();
    if (text.size() <= 1000) return text;
    std::ostringstream os;
    os << text.substr(0, 40) << "..." << text.substr(text.size() - 20) << " (" << ds.digit_count()
       << " digits)";
    return os.str();
}

std::string render_program(const StepProgram& prog, const Params& p) {
    std::ostringstream os;
    os << "[";
    const auto& steps = prog.steps();
    bool first = true;
    for (std::size_t i = 0; i < steps.size();) {
        if (!first) os << ", ";
        first = false;
        if (steps[i].op == Step::Op::add_const) {
            os << "Add(" << render_value(steps[i].amount, p) << ")";
            ++i;
        } else {
            std::size_t j = i;
            while (j < steps.size() && steps[j].op == Step::Op::apply_s) ++j;
            if (j - i == 1)
                os << "S";
            else
                os << "S^" << (j - i);
            i = j;
        }
    }
    os << "]";
    return os.str();
}

void print_params(const Params& p) {
    std::cout << "params: c=" << p.c << " b=" << p.b << " (d=" << p.d << ", m=" << p.m
              << ", B=" << p.bound << ")\n";
}

void emit_json(const std::string& command, Json result) {
    Json out{{"command", command}, {"result", std::move(result)}};
    std::cout << out.dump(2) << "\n";
}

// ---------------------------------------------------------------------------

int cmd_cycles(const Params& p, bool json) {
    const CycleSet cs = CycleSet::find(p);
    if (json) {
        emit_json("cycles", to_json(cs));
        return 0;
    }
    print_params(p);
    const auto& cycles = cs.cycles();
    std::cout << cycles.size() << " cycle(s):\n";
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        std::cout << "  C" << (i + 1) << " (length " << cycles[i].length() << "):";
        for (std::size_t k = 0; k < cycles[i].elements.size(); ++k)
            std::cout << (k ? " -> " : " ") << render_value(cycles[i].elements[k], p);
        std::cout << "\n";
    }
    return 0;
}

int cmd_attract(const Params& p, const std::string& value_text, const std::string& u_text,
                bool radix_b, bool json) {
    const CycleSet cs = CycleSet::find(p);
    const Nat value = parse_value(value_text, p, radix_b);
    if (value == 0) throw std::invalid_argument("values must be positive");
    const auto att = cs.attraction_target(value);
    const Cycle& cyc = cs.cycles()[att.cycle];

    bool attracted = true;
    Json j{{"value", value},
           {"cycle", att.cycle + 1},
           {"cycle_min", cyc.min()},
           {"steps", att.steps}};
    if (!u_text.empty()) {
        const Nat u = parse_value(u_text, p, radix_b);
        attracted = cs.is_attracted(value, u);
        j["u"] = u;
        j["u_attracted"] = attracted;
    }
    if (json) {
        emit_json("attract", std::move(j));
    } else {
        print_params(p);
        std::cout << "value " << render_value(value, p) << " reaches cycle " << (att.cycle + 1)
                  << " (min " << render_value(cyc.min(), p) << ") after " << att.steps
                  << " step(s)\n";
        if (!u_text.empty())
            std::cout << "attracted to the cycle of " << u_text << ": "
                      << (attracted ? "yes" : "no") << "\n";
    }
    return attracted ? 0 : 1;
}

int cmd_search(const Params& p, const std::string& u_text, Nat len, Nat limit, bool first,
               std::uint32_t stride, unsigned workers, bool radix_b, bool json) {
    const CycleSet cs = CycleSet::find(p);
    const Nat u = parse_value(u_text, p, radix_b);
    ScanOptions opts;
    opts.length = len;
    opts.limit = limit;
    opts.first_only = first;
    opts.workers = workers;
    if (stride != 0) opts.stride = stride;
    const std::vector<RunReport> runs = scan_runs(u, opts, cs);
    if (json) {
        Json arr = Json::array();
        for (const RunReport& rr : runs) arr.push_back(to_json(rr));
        emit_json("search-run", Json{{"params", to_json(p)}, {"u", u}, {"runs", std::move(arr)}});
        return 0;
    }
    print_params(p);
    std::cout << "runs of length >= " << len << ", stride "
              << (stride != 0 ? stride : p.d) << ", attracted to the cycle of "
              << render_value(u, p) << ", search limit " << limit << ":\n";
    if (runs.empty()) {
        std::cout << "  none found\n";
    } else {
        for (const RunReport& rr : runs)
            std::cout << "  start " << render_value(rr.start, p) << " length " << rr.length
                      << (rr.verified ? " (verified)" : " (NOT VERIFIED)") << "\n";
    }
    return 0;
}

int cmd_good(const Params& p, const std::vector<std::string>& set_text, const std::string& u_text,
             bool normalize, Nat cap, bool radix_b, bool json) {
    const std::vector<Nat> t_set = parse_set(set_text, p, radix_b);
    const Nat u = parse_value(u_text, p, radix_b);
    const GoodWitness w = good_witness(t_set, u, p);

    bool overall = w.verified;
    NormalizeResult nf;
    bool checked = false;
    if (normalize) {
        nf = normalize_witness(w, cap);
        if (nf.ok()) {
            checked = check_normalized(w.domain, *nf.value, w.u, p);
            overall = overall && checked;
        } else {
            overall = false;
        }
    }

    if (json) {
        Json j = normalize ? to_json(w, nf) : to_json(w);
        if (normalize && nf.ok()) j["normalized"]["checked"] = checked;
        emit_json("good", std::move(j));
        return overall ? 0 : 1;
    }

    print_params(p);
    std::cout << "domain:";
    for (Nat t : w.domain) std::cout << " " << render_value(t, p);
    std::cout << "\ntarget u: " << render_value(w.u, p) << "\n";
    std::cout << "program: " << render_program(w.program, p) << "\n";
    std::cout << "verified: " << (w.verified ? "yes" : "NO") << "\n";
    if (normalize) {
        if (nf.ok()) {
            std::cout << "normalized: n = " << render_digits(nf.value->n) << " ("
                      << nf.value->n.digit_count() << " digits), k = " << nf.value->k << "\n";
            std::cout << "replay check: " << (checked ? "pass" : "FAIL") << "\n";
        } else {
            std::cout << "normalization failed at step " << nf.blowup_step << ": " << nf.detail
                      << "\n";
        }
    }
    return overall ? 0 : 1;
}

void print_cycle_witness(const CycleGoodWitness& w, const CycleSet& cs) {
    const Params& p = w.params;
    print_params(p);
    std::cout << "domain:";
    for (Nat t : w.domain) std::cout << " " << render_value(t, p);
    std::cout << "\n";
    if (w.pair_set_index)
        std::cout << "mixed parity collapsed into pair set V" << (*w.pair_set_index + 1) << "\n";
    if (w.settle_steps) std::cout << "settle steps: " << *w.settle_steps << "\n";
    for (const CycleProgram& cp : w.programs) {
        const Cycle& cyc = cs.cycles()[cp.cycle];
        std::cout << "cycle " << (cp.cycle + 1) << " (min " << render_value(cyc.min(), p)
                  << "): " << render_program(cp.program, p) << " "
                  << (cp.verified ? "verified" : "NOT VERIFIED");
        if (w.focus_cycle && *w.focus_cycle == cp.cycle) std::cout << "  <- focus";
        std::cout << "\n";
    }
    std::cout << "verified: " << (w.verified ? "yes" : "NO") << "\n";
}

int cmd_cycle_good(const Params& p, const std::vector<std::string>& set_text, bool radix_b,
                   bool json) {
    const std::vector<Nat> t_set = parse_set(set_text, p, radix_b);
    const CycleGoodWitness w = cycle_good_witness(t_set, p);
    if (json) {
        emit_json("cycle-good", to_json(w));
    } else {
        print_cycle_witness(w, CycleSet::find(p));
    }
    return w.verified ? 0 : 1;
}

int cmd_consec(const Params& p, const std::string& u_text, Nat len, bool radix_b, bool json) {
    const Nat u = parse_value(u_text, p, radix_b);
    const CycleGoodWitness w = consecutive_witness(u, len, p);
    if (json) {
        emit_json("consec", to_json(w));
    } else {
        print_cycle_witness(w, CycleSet::find(p));
    }
    return w.verified ? 0 : 1;
}

int cmd_verify_tables(const std::string& which, bool json) {
    const bool do10 = which == "all" || which == "cycles10";
    const bool doodd = which == "all" || which == "cyclesodd";
    const bool doshift = which == "all" || which == "shifts";
    bool all_ok = true;
    Json j;

    if (do10) {
        const tables::Diff d = tables::check_base10();
        all_ok = all_ok && d.ok;
        if (json)
            j["cycles10"] = Json{{"ok", d.ok}, {"detail", d.detail}};
        else
            std::cout << "base-10 cycle table: " << (d.ok ? "ok" : "MISMATCH\n" + d.detail)
                      << "\n";
    }
    if (doodd) {
        const tables::Diff d = tables::check_odd_base();
        all_ok = all_ok && d.ok;
        if (json)
            j["cyclesodd"] = Json{{"ok", d.ok}, {"detail", d.detail}};
        else
            std::cout << "odd-base cycle table: " << (d.ok ? "ok" : "MISMATCH\n" + d.detail)
                      << "\n";
    }
    if (doshift) {
        Json arr = Json::array();
        for (const ProofConstants& pc : ProofConstants::all()) {
            const TableReport rep = verify_tables(pc);
            all_ok = all_ok && rep.ok();
            if (json) {
                Json jr = to_json(rep);
                jr["pair"] = Json{{"c", pc.params.c}, {"b", pc.params.b}};
                arr.push_back(std::move(jr));
            } else if (rep.ok()) {
                std::cout << "[" << pc.params.c << "," << pc.params.b << "] shift constants: all "
                          << rep.cells.size() << " cells pass\n";
            } else {
                for (const CellCheck& cc : rep.cells)
                    if (!cc.pass)
                        std::cout << cc.cell << ": FAIL (" << cc.detail << ")\n";
            }
        }
        if (json) j["shifts"] = std::move(arr);
    }
    if (json) emit_json("verify-tables", std::move(j));
    else std::cout << (all_ok ? "all checks pass" : "CHECKS FAILED") << "\n";
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cycles, attraction, and witness programs for the augmented digit-square map "
                 "S[c,b](a) = c + sum of squared base-b digits of a"};
    app.require_subcommand(1);

    bool json = false;
    app.add_flag("--json", json, "emit JSON instead of text");

    struct Common {
        Nat c = 0;
        std::uint32_t b = 10;
        bool radix_b = false;
    };

    auto add_common = [](CLI::App* sub, Common& cm) {
        sub->add_option("-c,--shift", cm.c, "additive constant c")->capture_default_str();
        sub->add_option("-b,--base", cm.b, "digit base b (>= 2)")->capture_default_str();
        sub->add_flag("--radix-b", cm.radix_b, "read values as base-b digit strings");
    };

    Common c_cycles;
    auto* sub_cycles = app.add_subcommand("cycles", "list all cycles and fixed points");
    add_common(sub_cycles, c_cycles);

    Common c_attract;
    std::string at_value, at_u;
    auto* sub_attract = app.add_subcommand("attract", "classify where a value is attracted");
    add_common(sub_attract, c_attract);
    sub_attract->add_option("--value", at_value, "value to classify")->required();
    sub_attract->add_option("--u", at_u, "check attraction to the cycle of this element");

    Common c_search;
    std::string se_u;
    Nat se_len = 1, se_limit = 1000;
    bool se_first = false;
    std::uint32_t se_stride = 0;
    unsigned se_workers = 0;
    auto* sub_search = app.add_subcommand("search-run", "scan for runs of attracted values");
    add_common(sub_search, c_search);
    sub_search->add_option("--u", se_u, "cycle element the run must be attracted to")->required();
    sub_search->add_option("--len", se_len, "minimum run length")->capture_default_str();
    sub_search->add_option("--limit", se_limit, "largest start to scan")->capture_default_str();
    sub_search->add_flag("--first", se_first, "stop at the first run");
    sub_search->add_option("--stride", se_stride, "run stride (default: d)");
    sub_search->add_option("--workers", se_workers, "scan threads (default: hardware)");

    Common c_good;
    std::vector<std::string> go_set;
    std::string go_u;
    bool go_norm = false;
    Nat go_cap = 1000000;
    auto* sub_good = app.add_subcommand("good", "build a program collapsing a set onto u");
    add_common(sub_good, c_good);
    sub_good->add_option("--set", go_set, "comma-separated set elements")
        ->required()
        ->delimiter(',');
    sub_good->add_option("--u", go_u, "target value")->required();
    sub_good->add_flag("--normalize", go_norm, "rewrite the program as one shift (add n, apply k times)");
    sub_good->add_option("--cap", go_cap, "digit budget for the normalized shift")
        ->capture_default_str();

    Common c_cgood;
    std::vector<std::string> cg_set;
    auto* sub_cgood =
        app.add_subcommand("cycle-good", "build programs sending a set into every cycle");
    add_common(sub_cgood, c_cgood);
    sub_cgood->add_option("--set", cg_set, "comma-separated set elements")
        ->required()
        ->delimiter(',');

    Common c_consec;
    std::string co_u;
    Nat co_len = 1;
    auto* sub_consec = app.add_subcommand(
        "consec", "witness a run of consecutive integers attracted to the cycle of u");
    add_common(sub_consec, c_consec);
    sub_consec->add_option("--u", co_u, "cycle element")->required();
    sub_consec->add_option("--len", co_len, "run length")->capture_default_str();

    std::string vt_which = "all";
    auto* sub_vt = app.add_subcommand("verify-tables", "recompute the embedded reference tables");
    sub_vt->add_option("--which", vt_which, "cycles10, cyclesodd, shifts, or all")
        ->check(CLI::IsMember({"cycles10", "cyclesodd", "shifts", "all"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(sub_cycles))
            return cmd_cycles(Params::make(c_cycles.c, c_cycles.b), json);
        if (app.got_subcommand(sub_attract))
            return cmd_attract(Params::make(c_attract.c, c_attract.b), at_value, at_u,
                               c_attract.radix_b, json);
        if (app.got_subcommand(sub_search))
            return cmd_search(Params::make(c_search.c, c_search.b), se_u, se_len, se_limit,
                              se_first, se_stride, se_workers, c_search.radix_b, json);
        if (app.got_subcommand(sub_good))
            return cmd_good(Params::make(c_good.c, c_good.b), go_set, go_u, go_norm, go_cap,
                            c_good.radix_b, json);
        if (app.got_subcommand(sub_cgood))
            return cmd_cycle_good(Params::make(c_cgood.c, c_cgood.b), cg_set, c_cgood.radix_b,
                                  json);
        if (app.got_subcommand(sub_consec))
            return cmd_consec(Params::make(c_consec.c, c_consec.b), co_u, co_len,
                              c_consec.radix_b, json);
        if (app.got_subcommand(sub_vt)) return cmd_verify_tables(vt_which, json);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;  // no subcommand (require_subcommand should have caught this)
}
