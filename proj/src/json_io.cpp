#include "aghf/json_io.hpp"

#include <algorithm>
#include <stdexcept>

namespace aghf {

Json to_json(const Params& p) {
    return Json{{"c", p.c}, {"b", p.b}, {"d", p.d}, {"m", p.m}, {"B", p.bound}};
}

Json to_json(const Cycle& cyc) {
    return Json{{"min", cyc.min()}, {"length", cyc.length()}, {"elements", cyc.elements}};
}

Json to_json(const CycleSet& cs) {
    Json cycles = Json::array();
    for (const Cycle& cyc : cs.cycles()) cycles.push_back(to_json(cyc));
    return Json{{"params", to_json(cs.params())}, {"cycles", std::move(cycles)}};
}

Json to_json(const RunReport& rr) {
    return Json{{"start", rr.start},
                {"stride", rr.stride},
                {"length", rr.length},
                {"u", rr.u},
                {"verified", rr.verified}};
}

Json to_json(const StepProgram& prog) {
    const Params& p = prog.params();
    Json steps = Json::array();
    for (const Step& st : prog.steps()) {
        if (st.op == Step::Op::add_const)
            steps.push_back(Json{{"op", "add"},
                                 {"m", DigitString::from_value(st.amount, p.b).str()}});
        else
            steps.push_back(Json{{"op", "s"}});
    }
    return Json{{"params", Json{{"c", p.c}, {"b", p.b}}}, {"steps", std::move(steps)}};
}

Json to_json(const GoodWitness& w) {
    return Json{{"domain", w.domain},
                {"u", w.u},
                {"program", to_json(w.program)},
                {"verified", w.verified}};
}

Json to_json(const GoodWitness& w, const NormalizeResult& nf) {
    Json j = to_json(w);
    if (nf.ok()) {
        j["normalized"] = Json{{"n", nf.value->n.str()},
                               {"digit_count", nf.value->n.digit_count()},
                               {"k", nf.value->k}};
    } else {
        j["normalization_error"] = Json{{"step", nf.blowup_step}, {"detail", nf.detail}};
    }
    return j;
}

Json to_json(const CycleGoodWitness& w) {
    Json programs = Json::array();
    for (const CycleProgram& cp : w.programs)
        programs.push_back(Json{{"cycle", cp.cycle},
                                {"program", to_json(cp.program)},
                                {"verified", cp.verified}});
    Json j{{"params", Json{{"c", w.params.c}, {"b", w.params.b}}},
           {"domain", w.domain},
           {"programs", std::move(programs)},
           {"verified", w.verified}};
    j["pair_set"] = w.pair_set_index ? Json(*w.pair_set_index + 1) : Json(nullptr);
    j["settle_steps"] = w.settle_steps ? Json(*w.settle_steps) : Json(nullptr);
    j["focus_cycle"] = w.focus_cycle ? Json(*w.focus_cycle + 1) : Json(nullptr);
    return j;
}

Json to_json(const TableReport& rep) {
    Json cells = Json::array();
    for (const CellCheck& cc : rep.cells)
        cells.push_back(Json{{"cell", cc.cell}, {"pass", cc.pass}, {"detail", cc.detail}});
    return Json{{"ok", rep.ok()}, {"cells", std::move(cells)}};
}

StepProgram step_program_from_json(const Json& j) {
    const Json& jp = j.at("params");
    const Params p = Params::make(jp.at("c").get<Nat>(), jp.at("b").get<std::uint32_t>());
    StepProgram prog(p);
    for (const Json& js : j.at("steps")) {
        const std::string op = js.at("op").get<std::string>();
        if (op == "add") {
            const DigitString m = DigitString::parse(js.at("m").get<std::string>(), p.b);
            prog.push_add(m.value());
        } else if (op == "s") {
            prog.push_apply();
        } else {
            throw std::invalid_argument("unknown step op: " + op);
        }
    }
    return prog;
}

GoodWitness good_witness_from_json(const Json& j) {
    GoodWitness w;
    w.program = step_program_from_json(j.at("program"));
    w.u = j.at("u").get<Nat>();
    w.domain = j.at("domain").get<std::vector<Nat>>();
    w.verified = !w.domain.empty() &&
                 std::all_of(w.domain.begin(), w.domain.end(),
                             [&](Nat t) { return w.program.apply(t) == w.u; });
    return w;
}

}  // namespace aghf
