#pragma once

#include <string>

#include "json.hpp"

#include "aghf/core.hpp"
#include "aghf/cycle_witness.hpp"
#include "aghf/dynamics.hpp"
#include "aghf/witness.hpp"

namespace aghf {

using Json = nlohmann::json;

// Serialization used by the command-line tool.  Numeric values are plain
// JSON numbers; step amounts and normalized shifts are base-b digit strings
// (they can be far longer than 64 bits).

Json to_json(const Params& p);
Json to_json(const Cycle& cyc);
Json to_json(const CycleSet& cs);
Json to_json(const RunReport& rr);
Json to_json(const StepProgram& prog);
Json to_json(const GoodWitness& w);
Json to_json(const GoodWitness& w, const NormalizeResult& nf);
Json to_json(const CycleGoodWitness& w);
Json to_json(const TableReport& rep);

// Inverse of to_json(StepProgram): reads the parameters and replays each
// step description.
StepProgram step_program_from_json(const Json& j);

// Reads a witness envelope and re-verifies it by replay; the stored
// "verified" flag is ignored in favor of the recomputation.
GoodWitness good_witness_from_json(const Json& j);

}  // namespace aghf
