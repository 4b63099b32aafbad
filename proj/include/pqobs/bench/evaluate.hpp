// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pqobs/bench/catalog.hpp"
#include "pqobs/engine/closure.hpp"
#include "pqobs/engine/measurement.hpp"

namespace pqobs::bench {

struct FieldScore {
    std::string path;
    json expected;
    json actual;  // null when the path is absent
    bool match = false;
};

struct ExactScore {
    std::string scenario_id;
    engine::Mode mode = engine::Mode::B1_passive_only;
    std::vector<FieldScore> fields;
    std::size_t matched = 0;
    engine::PlaneClosure closure;
};

// Field match means equal state and, for known values, equal value; unknown,
// ambiguous and not_applicable never match each other.
ExactScore evaluate_exact(const engine::MeasurementObject& result, const json& truth,
                          const engine::ClosureRules& rules = engine::default_closure_rules());

struct AssertionOutcome {
    Assertion assertion;
    bool passed = false;
    std::string reason;  // empty when passed; missing_path when the path is absent
};

struct ContractScore {
    std::string scenario_id;
    engine::Mode mode = engine::Mode::B1_passive_only;
    std::size_t matched = 0;
    std::size_t total = 0;  // assertions that apply to the mode
    std::vector<AssertionOutcome> failures;

    double match() const { return total == 0 ? 1.0 : double(matched) / double(total); }
};

ContractScore evaluate_contract(const engine::MeasurementObject& result, const Contract& contract,
                                const engine::ClosureRules& rules = engine::default_closure_rules());

json to_json(const ExactScore& s);
json to_json(const ContractScore& s);

}  // namespace pqobs::bench
