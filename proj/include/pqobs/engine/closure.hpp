// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include <json.hpp>

#include "pqobs/engine/measurement.hpp"
#include "pqobs/engine/rules.hpp"

namespace pqobs::engine {

struct PlaneClosure {
    std::array<bool, 7> closed{};
    bool object_complete = false;
    bool object_complete_clear = false;

    bool is_closed(Plane p) const { return closed[static_cast<std::size_t>(p)]; }
    std::vector<Plane> closed_planes() const;
    bool operator==(const PlaneClosure&) const = default;
};

// A plane is closed when every required field is known or justified
// not_applicable (and, if the rules say so, no contradiction names one of
// those fields). Complete is the conjunction over all seven planes; clear
// additionally needs zero contradiction records.
PlaneClosure compute_plane_closure(const MeasurementObject& m, const ClosureRules& rules = default_closure_rules());

nlohmann::json to_json(const PlaneClosure& c);

}  // namespace pqobs::engine
