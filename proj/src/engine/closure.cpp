// SPDX-License-Identifier: Apache-2.0
#include "pqobs/engine/closure.hpp"

#include <algorithm>

namespace pqobs::engine {

using nlohmann::json;

namespace {

bool any_known(const json& object, const std::vector<std::string>& paths)
{
    return std::any_of(paths.begin(), paths.end(), [&](const auto& p) {
        const json* node = lookup_path(object, p);
        return node != nullptr && node->is_object() && node->value("state", "") == "known";
    });
}

}  // namespace

std::vector<Plane> PlaneClosure::closed_planes() const
{
    std::vector<Plane> out;
    for (auto p : all_planes) {
        if (is_closed(p)) {
            out.push_back(p);
        }
    }
    return out;
}

PlaneClosure compute_plane_closure(const MeasurementObject& m, const ClosureRules& rules)
{
    const json object = to_json(m);
    PlaneClosure c;
    for (auto plane : all_planes) {
        const auto& required = rules.required_fields.at(plane);
        bool closed = std::all_of(required.begin(), required.end(), [&](const auto& path) {
            const json* node = lookup_path(object, path);
            return node != nullptr && path_resolved(*node);
        });
        if (closed && rules.contradiction_blocks_closure) {
            for (const auto& r : m.observability.contradiction_records) {
                if (std::find(required.begin(), required.end(), r.field) != required.end()) {
                    closed = false;
                }
            }
        }
        if (closed && plane == Plane::observability && rules.observability_requires_linkage) {
            for (auto other : all_planes) {
                if (other == Plane::observability) {
                    continue;
                }
                if (any_known(object, rules.required_fields.at(other)) &&
                    !m.observability.plane_linkage.count(std::string(to_string(other)))) {
                    closed = false;
                }
            }
        }
        c.closed[static_cast<std::size_t>(plane)] = closed;
    }
    c.object_complete = std::all_of(c.closed.begin(), c.closed.end(), [](bool b) { return b; });
    c.object_complete_clear = c.object_complete && !m.observability.contradiction_flag();
    return c;
}

json to_json(const PlaneClosure& c)
{
    json planes = json::object();
    for (auto p : all_planes) {
        planes[std::string(to_string(p))] = c.is_closed(p);
    }
    return {{"planes", planes}, {"object_complete", c.object_complete},
            {"object_complete_clear", c.object_complete_clear}};
}

}  // namespace pqobs::engine
