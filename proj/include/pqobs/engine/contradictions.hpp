// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "pqobs/common/evidence.hpp"
#include "pqobs/engine/measurement.hpp"

namespace pqobs::engine {

// One surface's claim about a measurement field.
struct FieldAssertion {
    std::string field;  // measurement path
    EvidenceValue value;
    std::string source;
    double timestamp = 0.0;
};

// One record per field for the first pair (in input order) of known values
// that differ. Unknown, ambiguous and not_applicable assertions never
// contradict anything. Records are sorted by field.
std::vector<ContradictionRecord> detect_contradictions(const std::vector<FieldAssertion>& assertions);

}  // namespace pqobs::engine
