// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pqobs/campaign/round.hpp"

namespace pqobs::campaign {

struct DriftCounts {
    std::size_t capability = 0;
    std::size_t certificate = 0;
    std::size_t lifecycle = 0;
    std::size_t signature_algorithm = 0;
    std::size_t clear_complete_kept = 0;

    bool operator==(const DriftCounts&) const = default;
};

struct DriftReport {
    std::string round_a;
    std::string round_b;
    std::size_t comparable_targets = 0;
    double capability_drift_pct = 0.0;
    double certificate_drift_pct = 0.0;
    double lifecycle_drift_pct = 0.0;
    double signature_algorithm_drift_pct = 0.0;
    double clear_complete_stability_pct = 0.0;
    DriftCounts counts;
    std::vector<std::string> comparable_ids;

    bool operator==(const DriftReport&) const = default;
};

json to_json(const DriftReport& d);
DriftReport drift_report_from_json(const json& j);

// A target is comparable when both rounds hold a record for it with active
// and chain evidence. A dimension drifts when its known value differs;
// unknown on either side is excluded. Dimensions: capability lower bound,
// leaf certificate fingerprint, short-lived bucket, leaf signature algorithm.
// Throws pqobs::Error(comparison_error) for disjoint rounds, duplicate
// targets, or no comparable target.
DriftReport compare_rounds(const std::vector<TargetResult>& a, const std::vector<TargetResult>& b);

}  // namespace pqobs::campaign
