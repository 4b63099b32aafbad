// SPDX-License-Identifier: Apache-2.0
#include "pqobs/campaign/drift.hpp"

#include <algorithm>
#include <map>

#include "pqobs/common/error.hpp"
#include "pqobs/common/schema.hpp"
#include "pqobs/engine/closure.hpp"

namespace pqobs::campaign {

namespace {

std::map<std::string, const TargetResult*> index(const std::vector<TargetResult>& rs, const char* which)
{
    std::map<std::string, const TargetResult*> out;
    for (const auto& r : rs) {
        if (!out.emplace(r.record.target_id, &r).second) {
            throw Error("comparison_error", std::string("round ") + which + " lists " + r.record.target_id + " twice");
        }
    }
    return out;
}

bool multi_surface(const TargetResult& r)
{
    const auto& o = r.measurement.observability.surface_origins;
    auto has = [&](surfaces::Surface s) {
        return std::find(o.begin(), o.end(), std::string(surfaces::to_string(s))) != o.end();
    };
    return has(surfaces::Surface::active) && has(surfaces::Surface::chain);
}

// Drifted only when both sides are known and differ.
bool drifted(const EvidenceValue& a, const EvidenceValue& b)
{
    return a.is_known() && b.is_known() && a.value != b.value;
}

std::string round_name(const std::vector<TargetResult>& rs)
{
    return rs.empty() ? std::string() : rs.front().round_id;
}

double pct(std::size_t k, std::size_t n)
{
    return 100.0 * static_cast<double>(k) / static_cast<double>(n);
}

}  // namespace

json to_json(const DriftReport& d)
{
    return {{"round_a", d.round_a},
            {"round_b", d.round_b},
            {"comparable_targets", d.comparable_targets},
            {"capability_drift_pct", d.capability_drift_pct},
            {"certificate_drift_pct", d.certificate_drift_pct},
            {"lifecycle_drift_pct", d.lifecycle_drift_pct},
            {"signature_algorithm_drift_pct", d.signature_algorithm_drift_pct},
            {"clear_complete_stability_pct", d.clear_complete_stability_pct},
            {"counts",
             {{"capability", d.counts.capability},
              {"certificate", d.counts.certificate},
              {"lifecycle", d.counts.lifecycle},
              {"signature_algorithm", d.counts.signature_algorithm},
              {"clear_complete_kept", d.counts.clear_complete_kept}}},
            {"comparable_ids", d.comparable_ids}};
}

DriftReport drift_report_from_json(const json& j)
{
    validate_or_throw("drift_report", j, "drift report");
    DriftReport d;
    d.round_a = j.at("round_a").get<std::string>();
    d.round_b = j.at("round_b").get<std::string>();
    d.comparable_targets = j.at("comparable_targets").get<std::size_t>();
    d.capability_drift_pct = j.at("capability_drift_pct").get<double>();
    d.certificate_drift_pct = j.at("certificate_drift_pct").get<double>();
    d.lifecycle_drift_pct = j.at("lifecycle_drift_pct").get<double>();
    d.signature_algorithm_drift_pct = j.at("signature_algorithm_drift_pct").get<double>();
    d.clear_complete_stability_pct = j.at("clear_complete_stability_pct").get<double>();
    const auto& c = j.at("counts");
    d.counts.capability = c.at("capability").get<std::size_t>();
    d.counts.certificate = c.at("certificate").get<std::size_t>();
    d.counts.lifecycle = c.at("lifecycle").get<std::size_t>();
    d.counts.signature_algorithm = c.at("signature_algorithm").get<std::size_t>();
    d.counts.clear_complete_kept = c.at("clear_complete_kept").get<std::size_t>();
    d.comparable_ids = j.at("comparable_ids").get<std::vector<std::string>>();
    return d;
}

DriftReport compare_rounds(const std::vector<TargetResult>& a, const std::vector<TargetResult>& b)
{
    auto ia = index(a, "a");
    auto ib = index(b, "b");
    bool overlap = std::any_of(ia.begin(), ia.end(), [&](const auto& kv) { return ib.count(kv.first) > 0; });
    if (!overlap) {
        throw Error("comparison_error", "rounds share no target");
    }

    DriftReport d;
    d.round_a = round_name(a);
    d.round_b = round_name(b);
    for (const auto& [id, ra] : ia) {
        auto it = ib.find(id);
        if (it == ib.end() || !multi_surface(*ra) || !multi_surface(*it->second)) {
            continue;
        }
        const auto& ma = ra->measurement;
        const auto& mb = it->second->measurement;
        d.comparable_ids.push_back(id);
        d.counts.capability += drifted(ma.capability.supported_groups_lower_bound,
                                       mb.capability.supported_groups_lower_bound);
        if (ra->chain && it->second->chain) {
            d.counts.certificate += ra->chain->leaf.fingerprint != it->second->chain->leaf.fingerprint;
        }
        d.counts.lifecycle += drifted(ma.lifecycle.short_lived_bucket, mb.lifecycle.short_lived_bucket);
        d.counts.signature_algorithm += drifted(ma.authentication.leaf_signature_algorithm,
                                                mb.authentication.leaf_signature_algorithm);
        d.counts.clear_complete_kept += engine::compute_plane_closure(ma).object_complete_clear ==
                                        engine::compute_plane_closure(mb).object_complete_clear;
    }
    d.comparable_targets = d.comparable_ids.size();
    if (d.comparable_targets == 0) {
        throw Error("comparison_error", "no target has multi-surface records in both rounds");
    }
    auto n = d.comparable_targets;
    d.capability_drift_pct = pct(d.counts.capability, n);
    d.certificate_drift_pct = pct(d.counts.certificate, n);
    d.lifecycle_drift_pct = pct(d.counts.lifecycle, n);
    d.signature_algorithm_drift_pct = pct(d.counts.signature_algorithm, n);
    d.clear_complete_stability_pct = pct(d.counts.clear_complete_kept, n);
    return d;
}

}  // namespace pqobs::campaign
