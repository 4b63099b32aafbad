// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqobs/common/bytes.hpp"
#include "pqobs/common/evidence.hpp"
#include "pqobs/common/timefmt.hpp"
#include "pqobs/registry/registry.hpp"
#include "pqobs/surfaces/types.hpp"

namespace pqobs::surfaces {

struct LeafObservation {
    EvidenceValue spki_algorithm;       // canonical SPKI name
    EvidenceValue signature_algorithm;  // canonical signature name
    std::optional<EpochSeconds> not_before;
    std::optional<EpochSeconds> not_after;
    std::optional<std::int64_t> validity_days;
    std::string fingerprint;  // SHA-256 of the leaf DER, present even when unparseable

    bool operator==(const LeafObservation&) const = default;
};

struct ChainObservation {
    ChainSource source = ChainSource::scenario_artifact;
    double retrieval_timestamp = 0.0;
    LeafObservation leaf;
    std::size_t chain_depth = 0;
    Linkage linkage = Linkage::unlinked;
    std::string artifact_id;
    std::vector<Bytes> chain;

    bool operator==(const ChainObservation&) const = default;
};

// floor((not_after - not_before) / 86400)
std::int64_t validity_days(EpochSeconds not_before, EpochSeconds not_after);

// Leaf first. passive_tls12 chains are always same_run_linked whatever the
// hint. An undecodable leaf yields unknown leaf fields with reason
// parse_failure. Throws pqobs::Error(invalid_chain) for an empty chain.
ChainObservation parse_chain_observation(const std::vector<Bytes>& chain, ChainSource source,
                                         double retrieval_timestamp, Linkage linkage_hint,
                                         const registry::Bundle& reg, std::string artifact_id = {});

nlohmann::json to_json(const ChainObservation& c);
ChainObservation chain_observation_from_json(const nlohmann::json& j);

}  // namespace pqobs::surfaces
