// SPDX-License-Identifier: Apache-2.0
#include "pqobs/surfaces/chain.hpp"

#include "pqobs/common/error.hpp"
#include "pqobs/common/schema.hpp"
#include "pqobs/common/sha256.hpp"
#include "pqobs/surfaces/x509.hpp"

namespace pqobs::surfaces {

using nlohmann::json;

std::int64_t validity_days(EpochSeconds not_before, EpochSeconds not_after)
{
    auto diff = not_after - not_before;
    // floor division, also for a (broken) negative interval
    return diff >= 0 ? diff / 86400 : -((-diff + 86399) / 86400);
}

ChainObservation parse_chain_observation(const std::vector<Bytes>& chain, ChainSource source,
                                         double retrieval_timestamp, Linkage linkage_hint,
                                         const registry::Bundle& reg, std::string artifact_id)
{
    if (chain.empty()) {
        throw Error("invalid_chain", "certificate chain is empty");
    }
    ChainObservation c;
    c.source = source;
    c.retrieval_timestamp = retrieval_timestamp;
    c.linkage = source == ChainSource::passive_tls12 ? Linkage::same_run_linked : linkage_hint;
    c.chain_depth = chain.size();
    c.artifact_id = std::move(artifact_id);
    c.chain = chain;
    c.leaf.fingerprint = sha256_hex(chain.front());

    std::string err;
    auto info = parse_certificate(chain.front(), err);
    if (!info) {
        c.leaf.spki_algorithm = EvidenceValue::unknown("parse_failure");
        c.leaf.signature_algorithm = EvidenceValue::unknown("parse_failure");
        return c;
    }
    c.leaf.spki_algorithm = registry::canonicalize(reg, registry::Kind::spki_oid, registry::RawId(info->spki_oid)).evidence();
    c.leaf.signature_algorithm =
        registry::canonicalize(reg, registry::Kind::signature_oid, registry::RawId(info->signature_oid)).evidence();
    c.leaf.not_before = info->not_before;
    c.leaf.not_after = info->not_after;
    c.leaf.validity_days = validity_days(info->not_before, info->not_after);
    return c;
}

json to_json(const ChainObservation& c)
{
    json chain = json::array();
    for (const auto& cert : c.chain) {
        chain.push_back(to_hex(cert));
    }
    auto opt_time = [](const std::optional<EpochSeconds>& t) { return t ? json(format_iso8601(*t)) : json(nullptr); };
    return {{"surface", std::string(to_string(Surface::chain))},
            {"chain_source_type", std::string(to_string(c.source))},
            {"retrieval_timestamp", c.retrieval_timestamp},
            {"leaf",
             {{"spki_algorithm", c.leaf.spki_algorithm},
              {"signature_algorithm", c.leaf.signature_algorithm},
              {"not_before", opt_time(c.leaf.not_before)},
              {"not_after", opt_time(c.leaf.not_after)},
              {"validity_days", c.leaf.validity_days ? json(*c.leaf.validity_days) : json(nullptr)},
              {"fingerprint", c.leaf.fingerprint}}},
            {"chain_depth", c.chain_depth},
            {"linkage", std::string(to_string(c.linkage))},
            {"artifact_id", c.artifact_id},
            {"chain_hex", chain}};
}

ChainObservation chain_observation_from_json(const json& j)
{
    validate_or_throw("chain_observation", j, "chain observation");
    ChainObservation c;
    c.source = chain_source_from_string(j.at("chain_source_type").get<std::string>());
    c.retrieval_timestamp = j.at("retrieval_timestamp").get<double>();
    c.chain_depth = j.at("chain_depth").get<std::size_t>();
    c.linkage = linkage_from_string(j.at("linkage").get<std::string>());
    c.artifact_id = j.at("artifact_id").get<std::string>();
    for (const auto& h : j.at("chain_hex")) {
        c.chain.push_back(from_hex(h.get<std::string>()));
    }
    const auto& l = j.at("leaf");
    c.leaf.spki_algorithm = l.at("spki_algorithm").get<EvidenceValue>();
    c.leaf.signature_algorithm = l.at("signature_algorithm").get<EvidenceValue>();
    auto time = [&](const char* key) -> std::optional<EpochSeconds> {
        if (l.at(key).is_null()) {
            return std::nullopt;
        }
        auto t = parse_iso8601(l[key].get<std::string>());
        if (!t) {
            throw Error("schema_violation", std::string("leaf.") + key + " is not an ISO-8601 UTC time");
        }
        return t;
    };
    c.leaf.not_before = time("not_before");
    c.leaf.not_after = time("not_after");
    if (!l.at("validity_days").is_null()) {
        c.leaf.validity_days = l["validity_days"].get<std::int64_t>();
    }
    c.leaf.fingerprint = l.at("fingerprint").get<std::string>();
    if (c.source == ChainSource::passive_tls12 && c.linkage != Linkage::same_run_linked) {
        throw Error("schema_violation", "passive_tls12 chains must be same_run_linked");
    }
    if (!c.chain.empty() && c.chain.size() != c.chain_depth) {
        throw Error("schema_violation", "chain_depth does not match chain_hex");
    }
    return c;
}

}  // namespace pqobs::surfaces
