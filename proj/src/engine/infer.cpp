// SPDX-License-Identifier: Apache-2.0
#include "pqobs/engine/infer.hpp"

#include <algorithm>

#include "pqobs/common/error.hpp"
#include "pqobs/engine/contradictions.hpp"
#include "pqobs/wire/transcript.hpp"

namespace pqobs::engine {

using surfaces::ChainObservation;
using surfaces::ChainSource;
using surfaces::Linkage;

namespace {

constexpr const char* passive_label = "passive";
constexpr const char* active_label = "active";

std::string first_reason(const EvidenceValue& ev)
{
    return ev.reasons.empty() ? std::string(to_string(ev.state)) : ev.reasons.front();
}

const registry::Entry* group_entry(const registry::Bundle& reg, const EvidenceValue& group)
{
    if (!group.is_known() || !group.value.is_string()) {
        return nullptr;
    }
    return reg.find_name(registry::Kind::named_group, group.value.get<std::string>());
}

std::vector<std::string> entry_components(const registry::Entry& e)
{
    return e.components.empty() ? std::vector<std::string>{e.canonical_name} : e.components;
}

double passive_time(const surfaces::PassiveObservation& p)
{
    return p.provenance.capture_timestamps.empty() ? 0.0 : p.provenance.capture_timestamps.front();
}

class Inference {
public:
    Inference(Mode mode, const InferenceInput& in, const registry::Bundle& reg, const InferenceRules& rules)
        : mode_(mode), in_(in), reg_(reg), rules_(rules), inputs_(rules.for_mode(mode))
    {
    }

    MeasurementObject run()
    {
        admit_inputs();
        m_.scenario_id = in_.scenario_id;
        m_.mode = mode_;
        m_.session.fresh_authentication = EvidenceValue::unknown("no_passive_observation");
        session();
        hidden_detail();
        key_establishment();
        capability();
        authentication_and_lifecycle();
        observability();
        return std::move(m_);
    }

private:
    bool fire(const char* id)
    {
        if (!rules_.enabled(id, mode_)) {
            return false;
        }
        m_.inference_trace.emplace_back(id);
        return true;
    }

    void admit_inputs()
    {
        if (in_.active && !inputs_.accepts_active) {
            throw Error("configuration_error",
                        "mode " + std::string(short_name(mode_)) + " does not accept active probe evidence");
        }
        for (const auto& c : in_.chains) {
            if (!inputs_.accepts_chain(c.source)) {
                throw Error("configuration_error", "mode " + std::string(short_name(mode_)) +
                                                       " does not accept " + std::string(to_string(c.source)) +
                                                       " chain evidence");
            }
        }
        chains_ = in_.chains;
        bool has_passive_chain = std::any_of(chains_.begin(), chains_.end(),
                                             [](const auto& c) { return c.source == ChainSource::passive_tls12; });
        if (!has_passive_chain && in_.passive && in_.passive->tls12_chain && !in_.passive->tls12_chain->empty()) {
            chains_.push_back(surfaces::parse_chain_observation(*in_.passive->tls12_chain, ChainSource::passive_tls12,
                                                                passive_time(*in_.passive), Linkage::same_run_linked,
                                                                reg_, in_.passive->provenance.artifact_id));
        }
        std::stable_sort(chains_.begin(), chains_.end(), [](const auto& a, const auto& b) {
            return a.retrieval_timestamp < b.retrieval_timestamp;
        });
    }

    void session()
    {
        auto& s = m_.session;
        if (!in_.passive) {
            for (auto* f : {&s.negotiated_version, &s.selected_group, &s.cipher_suite, &s.hrr_seen, &s.completeness,
                            &s.mtls_seen}) {
                *f = EvidenceValue::unknown("no_passive_observation");
            }
            return;
        }
        if (!fire("S1.session_from_passive")) {
            return;
        }
        const auto& p = *in_.passive;
        s.negotiated_version = p.negotiated_version;
        s.selected_group = p.selected_group;
        s.cipher_suite = p.cipher_suite;
        s.hrr_seen = p.hrr_seen;
        s.completeness = EvidenceValue::known(std::string(wire::to_string(p.completeness_status)),
                                              {"transcript_decoder"});
        s.fresh_authentication = p.fresh_authentication;
        m_.observability.plane_linkage[std::string(to_string(Plane::session_core))] = passive_label;
    }

    std::vector<const surfaces::ProbeResult*> linked_probes() const
    {
        std::vector<const surfaces::ProbeResult*> out;
        if (in_.active) {
            for (const auto& r : in_.active->probes) {
                if (r.linkage == Linkage::same_run_linked) {
                    out.push_back(&r);
                }
            }
            std::stable_sort(out.begin(), out.end(),
                             [](const auto* a, const auto* b) { return a->timestamp < b->timestamp; });
        }
        return out;
    }

    void hidden_detail()
    {
        auto& mtls = m_.session.mtls_seen;
        auto plane = std::string(to_string(Plane::session_hidden_detail));
        if (in_.passive && fire("S2.hidden_detail_from_passive")) {
            mtls = in_.passive->mtls_seen;
            if (mtls.is_known()) {
                m_.observability.plane_linkage[plane] = passive_label;
            }
        }
        if (mtls.resolved() || !in_.active || !rules_.enabled("S3.hidden_detail_from_linked_probe", mode_)) {
            return;
        }
        for (const auto* r : linked_probes()) {
            if (r->outcome.server_requested_client_auth) {
                fire("S3.hidden_detail_from_linked_probe");
                mtls = EvidenceValue::known(*r->outcome.server_requested_client_auth, {"same_run_linked_probe"});
                m_.observability.plane_linkage[plane] = active_label;
                return;
            }
        }
        if (!mtls.is_known()) {
            mtls.reasons.push_back("no_linked_active_evidence");
        }
    }

    void key_establishment()
    {
        auto& k = m_.key_establishment;
        const auto& group = m_.session.selected_group;
        auto from_entry = [&](const registry::Entry& e, const std::string& why) {
            k.profile = EvidenceValue::known(std::string(registry::to_string(e.family)), {why});
            k.components = entry_components(e);
            k.applicability_state = "applicable";
            m_.observability.plane_linkage[std::string(to_string(Plane::key_establishment))] = passive_label;
        };
        if (const auto* e = group_entry(reg_, group)) {
            if (fire("K1.family_from_registry")) {
                from_entry(*e, "registry_family");
                return;
            }
        }
        if (group.is_not_applicable() && fire("K3.not_applicable_propagation")) {
            k.profile = EvidenceValue::not_applicable(first_reason(group));
            k.applicability_state = "not_applicable";
            return;
        }
        if (in_.passive && group.has_reason("hrr_second_leg_missing")) {
            if (const auto* e = group_entry(reg_, in_.passive->hrr_requested_group)) {
                if (fire("K2.hrr_committed_group")) {
                    from_entry(*e, "hrr_committed_group");
                    return;
                }
            }
        }
        k.profile = group.is_known() ? EvidenceValue::unknown("unregistered_group")
                                     : EvidenceValue::unknown(first_reason(group));
        k.applicability_state = "unresolved";
    }

    void capability()
    {
        auto& c = m_.capability;
        if (!in_.active) {
            c.supported_groups_lower_bound = EvidenceValue::unknown("no_active_evidence");
            c.capability_broader_than_session = EvidenceValue::unknown("no_active_evidence");
            return;
        }
        const auto& summary = in_.active->summary;
        if (fire("C1.capability_lower_bound")) {
            c.probe_profiles = summary.probe_profiles;
            if (summary.decisive) {
                c.supported_groups_lower_bound = EvidenceValue::known(summary.confirmed_groups, {"decisive_probe"});
                m_.observability.plane_linkage[std::string(to_string(Plane::capability))] = active_label;
            } else {
                c.supported_groups_lower_bound = EvidenceValue::unknown("no_decisive_probe");
            }
        }
        if (fire("C2.capability_broader_than_session")) {
            c.capability_broader_than_session = broader_than_session();
        }
    }

    EvidenceValue broader_than_session() const
    {
        std::vector<surfaces::ProbeResult> linked;
        for (const auto* r : linked_probes()) {
            linked.push_back(*r);
        }
        if (linked.empty()) {
            return EvidenceValue::unknown("capability_not_linked");
        }
        auto s = surfaces::aggregate_capability(linked, reg_);
        if (!s.decisive) {
            return EvidenceValue::unknown("no_decisive_linked_probe");
        }
        if (!surfaces::confirms_family(s, reg_, registry::Family::hybrid)) {
            return EvidenceValue::known(false, {"no_hybrid_confirmed"});
        }
        const auto& group = m_.session.selected_group;
        if (const auto* e = group_entry(reg_, group)) {
            if (e->family == registry::Family::classical) {
                return EvidenceValue::known(true, {"hybrid_confirmed_classical_session"});
            }
            return EvidenceValue::known(false, {"session_not_classical"});
        }
        if (group.is_not_applicable()) {
            return EvidenceValue::not_applicable(first_reason(group));
        }
        return EvidenceValue::unknown("session_group_unresolved");
    }

    const ChainObservation* value_chain() const
    {
        for (auto src : inputs_.value_chain_sources) {
            for (const auto& c : chains_) {
                if (c.source == src) {
                    return &c;
                }
            }
        }
        return nullptr;
    }

    std::string missing_chain_reason() const
    {
        if (in_.passive && in_.passive->negotiated_version.is_known() &&
            in_.passive->negotiated_version.value == "TLS1.3") {
            return "certificate_encrypted_in_tls13";
        }
        return "no_chain_evidence";
    }

    void authentication_and_lifecycle()
    {
        auto& a = m_.authentication;
        auto& l = m_.lifecycle;
        const auto* chain = value_chain();
        if (chain == nullptr || !fire("A1.authentication_from_chain")) {
            auto why = missing_chain_reason();
            for (auto* f : {&a.leaf_spki_algorithm, &a.leaf_signature_algorithm, &a.chain_depth,
                            &a.chain_source_type, &l.validity_days, &l.short_lived_bucket}) {
                *f = EvidenceValue::unknown(why);
            }
            return;
        }
        auto label = chain_source_label(chain->source);
        a.leaf_spki_algorithm = chain->leaf.spki_algorithm;
        a.leaf_signature_algorithm = chain->leaf.signature_algorithm;
        a.chain_depth = EvidenceValue::known(chain->chain_depth, {label});
        a.chain_source_type = EvidenceValue::known(std::string(to_string(chain->source)), {label});
        m_.observability.plane_linkage[std::string(to_string(Plane::authentication))] = label;

        if (!fire("L1.lifecycle_from_chain")) {
            return;
        }
        if (chain->leaf.validity_days) {
            auto days = *chain->leaf.validity_days;
            l.validity_days = EvidenceValue::known(days, {label});
            l.short_lived_bucket = EvidenceValue::known(
                days <= rules_.short_lived_max_days, {"short_lived_max_days=" + std::to_string(rules_.short_lived_max_days)});
            m_.observability.plane_linkage[std::string(to_string(Plane::lifecycle))] = label;
        } else {
            l.validity_days = EvidenceValue::unknown("parse_failure");
            l.short_lived_bucket = EvidenceValue::unknown("parse_failure");
        }
    }

    std::vector<FieldAssertion> assertions() const
    {
        std::vector<FieldAssertion> out;
        if (in_.passive) {
            const auto& p = *in_.passive;
            double t = passive_time(p);
            out.push_back({"session_profile.selected_group", p.selected_group, passive_label, t});
            out.push_back({"session_profile.mtls_seen", p.mtls_seen, passive_label, t});
        }
        if (in_.active) {
            for (const auto& r : in_.active->probes) {
                // A probe only speaks for the session's group when it made the same offer.
                if (in_.passive && r.negotiated() && r.outcome.group && !r.offered_groups.empty() &&
                    r.offered_groups == in_.passive->offered_groups) {
                    out.push_back({"session_profile.selected_group", EvidenceValue::known(*r.outcome.group),
                                   active_label, r.timestamp});
                }
                if (r.linkage == Linkage::same_run_linked && r.outcome.server_requested_client_auth) {
                    out.push_back({"session_profile.mtls_seen",
                                   EvidenceValue::known(*r.outcome.server_requested_client_auth), active_label,
                                   r.timestamp});
                }
            }
        }
        for (const auto& c : chains_) {
            auto label = chain_source_label(c.source);
            double t = c.retrieval_timestamp;
            out.push_back({"authentication_profile.leaf_spki_algorithm", c.leaf.spki_algorithm, label, t});
            out.push_back({"authentication_profile.leaf_signature_algorithm", c.leaf.signature_algorithm, label, t});
            out.push_back({"authentication_profile.chain_depth", EvidenceValue::known(c.chain_depth), label, t});
            if (c.leaf.validity_days) {
                auto days = *c.leaf.validity_days;
                out.push_back({"lifecycle_profile.validity_days", EvidenceValue::known(days), label, t});
                out.push_back({"lifecycle_profile.short_lived_bucket",
                               EvidenceValue::known(days <= rules_.short_lived_max_days), label, t});
            }
        }
        return out;
    }

    void observability()
    {
        auto& o = m_.observability;
        if (fire("O1.surface_linkage")) {
            bool chain_surface = std::any_of(chains_.begin(), chains_.end(),
                                             [](const auto& c) { return c.source != ChainSource::passive_tls12; });
            if (in_.passive) {
                o.surface_origins.push_back(std::string(to_string(surfaces::Surface::passive)));
            }
            if (in_.active) {
                o.surface_origins.push_back(std::string(to_string(surfaces::Surface::active)));
            }
            if (chain_surface) {
                o.surface_origins.push_back(std::string(to_string(surfaces::Surface::chain)));
            }
        }
        if (fire("O2.cross_surface_contradictions")) {
            o.contradiction_records = detect_contradictions(assertions());
        }
        if (fire("O3.ambiguity_reasons")) {
            auto note = [&o](const char* path, const EvidenceValue& ev) {
                if (!ev.resolved()) {
                    o.ambiguity_reasons.push_back(std::string(path) + ": " + first_reason(ev));
                }
            };
            const auto& s = m_.session;
            note("session_profile.negotiated_tls_version", s.negotiated_version);
            note("session_profile.selected_group", s.selected_group);
            note("session_profile.cipher_suite", s.cipher_suite);
            note("session_profile.hrr_seen", s.hrr_seen);
            note("session_profile.completeness_status", s.completeness);
            note("session_profile.mtls_seen", s.mtls_seen);
            note("session_profile.fresh_authentication", s.fresh_authentication);
            note("key_establishment_profile.profile", m_.key_establishment.profile);
            note("capability_profile.supported_groups_lower_bound", m_.capability.supported_groups_lower_bound);
            note("capability_profile.capability_broader_than_session", m_.capability.capability_broader_than_session);
            note("authentication_profile.leaf_spki_algorithm", m_.authentication.leaf_spki_algorithm);
            note("authentication_profile.leaf_signature_algorithm", m_.authentication.leaf_signature_algorithm);
            note("authentication_profile.chain_depth", m_.authentication.chain_depth);
            note("authentication_profile.chain_source_type", m_.authentication.chain_source_type);
            note("lifecycle_profile.validity_days", m_.lifecycle.validity_days);
            note("lifecycle_profile.short_lived_bucket", m_.lifecycle.short_lived_bucket);
            // Two surfaces disagreeing on a field leave it with competing values.
            for (const auto& r : o.contradiction_records) {
                auto prefix = r.field + ": ";
                bool listed = std::any_of(o.ambiguity_reasons.begin(), o.ambiguity_reasons.end(),
                                          [&](const std::string& reason) { return reason.rfind(prefix, 0) == 0; });
                if (!listed) {
                    o.ambiguity_reasons.push_back(prefix + "contradicted (" + r.a.source + " vs " + r.b.source + ")");
                }
            }
        }
    }

    Mode mode_;
    const InferenceInput& in_;
    const registry::Bundle& reg_;
    const InferenceRules& rules_;
    const ModeInputs& inputs_;
    std::vector<ChainObservation> chains_;
    MeasurementObject m_;
};

}  // namespace

ActiveObservations make_active_observations(std::vector<surfaces::ProbeResult> probes, const registry::Bundle& reg)
{
    ActiveObservations a;
    a.summary = surfaces::aggregate_capability(probes, reg);
    a.probes = std::move(probes);
    return a;
}

MeasurementObject infer_measurement(Mode mode, const InferenceInput& input, const registry::Bundle& reg,
                                    const InferenceRules& rules)
{
    return Inference(mode, input, reg, rules).run();
}

std::string chain_source_label(ChainSource s)
{
    switch (s) {
    case ChainSource::passive_tls12:
        return "passive_chain";
    case ChainSource::active_probe:
        return "active_chain";
    case ChainSource::scenario_artifact:
        return "artifact_chain";
    }
    return "artifact_chain";
}

std::string surface_of_label(const std::string& label)
{
    if (label == "passive" || label == "passive_chain") {
        return std::string(to_string(surfaces::Surface::passive));
    }
    if (label == "active") {
        return std::string(to_string(surfaces::Surface::active));
    }
    return std::string(to_string(surfaces::Surface::chain));
}

}  // namespace pqobs::engine
