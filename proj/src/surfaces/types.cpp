// SPDX-License-Identifier: Apache-2.0
#include "pqobs/surfaces/types.hpp"

#include <string>

#include "pqobs/common/error.hpp"

namespace pqobs::surfaces {

std::string_view to_string(Surface s)
{
    switch (s) {
    case Surface::passive: return "SigmaP";
    case Surface::active: return "SigmaA";
    case Surface::chain: return "SigmaC";
    }
    return "?";
}

Surface surface_from_string(std::string_view s)
{
    if (s == "SigmaP") return Surface::passive;
    if (s == "SigmaA") return Surface::active;
    if (s == "SigmaC") return Surface::chain;
    throw Error("schema_violation", "unknown surface '" + std::string(s) + "'");
}

std::string_view to_string(Linkage l)
{
    switch (l) {
    case Linkage::same_run_linked: return "same_run_linked";
    case Linkage::same_target_probe_time: return "same_target_probe_time";
    case Linkage::unlinked: return "unlinked";
    }
    return "?";
}

Linkage linkage_from_string(std::string_view s)
{
    if (s == "same_run_linked") return Linkage::same_run_linked;
    if (s == "same_target_probe_time") return Linkage::same_target_probe_time;
    if (s == "unlinked") return Linkage::unlinked;
    throw Error("schema_violation", "unknown linkage '" + std::string(s) + "'");
}

std::string_view to_string(ChainSource s)
{
    switch (s) {
    case ChainSource::passive_tls12: return "passive_tls12";
    case ChainSource::active_probe: return "active_probe";
    case ChainSource::scenario_artifact: return "scenario_artifact";
    }
    return "?";
}

ChainSource chain_source_from_string(std::string_view s)
{
    if (s == "passive_tls12") return ChainSource::passive_tls12;
    if (s == "active_probe") return ChainSource::active_probe;
    if (s == "scenario_artifact") return ChainSource::scenario_artifact;
    throw Error("schema_violation", "unknown chain source '" + std::string(s) + "'");
}

}  // namespace pqobs::surfaces
