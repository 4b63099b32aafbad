// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

namespace pqobs::surfaces {

enum class Surface { passive, active, chain };

// "SigmaP" / "SigmaA" / "SigmaC", the labels used in surface_origins.
std::string_view to_string(Surface s);
Surface surface_from_string(std::string_view s);

// How strongly an active or chain observation binds to the captured session.
enum class Linkage { same_run_linked, same_target_probe_time, unlinked };

std::string_view to_string(Linkage l);
Linkage linkage_from_string(std::string_view s);

enum class ChainSource { passive_tls12, active_probe, scenario_artifact };

std::string_view to_string(ChainSource s);
ChainSource chain_source_from_string(std::string_view s);

inline constexpr std::string_view parser_version = "pqobs-wire/1.0";

}  // namespace pqobs::surfaces
