// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqobs/bench/generate.hpp"
#include "pqobs/bench/runner.hpp"
#include "pqobs/engine/closure.hpp"

namespace pqobs::bench {

struct Fraction {
    std::size_t num = 0;
    std::size_t den = 0;

    double value() const { return den == 0 ? 0.0 : double(num) / double(den); }
    bool operator==(const Fraction&) const = default;
};

json to_json(const Fraction& f);
Fraction fraction_from_json(const json& j);

struct ModeMetrics {
    engine::Mode mode = engine::Mode::B1_passive_only;
    std::array<Fraction, 7> plane_closure{};
    Fraction ambiguity;            // >= 1 unresolved field
    Fraction contradiction;        // >= 1 contradiction record
    Fraction capability_broader;   // known(true)
    Fraction object_complete;
    Fraction object_complete_clear;
    Fraction exact_field_match;    // canonical scenarios, pooled fields
    Fraction contract_match;       // stress scenarios, pooled applicable assertions
    Fraction contract_coverage;    // stress scenarios with >= 1 applicable assertion
    double primary_score = 0.0;

    const Fraction& closure(engine::Plane p) const { return plane_closure[static_cast<std::size_t>(p)]; }
    bool operator==(const ModeMetrics&) const = default;
};

// Primary score: weighted mean of the plane-closure fractions.
struct MetricsConfig {
    std::array<double, 7> plane_weights{1, 1, 1, 1, 1, 1, 1};
};

struct SuiteMetrics {
    std::string suite;  // canonical / stress / all
    std::vector<std::string> scenario_ids;
    std::array<double, 7> plane_weights{};
    std::vector<ModeMetrics> modes;

    const ModeMetrics& for_mode(engine::Mode m) const;
    bool operator==(const SuiteMetrics&) const = default;
};

json to_json(const SuiteMetrics& m);
// Schema-validated.
SuiteMetrics suite_metrics_from_json(const json& j);

// Denominators are the bundle count. Throws pqobs::Error(metrics_error)
// listing every scenario without a result in some mode.
SuiteMetrics compute_suite_metrics(const std::string& suite, const std::vector<ScenarioBundle>& bundles,
                                   const SuiteResults& results, const MetricsConfig& cfg = {},
                                   const engine::ClosureRules& rules = engine::default_closure_rules());

std::vector<ScenarioBundle> select_family(const std::vector<ScenarioBundle>& bundles, Family f);

}  // namespace pqobs::bench
