// SPDX-License-Identifier: Apache-2.0
#include "pqobs/bench/metrics.hpp"

#include <algorithm>
#include <map>

#include "pqobs/bench/evaluate.hpp"
#include "pqobs/common/error.hpp"
#include "pqobs/common/schema.hpp"

namespace pqobs::bench {

using engine::Mode;
using engine::Plane;

namespace {

const std::array<std::pair<const char*, Fraction ModeMetrics::*>, 8> rate_fields = {{
    {"ambiguity_rate", &ModeMetrics::ambiguity},
    {"contradiction_rate", &ModeMetrics::contradiction},
    {"capability_broader_rate", &ModeMetrics::capability_broader},
    {"object_completeness", &ModeMetrics::object_complete},
    {"object_complete_clear", &ModeMetrics::object_complete_clear},
    {"exact_field_match", &ModeMetrics::exact_field_match},
    {"contract_match", &ModeMetrics::contract_match},
    {"contract_coverage", &ModeMetrics::contract_coverage},
}};

}  // namespace

json to_json(const Fraction& f)
{
    return {{"num", f.num}, {"den", f.den}, {"value", f.value()}};
}

Fraction fraction_from_json(const json& j)
{
    return {j.at("num").get<std::size_t>(), j.at("den").get<std::size_t>()};
}

const ModeMetrics& SuiteMetrics::for_mode(Mode m) const
{
    for (const auto& mm : modes) {
        if (mm.mode == m) {
            return mm;
        }
    }
    throw Error("metrics_error", "no metrics for mode " + std::string(engine::to_string(m)));
}

json to_json(const SuiteMetrics& m)
{
    json weights = json::object();
    for (auto p : engine::all_planes) {
        weights[std::string(engine::to_string(p))] = m.plane_weights[static_cast<std::size_t>(p)];
    }
    json modes = json::array();
    for (const auto& mm : m.modes) {
        json closure = json::object();
        for (auto p : engine::all_planes) {
            closure[std::string(engine::to_string(p))] = to_json(mm.closure(p));
        }
        json mj = {{"mode", std::string(engine::to_string(mm.mode))},
                   {"plane_closure", closure},
                   {"primary_score", mm.primary_score}};
        for (const auto& [name, field] : rate_fields) {
            mj[name] = to_json(mm.*field);
        }
        modes.push_back(mj);
    }
    return {{"suite", m.suite},
            {"scenario_count", m.scenario_ids.size()},
            {"scenario_ids", m.scenario_ids},
            {"primary_score_weights", weights},
            {"modes", modes}};
}

SuiteMetrics suite_metrics_from_json(const json& j)
{
    validate_or_throw("suite_metrics", j, "suite metrics");
    SuiteMetrics m;
    m.suite = j.at("suite").get<std::string>();
    m.scenario_ids = j.at("scenario_ids").get<std::vector<std::string>>();
    for (auto p : engine::all_planes) {
        m.plane_weights[static_cast<std::size_t>(p)] =
            j.at("primary_score_weights").at(std::string(engine::to_string(p))).get<double>();
    }
    for (const auto& mj : j.at("modes")) {
        ModeMetrics mm;
        mm.mode = engine::mode_from_string(mj.at("mode").get<std::string>());
        for (auto p : engine::all_planes) {
            mm.plane_closure[static_cast<std::size_t>(p)] =
                fraction_from_json(mj.at("plane_closure").at(std::string(engine::to_string(p))));
        }
        for (const auto& [name, field] : rate_fields) {
            mm.*field = fraction_from_json(mj.at(name));
        }
        mm.primary_score = mj.at("primary_score").get<double>();
        m.modes.push_back(mm);
    }
    return m;
}

std::vector<ScenarioBundle> select_family(const std::vector<ScenarioBundle>& bundles, Family f)
{
    std::vector<ScenarioBundle> out;
    std::copy_if(bundles.begin(), bundles.end(), std::back_inserter(out),
                 [f](const auto& b) { return b.family == f; });
    return out;
}

SuiteMetrics compute_suite_metrics(const std::string& suite, const std::vector<ScenarioBundle>& bundles,
                                   const SuiteResults& results, const MetricsConfig& cfg,
                                   const engine::ClosureRules& rules)
{
    std::vector<const ScenarioBundle*> order;
    for (const auto& b : bundles) {
        order.push_back(&b);
    }
    std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) { return a->scenario_id < b->scenario_id; });

    SuiteMetrics out;
    out.suite = suite;
    out.plane_weights = cfg.plane_weights;
    for (const auto* b : order) {
        out.scenario_ids.push_back(b->scenario_id);
    }

    std::vector<std::string> missing;
    for (const auto& [mode, list] : results) {
        std::map<std::string, const engine::MeasurementObject*> by_id;
        for (const auto& m : list) {
            by_id[m.scenario_id] = &m;
        }
        ModeMetrics mm;
        mm.mode = mode;
        const std::size_t n = order.size();
        for (auto* f : {&mm.ambiguity, &mm.contradiction, &mm.capability_broader, &mm.object_complete,
                        &mm.object_complete_clear}) {
            f->den = n;
        }
        for (auto& f : mm.plane_closure) {
            f.den = n;
        }
        for (const auto* b : order) {
            auto it = by_id.find(b->scenario_id);
            if (it == by_id.end()) {
                missing.push_back(b->scenario_id + " (" + std::string(engine::short_name(mode)) + ")");
                continue;
            }
            const auto& m = *it->second;
            auto closure = engine::compute_plane_closure(m, rules);
            for (std::size_t p = 0; p < 7; ++p) {
                mm.plane_closure[p].num += closure.closed[p] ? 1 : 0;
            }
            mm.ambiguity.num += m.observability.ambiguity_reasons.empty() ? 0 : 1;
            mm.contradiction.num += m.observability.contradiction_flag() ? 1 : 0;
            const auto& broader = m.capability.capability_broader_than_session;
            mm.capability_broader.num += broader.is_known() && broader.value == true ? 1 : 0;
            mm.object_complete.num += closure.object_complete ? 1 : 0;
            mm.object_complete_clear.num += closure.object_complete_clear ? 1 : 0;
            if (b->ground_truth) {
                auto score = evaluate_exact(m, *b->ground_truth, rules);
                mm.exact_field_match.num += score.matched;
                mm.exact_field_match.den += score.fields.size();
            }
            if (b->contract) {
                auto score = evaluate_contract(m, *b->contract, rules);
                mm.contract_match.num += score.matched;
                mm.contract_match.den += score.total;
                mm.contract_coverage.den += 1;
                mm.contract_coverage.num += score.total > 0 ? 1 : 0;
            }
        }
        double wsum = 0.0;
        double acc = 0.0;
        for (std::size_t p = 0; p < 7; ++p) {
            wsum += cfg.plane_weights[p];
            acc += cfg.plane_weights[p] * mm.plane_closure[p].value();
        }
        mm.primary_score = wsum > 0 ? acc / wsum : 0.0;
        out.modes.push_back(mm);
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& s : missing) {
            list += (list.empty() ? "" : ", ") + s;
        }
        throw Error("metrics_error", "missing results: " + list);
    }
    return out;
}

}  // namespace pqobs::bench
