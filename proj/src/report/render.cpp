// SPDX-License-Identifier: Apache-2.0
#include "pqobs/report/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "pqobs/common/error.hpp"
#include "pqobs/common/schema.hpp"

namespace pqobs::report {

namespace {

const char* const plane_order[] = {"session_core",   "session_hidden_detail", "capability", "key_establishment",
                                   "authentication", "lifecycle",             "observability"};

const char* const mode_fractions[] = {"object_completeness", "object_complete_clear", "ambiguity_rate",
                                      "contradiction_rate",  "capability_broader_rate", "exact_field_match",
                                      "contract_match",      "contract_coverage"};

std::string detect_kind(const json& j)
{
    if (!j.is_object()) {
        throw Error("render_error", "document is not an object");
    }
    if (j.contains("modes")) {
        return "suite_metrics";
    }
    if (j.contains("comparable_targets") || j.contains("capability_drift_pct")) {
        return "drift_report";
    }
    if (j.contains("probes") || j.contains("hybrid_confirmed")) {
        return "round_summary";
    }
    throw Error("render_error", "unrecognized document: expected suite metrics, round summary or drift report");
}

void validate(const std::string& kind, const json& j)
{
    auto v = schema_violations(bundled_schema(kind), j);
    if (!v.empty()) {
        throw Error("render_error", kind + " field " + v.front());
    }
}

void fraction_row(ReportView& view, const std::string& name, const json& f, const std::string& scope)
{
    view.rows.push_back({name, f.at("num"), f.at("den").get<std::uint64_t>(), scope});
}

std::string format_value(const Row& r)
{
    if (r.denominator) {
        char buf[64];
        auto num = r.value.get<std::uint64_t>();
        double v = *r.denominator == 0 ? 0.0 : double(num) / double(*r.denominator);
        std::snprintf(buf, sizeof buf, "%llu/%llu (%.2f)", static_cast<unsigned long long>(num),
                      static_cast<unsigned long long>(*r.denominator), v);
        return buf;
    }
    if (r.value.is_number_float()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.2f", r.value.get<double>());
        return buf;
    }
    if (r.value.is_string()) {
        return r.value.get<std::string>();
    }
    return r.value.dump();
}

}  // namespace

std::string_view to_string(Format f)
{
    return f == Format::table_text ? "table_text" : "structured";
}

Format format_from_string(std::string_view s)
{
    if (s == "table_text" || s == "table" || s == "text") {
        return Format::table_text;
    }
    if (s == "structured" || s == "json") {
        return Format::structured;
    }
    throw Error("invalid_config", "unknown report format '" + std::string(s) + "'");
}

ReportView report_view(const json& source)
{
    ReportView view;
    view.source_kind = detect_kind(source);
    validate(view.source_kind, source);

    if (view.source_kind == "suite_metrics") {
        view.title = "suite " + source["suite"].get<std::string>() + " (" +
                     std::to_string(source["scenario_count"].get<int>()) + " scenarios)";
        for (const auto& m : source["modes"]) {
            auto scope = m["mode"].get<std::string>();
            for (const char* p : plane_order) {
                fraction_row(view, std::string("plane_closure.") + p, m["plane_closure"][p], scope);
            }
            for (const char* f : mode_fractions) {
                fraction_row(view, f, m[f], scope);
            }
            view.rows.push_back({"primary_score", m["primary_score"], std::nullopt, scope});
        }
    } else if (view.source_kind == "round_summary") {
        auto scope = source["round_id"].get<std::string>();
        view.title = "round " + scope;
        for (const char* k : {"targets", "probes", "complete_handshakes", "chain_artifacts", "hybrid_confirmed",
                              "classical_only_under_tested_profiles", "capability_broader", "contradiction_bearing",
                              "clear_complete"}) {
            view.rows.push_back({k, source[k], std::nullopt, scope});
        }
    } else {
        auto scope = source["round_a"].get<std::string>() + "->" + source["round_b"].get<std::string>();
        view.title = "drift " + scope;
        auto n = source["comparable_targets"].get<std::uint64_t>();
        view.rows.push_back({"comparable_targets", source["comparable_targets"], std::nullopt, scope});
        const std::pair<const char*, const char*> pcts[] = {
            {"capability_drift_pct", "capability"},
            {"certificate_drift_pct", "certificate"},
            {"lifecycle_drift_pct", "lifecycle"},
            {"signature_algorithm_drift_pct", "signature_algorithm"},
            {"clear_complete_stability_pct", "clear_complete_kept"}};
        for (const auto& [pct, count] : pcts) {
            view.rows.push_back({pct, source[pct], std::nullopt, scope});
            view.rows.push_back({std::string("counts.") + count, source["counts"][count], n, scope});
        }
    }
    return view;
}

std::string render(const ReportView& view, Format format)
{
    if (format == Format::structured) {
        json rows = json::array();
        for (const auto& r : view.rows) {
            rows.push_back({{"metric_name", r.metric_name},
                            {"value", r.value},
                            {"denominator", r.denominator ? json(*r.denominator) : json(nullptr)},
                            {"scope", r.scope}});
        }
        json out = {{"source_kind", view.source_kind}, {"title", view.title}, {"rows", rows}};
        return out.dump(2) + "\n";
    }

    std::size_t w_scope = 5;
    std::size_t w_metric = 6;
    for (const auto& r : view.rows) {
        w_scope = std::max(w_scope, r.scope.size());
        w_metric = std::max(w_metric, r.metric_name.size());
    }
    std::ostringstream os;
    auto line = [&](const std::string& a, const std::string& b, const std::string& c) {
        os << a << std::string(w_scope - a.size() + 2, ' ') << b << std::string(w_metric - b.size() + 2, ' ') << c
           << "\n";
    };
    os << view.title << "\n";
    line("scope", "metric", "value");
    for (const auto& r : view.rows) {
        line(r.scope, r.metric_name, format_value(r));
    }
    return os.str();
}

std::string render_report(const json& source, Format format)
{
    return render(report_view(source), format);
}

}  // namespace pqobs::report
