// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace pqobs::report {

using nlohmann::json;

enum class Format { table_text, structured };

std::string_view to_string(Format f);
Format format_from_string(std::string_view s);

struct Row {
    std::string metric_name;  // dotted path into the source document
    json value;               // numerator for fractions
    std::optional<std::uint64_t> denominator;
    std::string scope;        // mode, round id, or "round_a->round_b"

    bool operator==(const Row&) const = default;
};

struct ReportView {
    std::string source_kind;  // suite_metrics, round_summary, drift_report
    std::string title;
    std::vector<Row> rows;

    bool operator==(const ReportView&) const = default;
};

// Detects the document kind, validates it against its schema and builds the
// rows. Throws pqobs::Error(render_error) naming the offending field.
ReportView report_view(const json& source);

// table_text: aligned columns, fractions as "num/den"; structured: JSON with
// sorted keys and a trailing newline, byte-stable for equal input.
std::string render(const ReportView& view, Format format);
std::string render_report(const json& source, Format format);

}  // namespace pqobs::report
