#pragma once

#include <string>
#include <string_view>

#include "rdd/checker.hpp"

namespace rdd {

enum class ReportFormat { Text, Json };

// "text" or "json"; throws std::invalid_argument otherwise.
ReportFormat parse_report_format(std::string_view name);

// Deterministic rendering. The JSON form is a single document following
// docs/report.schema.json.
std::string format_report(const Report& r, ReportFormat format, const PrefixMap& prefixes = {});

// The JSON form without timing, for byte-for-byte comparison of reports.
std::string canonical_report(const Report& r);

}  // namespace rdd
