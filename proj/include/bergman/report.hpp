#pragma once

#include "bergman/verify.hpp"

#include "json.hpp"

#include <string>

namespace bergman {

enum class ReportFormat { Json, Csv, Text };

/// Exit statuses shared by the CLI.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// {"suite_version", "entries":[{"name","params":{…},"residual","tol","pass",
/// "wall_ms","note"}], "summary":{"total","passed","failed"}}. A non-finite
/// residual serializes as null.
nlohmann::json report_to_json(const VerificationReport& report);

/// RFC 4180 CSV, one row per entry, header first.
std::string report_to_csv(const VerificationReport& report);

std::string report_to_text(const VerificationReport& report);

std::string render_report(const VerificationReport& report, ReportFormat format);

/// Writes the report to `path` ("" or "-" for stdout). Returns 0 if every
/// entry passed, 1 otherwise, 3 on I/O failure (message on stderr).
int emit_report(const VerificationReport& report, ReportFormat format, const std::string& path);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(const std::string& value);

}  // namespace bergman
