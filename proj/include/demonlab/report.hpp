#pragma once

#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "demonlab/sweep.hpp"

namespace demonlab {

enum class ReportFormat { Csv, Json, Svg };

ReportFormat parse_report_format(std::string_view text);

// Shortest decimal string that reads back to the same double.
std::string format_number(double x);

inline constexpr std::string_view kCsvHeader = "source,normalization,r2,analytic,mc,mc_stderr,mutual_info_bits";

std::string rows_to_csv(const std::vector<ReportRow>& rows);
nlohmann::json rows_to_json(const std::vector<ReportRow>& rows);
std::vector<ReportRow> rows_from_json(const nlohmann::json& j);
// Line chart of r2 against the power columns, one series per
// (source, normalization); mutual information, when present, gets its own
// series per source.
std::string rows_to_svg(const std::vector<ReportRow>& rows);

std::string render_report(const std::vector<ReportRow>& rows, ReportFormat format);

// Writes `content` to `path`; throws std::runtime_error when it cannot.
void write_file(const std::string& path, std::string_view content);

}  // namespace demonlab
