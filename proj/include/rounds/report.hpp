#pragma once

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace rounds {

using Json = nlohmann::ordered_json;

enum class OutputFormat { table, csv, json };

std::optional<OutputFormat> parse_output_format(std::string_view name) noexcept;

/// Result of one CLI command. JSON is the canonical rendering:
///   {command, config_echo, rows[], checks[]?, timing_ms}
/// CSV and the human table are flat projections of `rows` (or of `checks`
/// when there are no rows): nested objects become dotted column names and
/// arrays are left out.
struct Report {
    std::string command;
    Json config_echo = Json::object();
    std::vector<Json> rows;
    std::optional<std::vector<Json>> checks;
    double timing_ms = 0.0;
    int exit_code = 0;
};

Json to_json(const Report& report);

/// Machine formats print floats with 17 significant digits (JSON uses the
/// shortest representation that round-trips, which is never longer);
/// the human table uses 6.
void render(const Report& report, OutputFormat format, std::ostream& out);

/// RFC-4180 quoting: fields containing a comma, quote, CR or LF are quoted
/// and embedded quotes doubled.
std::string csv_escape(std::string_view field);

/// "%.17g" with a '.' decimal separator regardless of locale.
std::string format_number(double value, int significant_digits);

}  // namespace rounds
