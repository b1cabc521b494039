#include "rounds/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <utility>

namespace rounds {

std::optional<OutputFormat> parse_output_format(std::string_view name) noexcept {
    if (name == "table") return OutputFormat::table;
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    return std::nullopt;
}

std::string format_number(double value, int significant_digits) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    // std::to_chars never consults the locale
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general,
                                   significant_digits);
    return {buf, res.ptr};
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

Json to_json(const Report& report) {
    Json j;
    j["command"] = report.command;
    j["config_echo"] = report.config_echo;
    j["rows"] = Json::array();
    for (const auto& r : report.rows) j["rows"].push_back(r);
    if (report.checks) {
        j["checks"] = Json::array();
        for (const auto& c : *report.checks) j["checks"].push_back(c);
    }
    j["timing_ms"] = report.timing_ms;
    return j;
}

namespace {

using Flat = std::vector<std::pair<std::string, Json>>;

void flatten_into(const Json& value, const std::string& prefix, Flat& out) {
    for (const auto& [key, v] : value.items()) {
        const std::string name = prefix.empty() ? key : prefix + "." + key;
        if (v.is_object()) {
            flatten_into(v, name, out);
        } else if (!v.is_array()) {
            out.emplace_back(name, v);
        }
    }
}

std::string cell(const Json& v, int digits) {
    if (v.is_null()) return "";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return v.dump();
    if (v.is_number_float()) return format_number(v.get<double>(), digits);
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// column order: first appearance across rows
struct FlatTable {
    std::vector<std::string> columns;
    std::vector<Flat> rows;
};

FlatTable flatten_rows(const std::vector<Json>& rows) {
    FlatTable t;
    for (const auto& r : rows) {
        Flat f;
        flatten_into(r, "", f);
        for (const auto& [name, v] : f) {
            if (std::find(t.columns.begin(), t.columns.end(), name) == t.columns.end()) {
                t.columns.push_back(name);
            }
        }
        t.rows.push_back(std::move(f));
    }
    return t;
}

const Json* lookup(const Flat& row, const std::string& column) {
    for (const auto& [name, v] : row) {
        if (name == column) return &v;
    }
    return nullptr;
}

const std::vector<Json>& table_rows(const Report& report) {
    if (report.rows.empty() && report.checks) return *report.checks;
    return report.rows;
}

}  // namespace

void render(const Report& report, OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::json) {
        out << to_json(report).dump(2) << '\n';
        return;
    }
    const FlatTable t = flatten_rows(table_rows(report));
    if (format == OutputFormat::csv) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            out << (i ? "," : "") << csv_escape(t.columns[i]);
        }
        out << "\r\n";
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < t.columns.size(); ++i) {
                const Json* v = lookup(row, t.columns[i]);
                out << (i ? "," : "") << csv_escape(v ? cell(*v, 17) : "");
            }
            out << "\r\n";
        }
        return;
    }

    // the human table leaves out columns that are null in every row
    std::vector<std::string> columns;
    for (const auto& name : t.columns) {
        const bool any = std::any_of(t.rows.begin(), t.rows.end(), [&](const Flat& row) {
            const Json* v = lookup(row, name);
            return v && !v->is_null();
        });
        if (any) columns.push_back(name);
    }
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width(columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i) width[i] = columns[i].size();
    for (const auto& row : t.rows) {
        auto& line = cells.emplace_back();
        for (std::size_t i = 0; i < columns.size(); ++i) {
            const Json* v = lookup(row, columns[i]);
            line.push_back(v ? cell(*v, 6) : "-");
            width[i] = std::max(width[i], line.back().size());
        }
    }
    auto emit = [&](const std::vector<std::string>& line) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            out << (i ? "  " : "") << line[i];
            if (i + 1 < line.size()) out << std::string(width[i] - line[i].size(), ' ');
        }
        out << '\n';
    };
    out << report.command << " (" << format_number(report.timing_ms, 6) << " ms)\n";
    emit(columns);
    for (const auto& line : cells) emit(line);
}

}  // namespace rounds
