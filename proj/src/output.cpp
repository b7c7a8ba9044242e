#include "phonocool/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "phonocool/errors.hpp"

namespace phonocool {

namespace {

constexpr const char* kColumns[] = {"delta", "omega", "method", "route", "heat_absorption_rate",
                                    "min_eigenvalue_seen", "steady_residual", "status"};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

double parse_number(std::string_view s) {
    if (s == "nan" || s == "NaN" || s == "null") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double x = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw InvalidArgument("bad number '" + std::string(s) + "'");
    return x;
}

std::vector<std::vector<std::string>> split_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (c == '\n') {
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
            any = false;
        } else if (c != '\r') {
            field += c;
            any = true;
        }
    }
    if (quoted) throw InvalidArgument("unterminated quoted CSV field");
    if (any) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

SpectrumRecord record_from_fields(const std::vector<std::string>& f) {
    if (f.size() != std::size(kColumns)) throw InvalidArgument("CSV row has wrong column count");
    SpectrumRecord r;
    r.delta = parse_number(f[0]);
    r.omega = parse_number(f[1]);
    r.method = method_from_string(f[2]);
    r.route = route_from_string(f[3]);
    r.heat_absorption_rate = parse_number(f[4]);
    r.min_eigenvalue_seen = parse_number(f[5]);
    r.steady_residual = parse_number(f[6]);
    r.status = f[7];
    return r;
}

std::string json_number(double x) { return std::isfinite(x) ? format_number(x) : "null"; }

} // namespace

OutputFormat format_from_string(std::string_view name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw InvalidArgument("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

OutputFormat format_from_path(std::string_view path) {
    auto ends = [&](std::string_view ext) {
        return path.size() >= ext.size() && path.substr(path.size() - ext.size()) == ext;
    };
    if (ends(".csv")) return OutputFormat::csv;
    if (ends(".json")) return OutputFormat::json;
    throw InvalidArgument("cannot infer output format from '" + std::string(path) + "'; pass --format");
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0"; // also folds -0
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
    return std::string(buf, p);
}

std::string to_csv(const std::vector<SpectrumRecord>& records) {
    std::string out;
    for (std::size_t i = 0; i < std::size(kColumns); ++i) {
        if (i) out += ',';
        out += kColumns[i];
    }
    out += '\n';
    for (const auto& r : records) {
        out += format_number(r.delta) + ',' + format_number(r.omega) + ',' +
               std::string(to_string(r.method)) + ',' + std::string(to_string(r.route)) + ',' +
               format_number(r.heat_absorption_rate) + ',' + format_number(r.min_eigenvalue_seen) +
               ',' + format_number(r.steady_residual) + ',' + csv_field(r.status) + '\n';
    }
    return out;
}

std::string to_json(const std::vector<SpectrumRecord>& records) {
    std::string out = "[";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        out += i ? ",\n  {" : "\n  {";
        out += "\"delta\": " + json_number(r.delta);
        out += ", \"omega\": " + json_number(r.omega);
        out += ", \"method\": \"" + std::string(to_string(r.method)) + "\"";
        out += ", \"route\": \"" + std::string(to_string(r.route)) + "\"";
        out += ", \"heat_absorption_rate\": " + json_number(r.heat_absorption_rate);
        out += ", \"min_eigenvalue_seen\": " + json_number(r.min_eigenvalue_seen);
        out += ", \"steady_residual\": " + json_number(r.steady_residual);
        out += ", \"status\": " + nlohmann::json(r.status).dump();
        out += "}";
    }
    out += records.empty() ? "]\n" : "\n]\n";
    return out;
}

void write_output(const std::vector<SpectrumRecord>& records, const std::string& path,
                  OutputFormat format) {
    const std::string body = format == OutputFormat::csv ? to_csv(records) : to_json(records);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file for writing", path);
    out << body;
    out.flush();
    if (!out) throw IoError("failed writing output file", path);
}

std::vector<SpectrumRecord> parse_csv(std::string_view text) {
    const auto rows = split_csv(text);
    if (rows.empty()) throw InvalidArgument("CSV is missing its header row");
    const auto& head = rows.front();
    if (head.size() != std::size(kColumns)) throw InvalidArgument("unexpected CSV header");
    for (std::size_t i = 0; i < head.size(); ++i)
        if (head[i] != kColumns[i]) throw InvalidArgument("unexpected CSV column '" + head[i] + "'");
    std::vector<SpectrumRecord> out;
    for (std::size_t i = 1; i < rows.size(); ++i) out.push_back(record_from_fields(rows[i]));
    return out;
}

std::vector<SpectrumRecord> parse_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_array()) throw InvalidArgument("expected a JSON array of records");
    auto num = [](const nlohmann::json& v) {
        return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
    };
    std::vector<SpectrumRecord> out;
    for (const auto& j : doc) {
        SpectrumRecord r;
        try {
            r.delta = num(j.at("delta"));
            r.omega = num(j.at("omega"));
            r.method = method_from_string(j.at("method").get<std::string>());
            r.route = route_from_string(j.at("route").get<std::string>());
            r.heat_absorption_rate = num(j.at("heat_absorption_rate"));
            r.min_eigenvalue_seen = num(j.at("min_eigenvalue_seen"));
            r.steady_residual = num(j.at("steady_residual"));
            r.status = j.at("status").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw InvalidArgument(std::string("bad record: ") + e.what());
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace phonocool
