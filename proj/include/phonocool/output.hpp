// output.hpp — CSV and JSON serialization of spectrum records

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "phonocool/sweep.hpp"

namespace phonocool {

enum class OutputFormat { csv, json };

OutputFormat format_from_string(std::string_view name); // throws InvalidArgument
// csv for ".csv", json for ".json"; throws InvalidArgument otherwise.
OutputFormat format_from_path(std::string_view path);

// 12 significant digits, '.' separator, independent of the C locale.
std::string format_number(double x);

std::string to_csv(const std::vector<SpectrumRecord>& records);
std::string to_json(const std::vector<SpectrumRecord>& records);

// Throws IoError carrying the path.
void write_output(const std::vector<SpectrumRecord>& records, const std::string& path,
                  OutputFormat format);

// Inverse of to_csv / to_json; throws InvalidArgument on malformed input.
std::vector<SpectrumRecord> parse_csv(std::string_view text);
std::vector<SpectrumRecord> parse_json(std::string_view text);

} // namespace phonocool
