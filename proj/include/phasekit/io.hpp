#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace phasekit::io {

using nlohmann::json;

inline constexpr int format_version = 1;

enum class Format { csv, json, binary };

Format parse_format(std::string_view s);
std::string_view extension(Format f);

/// Named equal-length columns plus free-form metadata.
struct Dataset {
    json meta = json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data;

    std::size_t rows() const { return data.empty() ? 0 : data.front().size(); }
    void add_column(std::string name, std::vector<double> values);
    const std::vector<double>& column(std::string_view name) const;
};

// CSV: "# {header json}" line, a column-name line, then rows printed with %.17g.
// JSON: {"format_version", "meta", "columns", "data": {name: [...]}}.
// Binary: "PHASEKIT" magic, u64 LE header length, header json, then the
// columns back to back as little-endian doubles.
std::string encode(const Dataset& d, Format f);
Dataset decode(const std::string& bytes, Format f);

/// Writes to a sibling temporary and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

void write_dataset(const std::filesystem::path& path, const Dataset& d, Format f);
/// Format chosen from the extension (.csv, .json, .bin).
Dataset read_dataset(const std::filesystem::path& path);

/// Pretty-printed with a trailing newline; "format_version" is added if absent.
void write_json(const std::filesystem::path& path, json doc);
json read_json(const std::filesystem::path& path);

} // namespace phasekit::io
