#include "phasekit/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "phasekit/error.hpp"

namespace phasekit::io {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kMagic = "PHASEKIT";

static_assert(std::endian::native == std::endian::little, "binary format assumes a little-endian host");

json header_of(const Dataset& d) {
    return json{{"format_version", format_version}, {"meta", d.meta}, {"columns", d.columns},
                {"rows", d.rows()}};
}

void check_shape(const Dataset& d) {
    require(d.columns.size() == d.data.size(), Errc::schema_violation, "column names and data differ in count");
    for (const auto& c : d.data)
        require(c.size() == d.rows(), Errc::schema_violation, "dataset columns differ in length");
}

Dataset from_header(const json& h) {
    require(h.is_object() && h.contains("columns") && h.contains("rows"), Errc::schema_violation,
            "dataset header lacks columns or rows");
    require(h.value("format_version", 0) == format_version, Errc::schema_violation,
            "unsupported format_version");
    Dataset d;
    d.meta = h.value("meta", json::object());
    d.columns = h.at("columns").get<std::vector<std::string>>();
    d.data.assign(d.columns.size(), std::vector<double>(h.at("rows").get<std::size_t>()));
    return d;
}

std::string encode_csv(const Dataset& d) {
    std::string out = "# " + header_of(d).dump() + "\n";
    for (std::size_t c = 0; c < d.columns.size(); ++c) out += (c ? "," : "") + d.columns[c];
    out += "\n";
    char buf[32];
    for (std::size_t r = 0; r < d.rows(); ++r) {
        for (std::size_t c = 0; c < d.columns.size(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", d.data[c][r]);
            if (c) out += ',';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

Dataset decode_csv(const std::string& bytes) {
    std::istringstream in(bytes);
    std::string line;
    require(std::getline(in, line) && line.rfind("# ", 0) == 0, Errc::parse_error, "CSV lacks its header line");
    Dataset d;
    try {
        d = from_header(json::parse(line.substr(2)));
    } catch (const json::exception& e) {
        fail(Errc::parse_error, std::string("CSV header: ") + e.what());
    }
    require(static_cast<bool>(std::getline(in, line)), Errc::parse_error, "CSV lacks its column line");
    for (std::size_t r = 0; r < d.rows(); ++r) {
        require(static_cast<bool>(std::getline(in, line)), Errc::parse_error, "CSV ends early");
        const char* p = line.c_str();
        for (std::size_t c = 0; c < d.columns.size(); ++c) {
            char* end = nullptr;
            d.data[c][r] = std::strtod(p, &end);
            require(end != p, Errc::parse_error, "CSV field is not a number");
            p = end;
            if (c + 1 < d.columns.size()) {
                require(*p == ',', Errc::parse_error, "CSV row has too few fields");
                ++p;
            }
        }
        require(*p == '\0', Errc::parse_error, "CSV row has trailing characters");
    }
    return d;
}

std::string encode_json(const Dataset& d) {
    json doc = header_of(d);
    json data = json::object();
    for (std::size_t c = 0; c < d.columns.size(); ++c) data[d.columns[c]] = d.data[c];
    doc["data"] = std::move(data);
    return doc.dump() + "\n";
}

Dataset decode_json(const std::string& bytes) {
    try {
        const json doc = json::parse(bytes);
        Dataset d = from_header(doc);
        for (std::size_t c = 0; c < d.columns.size(); ++c) {
            d.data[c] = doc.at("data").at(d.columns[c]).get<std::vector<double>>();
            require(d.data[c].size() == d.rows(), Errc::schema_violation, "JSON column length differs from rows");
        }
        return d;
    } catch (const json::exception& e) {
        fail(Errc::parse_error, std::string("JSON dataset: ") + e.what());
    }
}

std::string encode_binary(const Dataset& d) {
    const std::string h = header_of(d).dump();
    std::string out(kMagic);
    const std::uint64_t len = h.size();
    out.append(reinterpret_cast<const char*>(&len), sizeof len);
    out += h;
    for (const auto& c : d.data) out.append(reinterpret_cast<const char*>(c.data()), c.size() * sizeof(double));
    return out;
}

Dataset decode_binary(const std::string& bytes) {
    require(bytes.size() >= kMagic.size() + 8 && bytes.compare(0, kMagic.size(), kMagic) == 0, Errc::parse_error,
            "binary file lacks the PHASEKIT magic");
    std::uint64_t len = 0;
    std::memcpy(&len, bytes.data() + kMagic.size(), sizeof len);
    const std::size_t start = kMagic.size() + 8;
    require(len <= bytes.size() - start, Errc::parse_error, "binary header runs past the end");
    Dataset d;
    try {
        d = from_header(json::parse(bytes.substr(start, len)));
    } catch (const json::exception& e) {
        fail(Errc::parse_error, std::string("binary header: ") + e.what());
    }
    std::size_t off = start + len;
    require(bytes.size() - off == d.columns.size() * d.rows() * sizeof(double), Errc::parse_error,
            "binary payload size does not match the header");
    for (auto& c : d.data) {
        std::memcpy(c.data(), bytes.data() + off, c.size() * sizeof(double));
        off += c.size() * sizeof(double);
    }
    return d;
}

} // namespace

Format parse_format(std::string_view s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    if (s == "binary") return Format::binary;
    fail(Errc::invalid_argument, "format must be csv, json or binary");
}

std::string_view extension(Format f) {
    switch (f) {
    case Format::csv: return ".csv";
    case Format::json: return ".json";
    case Format::binary: return ".bin";
    }
    return ".csv";
}

void Dataset::add_column(std::string name, std::vector<double> values) {
    require(data.empty() || values.size() == rows(), Errc::schema_violation, "column length differs");
    columns.push_back(std::move(name));
    data.push_back(std::move(values));
}

const std::vector<double>& Dataset::column(std::string_view name) const {
    for (std::size_t c = 0; c < columns.size(); ++c)
        if (columns[c] == name) return data[c];
    fail(Errc::schema_violation, "dataset has no column '" + std::string(name) + "'");
}

std::string encode(const Dataset& d, Format f) {
    check_shape(d);
    switch (f) {
    case Format::csv: return encode_csv(d);
    case Format::json: return encode_json(d);
    case Format::binary: return encode_binary(d);
    }
    return {};
}

Dataset decode(const std::string& bytes, Format f) {
    switch (f) {
    case Format::csv: return decode_csv(bytes);
    case Format::json: return decode_json(bytes);
    case Format::binary: return decode_binary(bytes);
    }
    return {};
}

void write_atomic(const fs::path& path, const std::string& bytes) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    require(!ec, Errc::io_failure, "cannot create directory " + path.parent_path().string());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(static_cast<bool>(out), Errc::io_failure, "cannot open " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        require(static_cast<bool>(out), Errc::io_failure, "write failed for " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        fail(Errc::io_failure, "cannot rename onto " + path.string());
    }
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in) && !fs::is_directory(path), Errc::unreadable_file,
            "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_dataset(const fs::path& path, const Dataset& d, Format f) { write_atomic(path, encode(d, f)); }

Dataset read_dataset(const fs::path& path) {
    const std::string ext = path.extension().string();
    Format f = Format::csv;
    if (ext == ".json") f = Format::json;
    else if (ext == ".bin") f = Format::binary;
    else require(ext == ".csv", Errc::parse_error, "unknown dataset extension " + ext);
    return decode(read_file(path), f);
}

void write_json(const fs::path& path, json doc) {
    if (doc.is_object() && !doc.contains("format_version")) doc["format_version"] = format_version;
    write_atomic(path, doc.dump(2) + "\n");
}

json read_json(const fs::path& path) {
    const std::string text = read_file(path);
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(Errc::parse_error, path.string() + ": " + e.what());
    }
}

} // namespace phasekit::io
