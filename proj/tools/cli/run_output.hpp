#pragma once

// Result tables, atomic file writes and run manifests for the CLI.

#include <infragsp/csv.hpp>
#include <infragsp/errors.hpp>

#include <nlohmann/json.hpp>

#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <unistd.h>

namespace infragsp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

enum class OutputFormat { csv, json };

/// A table of preformatted cells. Columns listed in `text_columns` stay
/// strings in JSON output; other cells become numbers (or null when empty).
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::set<std::size_t> text_columns{0};
};

inline json typed_cell(const std::string& cell) {
    if (cell.empty()) return nullptr;
    long long i = 0;
    auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), i);
    if (ec == std::errc{} && p == cell.data() + cell.size()) return i;
    if (cell == "inf") return "inf";
    if (cell == "-inf") return "-inf";
    if (cell == "nan") return "nan";
    double d = 0.0;
    if (csv::parse_double(cell, d)) return d;
    return cell;
}

inline json table_json(const Table& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json obj = json::object();
        for (std::size_t c = 0; c < t.header.size() && c < r.size(); ++c)
            obj[t.header[c]] = t.text_columns.count(c) ? json(r[c]) : typed_cell(r[c]);
        rows.push_back(std::move(obj));
    }
    return rows;
}

inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Writes via a sibling temp file and rename, so readers never see a partial file.
inline void write_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot rename into " + path.string() + ": " + ec.message());
    }
}

struct InputFile {
    std::string path;
    std::string content;
};

inline InputFile read_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return {path, ss.str()};
}

/// Collects every output of one command and writes them together with the
/// manifest once all computation has succeeded.
class Run {
public:
    Run(std::string command, fs::path output_dir, OutputFormat format)
        : command_(std::move(command)), dir_(std::move(output_dir)), format_(format) {
        manifest_["command"] = command_;
        manifest_["inputs"] = json::array();
        manifest_["config"] = json::object();
        manifest_["seeds"] = json::object();
        manifest_["outputs"] = json::array();
    }

    OutputFormat format() const noexcept { return format_; }
    std::string manifest_name() const { return command_ + "_manifest.json"; }

    void add_input(const InputFile& f) {
        manifest_["inputs"].push_back({{"path", f.path}, {"fnv1a64", hex64(fnv1a64(f.content))}});
    }
    json& config() { return manifest_["config"]; }
    json& seeds() { return manifest_["seeds"]; }

    /// Table file `stem` + .csv or .json according to the run format.
    void add_table(const std::string& stem, const Table& t) {
        if (format_ == OutputFormat::csv) {
            std::ostringstream os;
            os << "# manifest: " << manifest_name() << '\n';
            csv::write_row(os, t.header);
            for (const auto& r : t.rows) csv::write_row(os, r);
            files_.push_back({stem + ".csv", os.str()});
        } else {
            add_json(stem, {{"manifest", manifest_name()}, {"rows", table_json(t)}});
        }
    }

    void add_json(const std::string& stem, json body) {
        body["manifest"] = manifest_name();
        files_.push_back({stem + ".json", body.dump(2) + "\n"});
    }

    /// Writes results first and the manifest last; returns the written paths.
    std::vector<fs::path> commit(const std::string& version, std::string_view rng_algorithm) {
        fs::create_directories(dir_);
        std::vector<fs::path> written;
        for (const auto& [name, body] : files_) {
            manifest_["outputs"].push_back(name);
            write_atomic(dir_ / name, body);
            written.push_back(dir_ / name);
        }
        manifest_["tool"] = "infragsp";
        manifest_["version"] = version;
        manifest_["rng"] = std::string(rng_algorithm);
        manifest_["timestamp"] = utc_timestamp();
        write_atomic(dir_ / manifest_name(), manifest_.dump(2) + "\n");
        written.push_back(dir_ / manifest_name());
        return written;
    }

private:
    std::string command_;
    fs::path dir_;
    OutputFormat format_;
    json manifest_;
    std::vector<std::pair<std::string, std::string>> files_;
};

} // namespace infragsp::cli
