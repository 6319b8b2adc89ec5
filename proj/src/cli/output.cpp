#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "table.hpp"

namespace gyrospectra::cli {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string render_csv(const Table& t, const RunConfig& config) {
    std::string out;
    out += "# command=" + config.get_or("command", "?") + "\n";
    for (const auto& [k, v] : t.meta) out += "# " + k + "=" + v + "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) out += ',';
        out += t.columns[c];
    }
    if (!t.status.empty()) out += ",status";
    out += '\n';
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
            if (c) out += ',';
            out += format_double(t.rows[r][c]);
        }
        if (!t.status.empty()) {
            out += ',';
            out += t.status[r];
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const Table& t, const RunConfig& config) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["command"] = config.get_or("command", "?");
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config.entries()) cfg[k] = v;
    doc["config"] = cfg;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.meta) meta[k] = v;
    doc["meta"] = meta;
    doc["columns"] = t.columns;
    doc["rows"] = t.rows;
    if (!t.status.empty()) doc["status"] = t.status;
    return doc.dump(2) + "\n";
}

}  // namespace

void write_table(const Table& table, const RunConfig& config, const std::string& path,
                 const std::string& format) {
    std::string body;
    if (format == "csv")
        body = render_csv(table, config);
    else if (format == "json")
        body = render_json(table, config);
    else
        throw ConfigError("unknown output format '" + format + "' (expected csv or json)");

    std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write output file '" + tmp.string() + "'");
        out << body;
        if (!out.flush()) throw ConfigError("short write to '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, target);
}

}  // namespace gyrospectra::cli
