#pragma once

#include <map>
#include <string>
#include <vector>

#include "gyrospectra/cli.hpp"

namespace gyrospectra::cli {

/// Numeric result table with optional per-row status strings and scalar
/// metadata.  Meta lines become '#' comments in CSV and a "meta" object in
/// JSON; both serializations are byte-deterministic.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> status;  // empty, or one entry per row
    std::map<std::string, std::string> meta;

    void add_row(std::vector<double> r) { rows.push_back(std::move(r)); }
};

std::string format_double(double v);  // %.17g

/// Atomic write (temp file + rename).  format is "csv" or "json".
void write_table(const Table& table, const RunConfig& config, const std::string& path,
                 const std::string& format);

}  // namespace gyrospectra::cli
