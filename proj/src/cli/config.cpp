#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gyrospectra/cli.hpp"

namespace gyrospectra::cli {

std::vector<double> Range::linspace() const {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i)
        v[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    return v;
}

std::vector<double> Range::geomspace() const {
    if (!(lo > 0.0) || !(hi > 0.0))
        throw ConfigError("geometric range requires positive endpoints");
    std::vector<double> v(count);
    double llo = std::log(lo), lhi = std::log(hi);
    for (std::size_t i = 0; i < count; ++i)
        v[i] = count == 1 ? lo : std::exp(llo + (lhi - llo) * static_cast<double>(i) / (count - 1));
    return v;
}

Range parse_range(const std::string& text) {
    std::array<std::string, 3> part;
    std::size_t n = 0, pos = 0;
    // Split on ':' but keep exponent-free scientific forms like 1e-4 intact;
    // ':' never appears inside a number so a plain split is enough.
    while (n < 3) {
        std::size_t next = text.find(':', pos);
        part[n++] = text.substr(pos, next == std::string::npos ? next : next - pos);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (n != 3) throw ConfigError("range must be lo:hi:count, got '" + text + "'");
    try {
        std::size_t used = 0;
        double lo = std::stod(part[0], &used);
        if (used != part[0].size()) throw std::invalid_argument(part[0]);
        double hi = std::stod(part[1], &used);
        if (used != part[1].size()) throw std::invalid_argument(part[1]);
        long count = std::stol(part[2], &used);
        if (used != part[2].size()) throw std::invalid_argument(part[2]);
        if (count < 2) throw ConfigError("range count must be >= 2 in '" + text + "'");
        return {lo, hi, static_cast<std::size_t>(count)};
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("bad range '" + text + "'");
    }
}

Eigen::Matrix2d parse_matrix(const std::string& text, MatrixRole role, const std::string& name) {
    std::array<double, 4> v{};
    std::size_t n = 0, pos = 0;
    while (n < 4) {
        std::size_t next = text.find(',', pos);
        std::string tok = text.substr(pos, next == std::string::npos ? next : next - pos);
        try {
            std::size_t used = 0;
            v[n] = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ConfigError(name + ": bad matrix entry '" + tok + "'");
        }
        ++n;
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (n != 4) throw ConfigError(name + ": matrix needs 4 comma-separated entries");
    Eigen::Matrix2d m;
    m << v[0], v[1], v[2], v[3];
    if (role == MatrixRole::Symmetric) {
        if (std::abs(m(0, 1) - m(1, 0)) > 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff()))
            throw ConfigError(name + ": not symmetric");
    } else {
        double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        if (std::abs(m(0, 0)) > 1e-12 * scale || std::abs(m(1, 1)) > 1e-12 * scale ||
            std::abs(m(0, 1) + m(1, 0)) > 1e-12 * scale)
            throw ConfigError(name + ": not skew-symmetric");
        if (m(0, 1) == 0.0) throw ConfigError(name + ": zero skew scale");
    }
    return m;
}

std::string RunConfig::get(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError("missing required key '" + key + "'");
    return it->second;
}

std::string RunConfig::get_or(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key) const {
    const std::string text = get(key);
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': bad number '" + text + "'");
    }
}

double RunConfig::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int RunConfig::get_int_or(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const std::string text = get(key);
    try {
        std::size_t used = 0;
        long v = std::stol(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': bad integer '" + text + "'");
    }
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();

    RunConfig cfg;
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
        if (doc.is_discarded() || !doc.contains("config") || !doc["config"].is_object())
            throw ConfigError("JSON config must carry a top-level \"config\" object");
        for (const auto& [key, val] : doc["config"].items()) {
            if (!val.is_string()) throw ConfigError("config values must be strings");
            cfg.set(key, val.get<std::string>());
        }
        return cfg;
    }

    std::istringstream lines(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        std::size_t eq = line.find('=', start);
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(start, eq - start);
        std::string val = line.substr(eq + 1);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        std::size_t vs = val.find_first_not_of(" \t");
        val = vs == std::string::npos ? std::string() : val.substr(vs);
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        cfg.set(key, val);
    }
    return cfg;
}

}  // namespace gyrospectra::cli
