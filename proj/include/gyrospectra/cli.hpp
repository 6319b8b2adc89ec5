#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gyrospectra/stability_atlas.hpp"

namespace gyrospectra::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sampling range "lo:hi:count".
struct Range {
    double lo;
    double hi;
    std::size_t count;

    std::vector<double> linspace() const;
    std::vector<double> geomspace() const;  // lo, hi > 0
};

Range parse_range(const std::string& text);

enum class MatrixRole { Symmetric, SkewSymmetric };

/// Row-major "a,b,c,d".  Throws ConfigError naming the violated structure
/// constraint.
Eigen::Matrix2d parse_matrix(const std::string& text, MatrixRole role, const std::string& name);

/// Flat key=value configuration.  Files may be plain "key=value" lines
/// ('#' comments) or a JSON document carrying a top-level "config" object,
/// which is how emitted JSON results can be re-run.
class RunConfig {
public:
    void set(const std::string& key, const std::string& value) { kv_[key] = value; }
    bool has(const std::string& key) const { return kv_.count(key) != 0; }
    const std::map<std::string, std::string>& entries() const { return kv_; }

    std::string get(const std::string& key) const;  // throws ConfigError when missing
    std::string get_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    int get_int_or(const std::string& key, int fallback) const;

private:
    std::map<std::string, std::string> kv_;
};

RunConfig load_config_file(const std::string& path);

/// Asymptotic-vs-exact error sweep.
struct ComparisonSample {
    double value;       // swept parameter value
    Complex asym_plus;
    Complex asym_minus;
    Complex oracle_plus;   // nearest exact roots
    Complex oracle_minus;
    double abs_err;     // max over the pair
};

struct ComparisonReport {
    std::vector<ComparisonSample> samples;
    double exponent;      // least-squares slope of log err vs log value
    double fit_residual;  // rms residual of the fit
};

ComparisonReport compare_sweep(const GyroSystem2D& sys, const ParamPoint& base,
                               const std::string& sweep_param, const Range& range,
                               bool joint_scale);

/// Column documentation for `--schema`.
std::string column_schema(const std::string& command);

/// Executes one command.  Returns the process exit code: 0 success,
/// 2 configuration error, 3 numerical non-convergence (partial results are
/// still written, with a status column).
int run(const RunConfig& config);

}  // namespace gyrospectra::cli
