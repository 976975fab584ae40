#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ilfb/channel_model.hpp"
#include "ilfb/montecarlo.hpp"
#include "ilfb/schemes.hpp"

namespace ilfb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSelftestFailure = 3;

/// Invalid user input: bad keys, values, or parameter combinations.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

struct ExperimentConfig {
    std::vector<SchemeId> schemes{SchemeId::B};
    SystemParams params;
    QuantizerMode quantizer = QuantizerMode::fixed;
    std::optional<Axis> axis;
    std::vector<double> values;
    std::string out;  ///< empty: standard output
    Format format = Format::csv;

    /// Throws ConfigError. Warnings (K not dividing t) are appended to `warnings`.
    void validate(std::vector<std::string>* warnings = nullptr) const;
};

/// Sets one configuration key from its textual value. Keys mirror the long
/// flag names: scheme, t, alpha, power, epsilon, group-size, delta, trials,
/// seed, quantizer, axis, values, out, format. Throws ConfigError.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Flat `key = value` document, one setting per line; `#` starts a comment.
void apply_config_text(ExperimentConfig& config, std::string_view text);
void apply_config_file(ExperimentConfig& config, const std::string& path);

/// "a:b" (inclusive, step 1), "a:b:step", or a comma-separated list.
std::vector<double> parse_values(std::string_view text);
std::vector<SchemeId> parse_scheme_list(std::string_view text);

/// Shortest round-trip-free rendering used in every output: %.12g, `inf` for
/// infinity, `nan` for NaN.
std::string format_number(double v);

using Cell = std::variant<std::string, double, std::int64_t>;

struct Table {
    std::vector<std::string> comments;  ///< emitted as `# ...` lines in CSV
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void write_csv(std::ostream& os) const;
    /// {"meta": [...comments], "columns": [...], "rows": [{column: value}]}.
    void write_json(std::ostream& os) const;
    void write(std::ostream& os, Format format) const;
};

/// Human-readable summary of the configuration, for header comments.
std::string describe(const ExperimentConfig& config);

Table cmd_analytic(const ExperimentConfig& config);
/// Simulates every scheme at every axis value (or the single configured point).
Table cmd_simulate(const ExperimentConfig& config);

extern const std::vector<std::string_view> kFigureNames;

/// Builds a preset figure's table. `base` supplies trials and seed.
/// Throws ConfigError for an unknown name.
Table cmd_figure(std::string_view name, const ExperimentConfig& base);

struct SelftestOptions {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 20240611;
    /// Flips one bit of every fixed-rate codeword between encoder and decoder.
    bool inject_bit_flip = false;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<CheckResult> cmd_selftest(const SelftestOptions& options);

}  // namespace ilfb::cli
