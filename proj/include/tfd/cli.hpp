// cli.hpp — configuration, serialization and subcommands behind the tfdcx tool.

#pragma once

#include "tfd/analysis.hpp"
#include "tfd/complexity.hpp"
#include "tfd/model.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tfd::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNumeric = 2 };

enum class OutputFormat { csv, json };

// Flat key=value settings. Keys use the long flag names without dashes
// prefix, e.g. "omega-ref1"; underscores in config files are accepted too.
using Settings = std::map<std::string, std::string>;

// Lines "key = value"; blank lines and '#' comments ignored. Throws ParameterError
// on malformed lines or unknown keys.
Settings parse_config(std::istream& in, std::string_view origin);
Settings load_config_file(const std::string& path);

std::string normalize_key(std::string_view key);
bool is_known_key(std::string_view key);

struct RunConfig {
    OscillatorParams params{1.0, 1.0, 0.1, 0.0};
    double beta = 1.0;
    ReferenceFrequencies refs{};
    std::optional<double> t0, t1;
    std::optional<std::size_t> samples;
    std::string out;
    OutputFormat format = OutputFormat::csv;

    int n_max = 2;
    int k_max = 2;

    std::optional<std::vector<double>> betas;  // sweep grid; unset means {beta}
    std::string grid_path;      // sweep grid file with beta,omega0,omegaC columns
    unsigned workers = 1;
    std::optional<double> window;
    std::size_t window_samples = 0;
};

// Merges built-in defaults < config file < flags and validates the model.
RunConfig resolve(const Settings& file_settings, const Settings& flag_settings);

// "min:max:count", log-spaced and inclusive of both ends.
std::vector<double> parse_beta_log(std::string_view spec);
std::vector<double> parse_list(std::string_view spec);

// Shortest representation that reads back to the same double.
std::string format_double(double value);

void write_series_csv(std::ostream& out, const std::vector<ComplexitySample>& samples);
std::vector<ComplexitySample> read_series_csv(std::istream& in);
void write_series_json(std::ostream& out, const std::vector<ComplexitySample>& samples);

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& rows);
std::vector<SweepPoint> read_sweep_csv(std::istream& in);
void write_sweep_json(std::ostream& out, const std::vector<SweepPoint>& rows);

std::vector<GridPoint> read_grid_csv(std::istream& in);

inline constexpr std::string_view kSeriesHeader = "t,C,Cdot";
inline constexpr std::string_view kSweepHeader =
    "beta,omega0,omegaC,omegaR1,omegaR2,cMax,rateMax,internalEnergy,lloydRhs,lloydSatisfied,error";
inline constexpr std::string_view kSpectrumHeader = "n,k,l,E";

int cmd_spectrum(const RunConfig& config, std::ostream& log);
int cmd_complexity(const RunConfig& config, std::ostream& log);
int cmd_sweep(const RunConfig& config, std::ostream& log);
int cmd_period(const RunConfig& config, std::ostream& log);

// Full command line: parses, dispatches and maps exceptions to exit codes.
// Summaries go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace tfd::cli
