#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "tiltzeta/grid.hpp"
#include "tiltzeta/zeta.hpp"

namespace tiltzeta {

enum class Command { clt, moments, predict, gonek, verify, bchb };

const char* to_string(Command c);
Command parse_command(const std::string& name);

/// Invalid configuration; the CLI maps it to exit status 64.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFlagged = 2;
inline constexpr int kExitUsage = 64;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "TILTZETA_OUT";

struct RunConfig {
    Command command = Command::clt;
    double T = 1e4;
    /// Polynomial length; default_x(T) when unset.
    std::optional<double> x;
    int k_max = 4;
    double oversample = 6.0;
    /// Gonek shift; a default alpha grid when unset.
    std::optional<double> alpha;
    std::string output_dir;
    Precision precision = Precision::standard;
    int workers = 1;
    QuadratureRule rule = QuadratureRule::simpson;

    /// Throws UsageError.
    void validate() const;
};

/// $TILTZETA_OUT, else "tiltzeta_out".
std::string default_output_dir();

/// Flat `key = value` lines; '#' starts a comment. Throws UsageError on
/// malformed lines or unreadable files.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Keys: command, T, x, kmax, alpha, oversample, workers, out, precision, rule.
/// Throws UsageError for unknown keys or unparsable values.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Runs the command, writes run_manifest.json, results.json and the CSV
/// artifacts into config.output_dir, and returns the exit status. Progress
/// and diagnostics go to `log`.
int run(const RunConfig& config, std::ostream& log);

std::string version_string();

}  // namespace tiltzeta
