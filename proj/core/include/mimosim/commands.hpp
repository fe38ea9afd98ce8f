#ifndef MIMOSIM_COMMANDS_HPP
#define MIMOSIM_COMMANDS_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "mimosim/montecarlo.hpp"

namespace mimosim {

/// Command exit codes shared by the CLI front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitRuntimeError = 2;
inline constexpr int kExitValidationFailed = 3;

/// Everything `mimosim ber` needs: a config file plus command-line overrides
/// (overrides win over config values, which win over MIMOSIM_SEED).
struct BerOptions {
    std::string config_path;
    std::optional<std::size_t> frames;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::optional<std::string> out_csv;
};

struct PlanOptions {
    int n_tot = 0;
    int n_rt = 1;
    double eta_min = 0.0;
    std::optional<std::string> out_csv;
};

struct ValidateOptions {
    int n_t = 1;
    int n_r = 1;
    int n_rt = 1;
    double sigma_h_sq = 0.5;
    double sigma_w_sq = 1.0;
    std::size_t draws = 100000;
    std::uint64_t seed = 1;
    /// Negative-control hook: corrupts sigma_H^2 on the analytic side only.
    bool corrupt_analytic = false;
};

/// Parsed run configuration file (strict JSON; unknown keys are errors).
struct RunConfigFile {
    SimulationPlan plan;
    bool seed_in_config = false;
    std::optional<double> eta_min;
    std::optional<std::string> out_csv;
};

/// Reads and validates a config file; throws std::runtime_error with a
/// message naming the offending key or path.
RunConfigFile load_run_config(const std::string& path);

/// Environment seed override hook (reads MIMOSIM_SEED).
std::optional<std::uint64_t> env_seed_override();

int cmd_ber(const BerOptions& opts, std::ostream& out, std::ostream& err);
int cmd_plan(const PlanOptions& opts, std::ostream& out, std::ostream& err);
int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err);

/// CSV cell for a double: 12 significant digits, locale-independent.
std::string csv_double(double v);

}  // namespace mimosim

#endif
