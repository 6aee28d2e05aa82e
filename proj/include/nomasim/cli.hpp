#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "nomasim/config.hpp"

namespace nomasim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitIoError = 3;

inline constexpr std::string_view kScenarioCsvHeader =
    "scheme,swept_field,swept_value,mean_success_per_frame,ci95,success_probability,"
    "mean_access_delay_frames,collision_rate,overhead_ul_per_payload,overhead_dl_per_payload,"
    "master_seed,config_hash";

struct RunOptions {
  std::string config_path;
  std::string out_path;  // overrides the config file's `output`
  std::optional<std::uint64_t> seed;
  std::optional<int> replications;
};

struct MaxloadOptions {
  double gamma_db_min = 0.0;
  double gamma_db_max = 30.0;
  double gamma_db_step = 1.0;
  double tw_product = 1000.0;
  std::uint32_t msg_bits = 1024;
  long collided = 0;
  capacity::LoadModel model = capacity::LoadModel::EqualShare;
  std::string out_path;
};

/// One CSV data row per scenario (the base config, or one per sweep value).
/// Rows are emitted in sweep order; every row carries the master seed and the
/// hash of the exact config it was produced from. Throws ConfigError.
void write_scenario_csv(std::ostream& os, const engine::ScenarioConfig& base,
                        const std::optional<SweepSpec>& sweep);

/// Two-device rate region: the two corner points plus alpha_steps orthogonal
/// split samples for external plotting. Throws ConfigError on bad arguments.
void write_region_csv(std::ostream& os, double snr1_db, double snr2_db, int alpha_steps);

/// Supportable clean-device count per subband, tabulated over a received-SNR
/// grid in dB. Throws ConfigError on bad arguments.
void write_maxload_csv(std::ostream& os, const MaxloadOptions& options);

/// Command wrappers around the writers: read/parse inputs, apply overrides,
/// write the output file, and map errors to exit codes (0 success, 2 config
/// error, 3 I/O error). sweep_required distinguishes `sweep` from `run`.
int run_command(const RunOptions& options, bool sweep_required);
int region_command(double snr1_db, double snr2_db, int alpha_steps, const std::string& out_path);
int maxload_command(const MaxloadOptions& options);

}  // namespace nomasim::cli
