#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nomasim/engine.hpp"

namespace nomasim::cli {

/// Configuration or argument problem; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File or stream problem; the CLI maps it to exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A one-dimensional parameter sweep over a numeric scenario field.
struct SweepSpec {
  std::string field;
  std::vector<double> values;
};

struct ParsedConfig {
  engine::ScenarioConfig scenario;
  std::optional<SweepSpec> sweep;
  std::string output_path;  // empty when the file names none
};

/// Parses the line-oriented `key = value` format: one pair per line, `#`
/// starts a comment, blank lines ignored, unknown or duplicate keys are
/// errors, `scheme` is required. Scheme-specific keys carry a prefix
/// (noma., ra., oma.); `num_preambles` is accepted as an alias for
/// `ra.num_preambles`. Throws ConfigError with the offending line number.
ParsedConfig parse_config(std::string_view text);

/// Assigns a numeric scenario field by its config-file key. Integer-valued
/// fields reject fractional values. Throws ConfigError for unknown fields or
/// out-of-range values.
void apply_field(engine::ScenarioConfig& cfg, const std::string& field, double value);

/// True when `field` names a sweepable numeric scenario field.
bool is_numeric_field(const std::string& field);

/// The resolved configuration as sorted `key=value` lines. Two configs
/// serialize identically iff every field matches.
std::string canonical_text(const engine::ScenarioConfig& cfg);

/// FNV-1a over canonical_text; embedded in every CSV row so a row can be
/// traced back to the exact configuration that produced it.
std::uint64_t config_hash(const engine::ScenarioConfig& cfg);

}  // namespace nomasim::cli
