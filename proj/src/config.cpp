#include "nomasim/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include "nomasim/csv.hpp"

namespace nomasim::cli {

namespace {

using engine::ScenarioConfig;

std::string_view trim(std::string_view text) {
  const auto* ws = " \t\r\f\v";
  const auto begin = text.find_first_not_of(ws);
  if (begin == std::string_view::npos) return {};
  const auto end = text.find_last_not_of(ws);
  return text.substr(begin, end - begin + 1);
}

[[noreturn]] void fail_line(int line, const std::string& what) {
  throw ConfigError("line " + std::to_string(line) + ": " + what);
}

double parse_double(std::string_view raw, const std::string& key, int line) {
  double value = 0.0;
  const auto* end = raw.data() + raw.size();
  const auto res = std::from_chars(raw.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(value)) {
    fail_line(line, "invalid value for '" + key + "': '" + std::string(raw) + "'");
  }
  return value;
}

std::uint64_t parse_u64(std::string_view raw, const std::string& key, int line) {
  std::uint64_t value = 0;
  const auto* end = raw.data() + raw.size();
  const auto res = std::from_chars(raw.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    fail_line(line, "invalid value for '" + key + "': '" + std::string(raw) + "'");
  }
  return value;
}

enum class Kind { Double, Int, U64 };

struct FieldDef {
  std::string_view key;
  Kind kind;
  double min_value;
  bool min_exclusive;
  void (*assign)(ScenarioConfig&, double);
  void (*assign_u64)(ScenarioConfig&, std::uint64_t);
};

constexpr std::array<FieldDef, 22> kNumericFields{{
    {"arrival_rate_lambda", Kind::Double, 0.0, false,
     [](ScenarioConfig& c, double v) { c.arrival_rate_lambda = v; }, nullptr},
    {"total_bandwidth_hz", Kind::Double, 0.0, true,
     [](ScenarioConfig& c, double v) { c.total_bandwidth_hz = v; }, nullptr},
    {"frame_duration_s", Kind::Double, 0.0, true,
     [](ScenarioConfig& c, double v) { c.frame_duration_s = v; }, nullptr},
    {"target_rx_snr_db", Kind::Double, -1e9, false,
     [](ScenarioConfig& c, double v) { c.target_rx_snr_db = v; }, nullptr},
    {"msg_bits", Kind::Int, 1.0, false,
     [](ScenarioConfig& c, double v) { c.msg_bits = static_cast<std::uint32_t>(v); }, nullptr},
    {"num_frames", Kind::Int, 1.0, false,
     [](ScenarioConfig& c, double v) { c.num_frames = static_cast<int>(v); }, nullptr},
    {"num_replications", Kind::Int, 1.0, false,
     [](ScenarioConfig& c, double v) { c.num_replications = static_cast<int>(v); }, nullptr},
    {"max_attempts", Kind::Int, 1.0, false,
     [](ScenarioConfig& c, double v) { c.max_attempts = static_cast<int>(v); }, nullptr},
    {"backoff_max_frames", Kind::Int, 0.0, false,
     [](ScenarioConfig& c, double v) { c.backoff_max_frames = static_cast<int>(v); }, nullptr},
    {"master_seed", Kind::U64, 0.0, false,
     [](ScenarioConfig& c, double v) { c.master_seed = static_cast<std::uint64_t>(v); },
     [](ScenarioConfig& c, std::uint64_t v) { c.master_seed = v; }},
    {"noma.num_subbands", Kind::Int, 1.0, false,
     [](ScenarioConfig& c, double v) { c.noma.num_subbands = static_cast<int>(v); }, nullptr},
    {"noma.seed_space", Kind::U64, 1.0, false,
     [](ScenarioConfig& c, double v) { c.noma.seed_space = static_cast<std::uint64_t>(v); },
     [](ScenarioConfig& c, std::uint64_t v) { c.noma.seed_space = v; }},
    {"noma.subband_tw_product", Kind::Double, 0.0, false,
     [](ScenarioConfig& c, double v) { c.noma.subband_tw_product = v; }, nullptr},
    {"noma.per_tx_overhead_bytes", Kind::Int, 0.0, false,
     [](ScenarioConfig& c, double v) { c.noma.per_tx_overhead_bytes = static_cast<int>(v); },
     nullptr},
    {"noma.ack_bytes", Kind::Int, 0.0, false,
     [](ScenarioConfig& c, double v) { c.noma.ack_bytes = static_cast<int>(v); }, nullptr},
    {"ra.num_preambles", Kind::Int, 1.0, false,
     [](ScenarioConfig& c, double v) { c.ra.num_preambles = static_cast<int>(v); }, nullptr},
    {"ra.grant_tw_product", Kind::Double, 0.0, false,
     [](ScenarioConfig& c, double v) { c.ra.grant_tw_product = v; }, nullptr},
    {"ra.overhead_ul_bytes", Kind::Int, 0.0, false,
     [](ScenarioConfig& c, double v) { c.ra.overhead_ul_bytes = static_cast<int>(v); }, nullptr},
    {"ra.overhead_dl_bytes", Kind::Int, 0.0, false,
     [](ScenarioConfig& c, double v) { c.ra.overhead_dl_bytes = static_cast<int>(v); }, nullptr},
    {"ra.msg1_bytes", Kind::Int, 0.0, false,
     [](ScenarioConfig& c, double v) { c.ra.msg1_bytes = static_cast<int>(v); }, nullptr},
    {"oma.num_resources", Kind::Int, 1.0, false,
     [](ScenarioConfig& c, double v) { c.oma.num_resources = static_cast<int>(v); }, nullptr},
    {"oma.resource_tw_product", Kind::Double, 0.0, false,
     [](ScenarioConfig& c, double v) { c.oma.resource_tw_product = v; }, nullptr},
}};

const FieldDef* find_field(std::string_view key) {
  for (const auto& def : kNumericFields) {
    if (def.key == key) return &def;
  }
  return nullptr;
}

void check_range(const FieldDef& def, double value, const std::string& key, int line) {
  const bool ok = def.min_exclusive ? value > def.min_value : value >= def.min_value;
  if (!ok) {
    fail_line(line, "value for '" + key + "' out of range: " + csv::format_double(value));
  }
}

engine::Scheme parse_scheme(std::string_view raw, int line) {
  if (raw == "noma") return engine::Scheme::Noma;
  if (raw == "acb_ra") return engine::Scheme::AcbRa;
  if (raw == "ra") return engine::Scheme::Ra;
  if (raw == "fdma") return engine::Scheme::Fdma;
  if (raw == "tdma") return engine::Scheme::Tdma;
  fail_line(line, "invalid value for 'scheme': '" + std::string(raw) +
                      "' (expected noma|acb_ra|ra|fdma|tdma)");
}

capacity::LoadModel parse_load_model(std::string_view raw, int line) {
  if (raw == "equal_share") return capacity::LoadModel::EqualShare;
  if (raw == "stage_strict") return capacity::LoadModel::StageStrict;
  fail_line(line, "invalid value for 'noma.load_model': '" + std::string(raw) +
                      "' (expected equal_share|stage_strict)");
}

std::string shortest_double(double value) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

}  // namespace

ParsedConfig parse_config(std::string_view text) {
  ParsedConfig parsed;
  std::set<std::string, std::less<>> seen;
  bool scheme_seen = false;
  std::optional<std::string> sweep_field;
  std::optional<std::vector<double>> sweep_values;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line =
        nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto comment = line.find('#'); comment != std::string_view::npos) {
      line = line.substr(0, comment);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail_line(line_no, "expected 'key = value'");
    std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) fail_line(line_no, "missing key before '='");
    if (value.empty()) fail_line(line_no, "missing value for '" + key + "'");
    if (key == "num_preambles") key = "ra.num_preambles";  // documented alias
    if (!seen.insert(key).second) fail_line(line_no, "duplicate key '" + key + "'");

    if (key == "scheme") {
      parsed.scenario.scheme = parse_scheme(value, line_no);
      scheme_seen = true;
    } else if (key == "noma.load_model") {
      parsed.scenario.noma.load_model = parse_load_model(value, line_no);
    } else if (key == "sweep.field") {
      sweep_field = std::string(value);
    } else if (key == "sweep.values") {
      std::vector<double> values;
      std::size_t start = 0;
      const std::string list(value);
      while (start <= list.size()) {
        const auto comma = list.find(',', start);
        const auto piece =
            trim(std::string_view(list).substr(start, comma == std::string::npos
                                                          ? std::string::npos
                                                          : comma - start));
        if (piece.empty()) fail_line(line_no, "empty entry in 'sweep.values'");
        values.push_back(parse_double(piece, "sweep.values", line_no));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      sweep_values = std::move(values);
    } else if (key == "output") {
      parsed.output_path = std::string(value);
    } else if (const FieldDef* def = find_field(key)) {
      if (def->kind == Kind::U64) {
        def->assign_u64(parsed.scenario, parse_u64(value, key, line_no));
      } else {
        const double v = parse_double(value, key, line_no);
        if (def->kind == Kind::Int && v != std::floor(v)) {
          fail_line(line_no, "value for '" + key + "' must be an integer");
        }
        check_range(*def, v, key, line_no);
        def->assign(parsed.scenario, v);
      }
    } else {
      fail_line(line_no, "unknown key '" + key + "'");
    }
  }

  if (!scheme_seen) throw ConfigError("missing required key 'scheme'");
  if (sweep_field.has_value() != sweep_values.has_value()) {
    throw ConfigError("sweep.field and sweep.values must be given together");
  }
  if (sweep_field) {
    if (!is_numeric_field(*sweep_field)) {
      throw ConfigError("sweep.field '" + *sweep_field + "' is not a sweepable numeric field");
    }
    if (sweep_values->empty()) throw ConfigError("sweep.values must not be empty");
    parsed.sweep = SweepSpec{std::move(*sweep_field), std::move(*sweep_values)};
  }
  return parsed;
}

bool is_numeric_field(const std::string& field) { return find_field(field) != nullptr; }

void apply_field(engine::ScenarioConfig& cfg, const std::string& field, double value) {
  const FieldDef* def = find_field(field);
  if (def == nullptr) {
    throw ConfigError("unknown or non-numeric field '" + field + "'");
  }
  if (!std::isfinite(value)) {
    throw ConfigError("value for '" + field + "' must be finite");
  }
  if (def->kind != Kind::Double && value != std::floor(value)) {
    throw ConfigError("value for '" + field + "' must be an integer");
  }
  const bool ok = def->min_exclusive ? value > def->min_value : value >= def->min_value;
  if (!ok) {
    throw ConfigError("value for '" + field + "' out of range: " + csv::format_double(value));
  }
  def->assign(cfg, value);
}

std::string canonical_text(const engine::ScenarioConfig& cfg) {
  std::map<std::string, std::string> entries;
  entries["scheme"] = engine::scheme_name(cfg.scheme);
  entries["arrival_rate_lambda"] = shortest_double(cfg.arrival_rate_lambda);
  entries["total_bandwidth_hz"] = shortest_double(cfg.total_bandwidth_hz);
  entries["frame_duration_s"] = shortest_double(cfg.frame_duration_s);
  entries["target_rx_snr_db"] = shortest_double(cfg.target_rx_snr_db);
  entries["msg_bits"] = csv::format_u64(cfg.msg_bits);
  entries["num_frames"] = csv::format_long(cfg.num_frames);
  entries["num_replications"] = csv::format_long(cfg.num_replications);
  entries["master_seed"] = csv::format_u64(cfg.master_seed);
  entries["max_attempts"] = csv::format_long(cfg.max_attempts);
  entries["backoff_max_frames"] = csv::format_long(cfg.backoff_max_frames);
  entries["noma.num_subbands"] = csv::format_long(cfg.noma.num_subbands);
  entries["noma.seed_space"] = csv::format_u64(cfg.noma.seed_space);
  entries["noma.load_model"] =
      cfg.noma.load_model == capacity::LoadModel::EqualShare ? "equal_share" : "stage_strict";
  entries["noma.subband_tw_product"] = shortest_double(cfg.noma.subband_tw_product);
  entries["noma.per_tx_overhead_bytes"] = csv::format_long(cfg.noma.per_tx_overhead_bytes);
  entries["noma.ack_bytes"] = csv::format_long(cfg.noma.ack_bytes);
  entries["ra.num_preambles"] = csv::format_long(cfg.ra.num_preambles);
  entries["ra.grant_tw_product"] = shortest_double(cfg.ra.grant_tw_product);
  entries["ra.overhead_ul_bytes"] = csv::format_long(cfg.ra.overhead_ul_bytes);
  entries["ra.overhead_dl_bytes"] = csv::format_long(cfg.ra.overhead_dl_bytes);
  entries["ra.msg1_bytes"] = csv::format_long(cfg.ra.msg1_bytes);
  entries["oma.num_resources"] = csv::format_long(cfg.oma.num_resources);
  entries["oma.resource_tw_product"] = shortest_double(cfg.oma.resource_tw_product);

  std::string out;
  for (const auto& [key, value] : entries) {
    out += key;
    out += '=';
    out += value;
    out += '\n';
  }
  return out;
}

std::uint64_t config_hash(const engine::ScenarioConfig& cfg) {
  return csv::fnv1a64(canonical_text(cfg));
}

}  // namespace nomasim::cli
