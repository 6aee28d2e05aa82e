#include "nomasim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nomasim/radio.hpp"

namespace nomasim::engine {

const char* scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::Noma: return "noma";
    case Scheme::AcbRa: return "acb_ra";
    case Scheme::Ra: return "ra";
    case Scheme::Fdma: return "fdma";
    case Scheme::Tdma: return "tdma";
  }
  return "unknown";
}

namespace {

[[noreturn]] void reject(const std::string& field, const std::string& what) {
  throw std::invalid_argument("ScenarioConfig." + field + ": " + what);
}

}  // namespace

void ScenarioConfig::validate() const {
  if (!(arrival_rate_lambda >= 0.0) || !std::isfinite(arrival_rate_lambda)) {
    reject("arrival_rate_lambda", "must be finite and >= 0");
  }
  if (!(total_bandwidth_hz > 0.0) || !std::isfinite(total_bandwidth_hz)) {
    reject("total_bandwidth_hz", "must be finite and > 0");
  }
  if (!(frame_duration_s > 0.0) || !std::isfinite(frame_duration_s)) {
    reject("frame_duration_s", "must be finite and > 0");
  }
  if (!std::isfinite(target_rx_snr_db)) reject("target_rx_snr_db", "must be finite");
  if (msg_bits < 1) reject("msg_bits", "must be >= 1");
  if (num_frames < 1) reject("num_frames", "must be >= 1");
  if (num_replications < 1) reject("num_replications", "must be >= 1");
  if (max_attempts < 1) reject("max_attempts", "must be >= 1");
  if (backoff_max_frames < 0) reject("backoff_max_frames", "must be >= 0");
  if (noma.num_subbands < 1) reject("noma.num_subbands", "must be >= 1");
  if (noma.seed_space < 1) reject("noma.seed_space", "must be >= 1");
  if (noma.subband_tw_product < 0.0 || !std::isfinite(noma.subband_tw_product)) {
    reject("noma.subband_tw_product", "must be finite and >= 0");
  }
  if (noma.per_tx_overhead_bytes < 0) reject("noma.per_tx_overhead_bytes", "must be >= 0");
  if (noma.ack_bytes < 0) reject("noma.ack_bytes", "must be >= 0");
  if (ra.num_preambles < 1) reject("ra.num_preambles", "must be >= 1");
  if (ra.grant_tw_product < 0.0 || !std::isfinite(ra.grant_tw_product)) {
    reject("ra.grant_tw_product", "must be finite and >= 0");
  }
  if (ra.overhead_ul_bytes < 0) reject("ra.overhead_ul_bytes", "must be >= 0");
  if (ra.overhead_dl_bytes < 0) reject("ra.overhead_dl_bytes", "must be >= 0");
  if (ra.msg1_bytes < 0) reject("ra.msg1_bytes", "must be >= 0");
  if (oma.num_resources < 1) reject("oma.num_resources", "must be >= 1");
  if (oma.resource_tw_product < 0.0 || !std::isfinite(oma.resource_tw_product)) {
    reject("oma.resource_tw_product", "must be finite and >= 0");
  }
}

ResolvedScheme resolve_scheme(const ScenarioConfig& cfg) {
  const double gamma = radio::db_to_linear(cfg.target_rx_snr_db);
  const double block_symbols = cfg.total_bandwidth_hz * cfg.frame_duration_s;

  ResolvedScheme rs;
  rs.noma.num_subbands = cfg.noma.num_subbands;
  rs.noma.seed_space = cfg.noma.seed_space;
  rs.noma.per_tx_overhead_bytes = cfg.noma.per_tx_overhead_bytes;
  rs.noma.ack_bytes = cfg.noma.ack_bytes;
  rs.noma.load_model.gamma = gamma;
  rs.noma.load_model.tw_product = cfg.noma.subband_tw_product > 0.0
                                      ? cfg.noma.subband_tw_product
                                      : block_symbols / cfg.noma.num_subbands;
  rs.noma.load_model.msg_bits = cfg.msg_bits;
  rs.noma.load_model.model = cfg.noma.load_model;

  rs.ra.num_preambles = cfg.ra.num_preambles;
  rs.ra.msg_bits = cfg.msg_bits;
  rs.ra.grant_tw_product =
      cfg.ra.grant_tw_product > 0.0 ? cfg.ra.grant_tw_product : block_symbols;
  rs.ra.grant_snr = gamma;
  rs.ra.ra_overhead_ul_bytes = cfg.ra.overhead_ul_bytes;
  rs.ra.ra_overhead_dl_bytes = cfg.ra.overhead_dl_bytes;
  rs.ra.msg1_bytes = cfg.ra.msg1_bytes;

  rs.oma_num_resources = cfg.oma.num_resources;
  const double resource_tw =
      cfg.oma.resource_tw_product > 0.0 ? cfg.oma.resource_tw_product : block_symbols;
  rs.oma_resource_rate_bits = resource_tw * std::log2(1.0 + gamma);
  return rs;
}

long poisson_arrivals(double mean_per_frame, rng::RandomStream& stream) {
  if (!(mean_per_frame >= 0.0) || !std::isfinite(mean_per_frame)) {
    throw std::domain_error("poisson_arrivals: mean must be finite and >= 0");
  }
  return rng::poisson(stream, mean_per_frame);
}

FrameTallies step_frame(SimulationState& sim, const ScenarioConfig& cfg,
                        rng::RandomStream& stream) {
  const ResolvedScheme rs = resolve_scheme(cfg);
  const long now = sim.frame;
  FrameTallies tally;

  tally.arrivals = poisson_arrivals(cfg.arrival_rate_lambda, stream);
  for (long i = 0; i < tally.arrivals; ++i) {
    DeviceState dev;
    dev.id = static_cast<DeviceId>(sim.devices.size());
    dev.arrival_frame = now;
    dev.next_attempt_frame = now;
    sim.backlog.push_back(dev.id);
    sim.devices.push_back(dev);
  }

  std::vector<DeviceId> active;
  active.reserve(sim.backlog.size());
  for (const DeviceId id : sim.backlog) {
    if (sim.devices[id].next_attempt_frame <= now) active.push_back(id);
  }
  if (active.empty()) {
    ++sim.frame;
    return tally;
  }
  tally.attempts = static_cast<long>(active.size());

  std::vector<DeviceId> succeeded;
  switch (cfg.scheme) {
    case Scheme::Ra:
    case Scheme::AcbRa: {
      auto round = access::ra_round(active, rs.ra, cfg.scheme == Scheme::AcbRa, stream);
      succeeded = std::move(round.succeeded);
      tally.collisions = static_cast<long>(round.collided.size());
      tally.overhead = round.overhead;
      break;
    }
    case Scheme::Fdma:
    case Scheme::Tdma: {
      auto round = access::oma_round(active, rs.oma_num_resources, rs.oma_resource_rate_bits,
                                     cfg.msg_bits, stream);
      succeeded = std::move(round.succeeded);
      tally.collisions = static_cast<long>(round.collided.size());
      break;
    }
    case Scheme::Noma: {
      const auto outcomes = access::noma_round(active, rs.noma, stream);
      for (const auto& outcome : outcomes) {
        succeeded.insert(succeeded.end(), outcome.decoded_devices.begin(),
                         outcome.decoded_devices.end());
        tally.collisions += static_cast<long>(outcome.collided_devices.size());
      }
      std::sort(succeeded.begin(), succeeded.end());
      tally.overhead = access::overhead_tally(Scheme::Noma, succeeded.size(), 0, rs.ra, rs.noma);
      break;
    }
  }

  tally.successes = static_cast<long>(succeeded.size());
  for (const DeviceId id : succeeded) {
    DeviceState& dev = sim.devices[id];
    ++dev.attempts;
    dev.status = DeviceStatus::Succeeded;
    dev.completion_frame = now;
    tally.delay_frames_sum += static_cast<double>(now - dev.arrival_frame);
  }

  // active and succeeded are both ascending, so walk them in lockstep to
  // handle the devices whose attempt failed.
  std::size_t next_success = 0;
  for (const DeviceId id : active) {
    if (next_success < succeeded.size() && succeeded[next_success] == id) {
      ++next_success;
      continue;
    }
    DeviceState& dev = sim.devices[id];
    ++dev.attempts;
    if (dev.attempts >= cfg.max_attempts) {
      dev.status = DeviceStatus::Dropped;
      dev.completion_frame = now;
      ++tally.dropped;
    } else {
      long backoff = 0;
      if (cfg.backoff_max_frames > 0) {
        backoff = static_cast<long>(
            stream.uniform_below(static_cast<std::uint64_t>(cfg.backoff_max_frames) + 1));
      }
      dev.next_attempt_frame = now + 1 + backoff;
    }
  }

  std::erase_if(sim.backlog, [&](DeviceId id) {
    return sim.devices[id].status != DeviceStatus::Backlogged;
  });

  ++sim.frame;
  return tally;
}

ReplicationTally run_replication(const ScenarioConfig& cfg, int replication_index) {
  cfg.validate();
  rng::RandomStream stream =
      rng::substream(cfg.master_seed, static_cast<std::uint64_t>(replication_index));

  SimulationState sim;
  ReplicationTally tally;
  tally.replication_index = replication_index;
  tally.frames = cfg.num_frames;

  for (int frame = 0; frame < cfg.num_frames; ++frame) {
    const FrameTallies ft = step_frame(sim, cfg, stream);
    tally.arrivals += ft.arrivals;
    tally.succeeded += ft.successes;
    tally.dropped += ft.dropped;
    tally.attempts += ft.attempts;
    tally.collisions += ft.collisions;
    tally.delay_frames_sum += ft.delay_frames_sum;
    tally.overhead.ul_bytes += ft.overhead.ul_bytes;
    tally.overhead.dl_bytes += ft.overhead.dl_bytes;
  }
  tally.backlogged_end = static_cast<long>(sim.backlog.size());
  tally.payload_bytes =
      static_cast<double>(tally.succeeded) * static_cast<double>(cfg.msg_bits) / 8.0;
  return tally;
}

std::vector<ReplicationTally> run_replications(const ScenarioConfig& cfg) {
  cfg.validate();
  std::vector<ReplicationTally> tallies;
  tallies.reserve(static_cast<std::size_t>(cfg.num_replications));
  for (int r = 0; r < cfg.num_replications; ++r) {
    tallies.push_back(run_replication(cfg, r));
  }
  return tallies;
}

namespace {

struct PerRepMetrics {
  double values[6];
};

PerRepMetrics metrics_of(const ReplicationTally& t) {
  PerRepMetrics m{};
  m.values[0] = t.frames > 0 ? static_cast<double>(t.succeeded) / t.frames : 0.0;
  m.values[1] = t.arrivals > 0 ? static_cast<double>(t.succeeded) / t.arrivals : 0.0;
  m.values[2] = t.succeeded > 0 ? t.delay_frames_sum / static_cast<double>(t.succeeded) : 0.0;
  m.values[3] = t.attempts > 0 ? static_cast<double>(t.collisions) / t.attempts : 0.0;
  m.values[4] = t.payload_bytes > 0.0 ? static_cast<double>(t.overhead.ul_bytes) / t.payload_bytes
                                      : 0.0;
  m.values[5] = t.payload_bytes > 0.0 ? static_cast<double>(t.overhead.dl_bytes) / t.payload_bytes
                                      : 0.0;
  return m;
}

MeanCi mean_ci(std::span<const double> values) {
  MeanCi out;
  const auto n = static_cast<double>(values.size());
  double sum = 0.0;
  for (const double v : values) sum += v;
  out.mean = sum / n;
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (const double v : values) ss += (v - out.mean) * (v - out.mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  out.ci95 = 1.96 * sd / std::sqrt(n);
  return out;
}

}  // namespace

MetricsRecord aggregate(std::span<const ReplicationTally> tallies) {
  if (tallies.empty()) throw std::domain_error("aggregate: need at least one replication");

  // Accumulate in replication-index order so the caller's ordering (e.g.
  // concurrent completion order) cannot change the floating-point result.
  std::vector<const ReplicationTally*> ordered;
  ordered.reserve(tallies.size());
  for (const auto& t : tallies) ordered.push_back(&t);
  std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
    return a->replication_index < b->replication_index;
  });

  std::vector<double> series[6];
  for (auto& s : series) s.reserve(tallies.size());
  for (const auto* t : ordered) {
    const PerRepMetrics m = metrics_of(*t);
    for (int i = 0; i < 6; ++i) series[i].push_back(m.values[i]);
  }

  MetricsRecord record;
  record.mean_success_per_frame = mean_ci(series[0]);
  record.success_probability = mean_ci(series[1]);
  record.mean_access_delay_frames = mean_ci(series[2]);
  record.collision_rate = mean_ci(series[3]);
  record.overhead_ul_bytes_per_payload_byte = mean_ci(series[4]);
  record.overhead_dl_bytes_per_payload_byte = mean_ci(series[5]);
  return record;
}

MetricsRecord run_scenario(const ScenarioConfig& cfg) {
  const auto tallies = run_replications(cfg);
  return aggregate(tallies);
}

}  // namespace nomasim::engine
