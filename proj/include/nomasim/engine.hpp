#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nomasim/access.hpp"
#include "nomasim/rng.hpp"

namespace nomasim::engine {

using access::DeviceId;
using access::OverheadTally;
using access::Scheme;

const char* scheme_name(Scheme scheme);

struct NomaSettings {
  int num_subbands = 4;
  std::uint64_t seed_space = 65536;
  capacity::LoadModel load_model = capacity::LoadModel::EqualShare;
  double subband_tw_product = 0.0;  // symbols per subband per frame; 0 = bandwidth/K * frame
  int per_tx_overhead_bytes = 16;
  int ack_bytes = 2;
};

struct RaSettings {
  int num_preambles = 64;
  double grant_tw_product = 0.0;  // symbols per granted channel; 0 = one resource block
  int overhead_ul_bytes = 59;
  int overhead_dl_bytes = 136;
  int msg1_bytes = 7;
};

struct OmaSettings {
  int num_resources = 10;
  double resource_tw_product = 0.0;  // symbols per resource; 0 = one resource block
};

/// Full description of one experiment. Anything derived (per-subband SNR,
/// resource capacities) comes from these fields alone, so equal configs give
/// equal results.
struct ScenarioConfig {
  Scheme scheme = Scheme::Noma;
  double arrival_rate_lambda = 1.0;  // mean new devices per frame
  double total_bandwidth_hz = 1e6;
  double frame_duration_s = 1e-3;
  double target_rx_snr_db = 20.0;  // per-device received SNR over the noise in its own band
  std::uint32_t msg_bits = 1024;
  int num_frames = 1000;
  int num_replications = 30;
  std::uint64_t master_seed = 1;
  int max_attempts = 10;
  int backoff_max_frames = 0;  // uniform retry backoff in [0, this] extra frames
  NomaSettings noma;
  RaSettings ra;
  OmaSettings oma;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

enum class DeviceStatus { Backlogged, Succeeded, Dropped };

struct DeviceState {
  DeviceId id = 0;
  long arrival_frame = 0;
  int attempts = 0;
  DeviceStatus status = DeviceStatus::Backlogged;
  long completion_frame = -1;  // set when the device succeeds or is dropped
  long next_attempt_frame = 0;
};

struct FrameTallies {
  long arrivals = 0;
  long attempts = 0;
  long successes = 0;
  long collisions = 0;
  long dropped = 0;
  double delay_frames_sum = 0.0;  // over devices that succeeded this frame
  OverheadTally overhead;
};

struct SimulationState {
  std::vector<DeviceState> devices;  // indexed by id
  std::vector<DeviceId> backlog;     // ascending ids of backlogged devices
  long frame = 0;
};

/// Scheme parameters resolved to linear units and symbol counts.
struct ResolvedScheme {
  access::NomaConfig noma;
  access::RaConfig ra;
  int oma_num_resources = 10;
  double oma_resource_rate_bits = 0.0;
};
ResolvedScheme resolve_scheme(const ScenarioConfig& cfg);

/// Poisson arrival count for one frame.
long poisson_arrivals(double mean_per_frame, rng::RandomStream& stream);

/// Advances the simulation by one frame: draws arrivals, runs one round of
/// the configured scheme over the eligible backlog, applies the
/// retry/drop policy, and returns the frame's tallies.
FrameTallies step_frame(SimulationState& sim, const ScenarioConfig& cfg,
                        rng::RandomStream& stream);

/// Raw per-replication counters. arrivals = succeeded + dropped +
/// backlogged_end holds exactly for every replication.
struct ReplicationTally {
  int replication_index = 0;
  long frames = 0;
  long arrivals = 0;
  long succeeded = 0;
  long dropped = 0;
  long backlogged_end = 0;
  long attempts = 0;
  long collisions = 0;
  double delay_frames_sum = 0.0;
  OverheadTally overhead;
  double payload_bytes = 0.0;
};

/// Runs replication `replication_index` on the substream derived from
/// (master_seed, replication_index). Tallies depend only on the config and
/// the index, never on how many other replications exist.
ReplicationTally run_replication(const ScenarioConfig& cfg, int replication_index);

std::vector<ReplicationTally> run_replications(const ScenarioConfig& cfg);

struct MeanCi {
  double mean = 0.0;
  double ci95 = 0.0;  // normal-approximation half width across replications
};

struct MetricsRecord {
  MeanCi mean_success_per_frame;
  MeanCi success_probability;
  MeanCi mean_access_delay_frames;
  MeanCi collision_rate;
  MeanCi overhead_ul_bytes_per_payload_byte;
  MeanCi overhead_dl_bytes_per_payload_byte;
};

/// Means are arithmetic means of the per-replication metrics, accumulated in
/// replication-index order so any permutation of the input gives an
/// identical record. One replication yields ci95 = 0.
MetricsRecord aggregate(std::span<const ReplicationTally> tallies);

/// num_replications independent replications, aggregated. A pure function of
/// the config: equal configs (same master_seed included) give equal records.
MetricsRecord run_scenario(const ScenarioConfig& cfg);

}  // namespace nomasim::engine
