#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nomasim/capacity.hpp"
#include "nomasim/rng.hpp"

namespace nomasim::access {

using DeviceId = std::uint32_t;

enum class Scheme { Noma, AcbRa, Ra, Fdma, Tdma };

/// Parameters of the four-step random-access baseline. The handshake is
/// abstracted to success-on-unique-preamble plus a data-grant rate check;
/// message 2..4 appear only as overhead bytes.
struct RaConfig {
  int num_preambles = 64;
  std::uint32_t msg_bits = 1024;
  double grant_tw_product = 1000.0;  // symbols granted to each winner
  double grant_snr = 100.0;          // received SNR on the granted channel, linear
  int ra_overhead_ul_bytes = 59;     // signalling per delivered message, uplink
  int ra_overhead_dl_bytes = 136;    // signalling per delivered message, downlink
  int msg1_bytes = 7;                // preamble cost charged per failed attempt
};

/// Parameters of one grant-free transmission round: devices draw a subband
/// and a code seed uniformly at random; two devices sharing both are a
/// collision the receiver cannot separate.
struct NomaConfig {
  int num_subbands = 4;
  std::uint64_t seed_space = 65536;
  capacity::SubbandLoadModel load_model;
  int per_tx_overhead_bytes = 16;  // terminal identity + seed, uplink
  int ack_bytes = 2;               // acknowledgment per decoded device, downlink
};

/// Result of one subband after a grant-free round. clean and collided
/// partition the devices that picked the subband; decoded is the prefix of
/// clean (ascending id, the cancellation order for equal receive powers)
/// that fits the load model.
struct SubbandOutcome {
  int subband_index = 0;
  std::vector<DeviceId> clean_devices;
  std::vector<DeviceId> collided_devices;
  std::vector<DeviceId> decoded_devices;
  long estimated_load = 0;
};

struct OverheadTally {
  std::uint64_t ul_bytes = 0;
  std::uint64_t dl_bytes = 0;
};

struct RoundSplit {
  std::vector<DeviceId> winners;
  std::vector<DeviceId> collided;
};

/// Each contender draws one of num_preambles uniformly i.i.d. (in input
/// order); winners hold a preamble nobody else picked. Outputs sorted by id.
RoundSplit preamble_round(std::span<const DeviceId> contenders, int num_preambles,
                          rng::RandomStream& stream);

/// Independent pass with probability barring_factor per device, input order.
std::vector<DeviceId> acb_gate(std::span<const DeviceId> backlog, double barring_factor,
                               rng::RandomStream& stream);

struct RaRoundResult {
  std::vector<DeviceId> succeeded;
  std::vector<DeviceId> collided;
  OverheadTally overhead;
};

/// One random-access opportunity over the whole backlog. With barring
/// enabled the gate uses the load-aware factor min(1, M / backlog), i.e. the
/// barring controller is granted the true backlog size. Winners succeed when
/// the message also fits the granted channel (it does at default settings).
RaRoundResult ra_round(std::span<const DeviceId> backlog, const RaConfig& cfg, bool acb_enabled,
                       rng::RandomStream& stream);

struct OmaRoundResult {
  std::vector<DeviceId> succeeded;
  std::vector<DeviceId> collided;
};

/// Uncoordinated orthogonal access: every active device picks one of
/// num_resources uniformly i.i.d. and succeeds iff it is alone there and
/// msg_bits fits per_resource_rate_bits.
OmaRoundResult oma_round(std::span<const DeviceId> active, int num_resources,
                         double per_resource_rate_bits, std::uint32_t msg_bits,
                         rng::RandomStream& stream);

/// One grant-free round: (subband, seed) draws per device in input order,
/// then per subband (ascending index) collision splitting, decoding up to
/// the load model's maximum, and a load estimate from one noisy power
/// measurement (noise normalized to 1, per-device receive power = gamma).
std::vector<SubbandOutcome> noma_round(std::span<const DeviceId> active, const NomaConfig& cfg,
                                       rng::RandomStream& stream);

/// Signalling bytes for a frame: RA-style schemes charge the handshake per
/// delivered message plus msg1 per failed attempt; grant-free charges the
/// identity+seed preface per delivered message uplink and the acknowledgment
/// downlink. Uncoordinated FDMA/TDMA carry no modeled signalling.
OverheadTally overhead_tally(Scheme scheme, std::uint64_t successes, std::uint64_t retransmissions,
                             const RaConfig& ra, const NomaConfig& noma);

}  // namespace nomasim::access
