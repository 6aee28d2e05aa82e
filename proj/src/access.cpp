#include "nomasim/access.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nomasim/radio.hpp"

namespace nomasim::access {

RoundSplit preamble_round(std::span<const DeviceId> contenders, int num_preambles,
                          rng::RandomStream& stream) {
  if (num_preambles < 1) throw std::domain_error("preamble_round: num_preambles must be >= 1");

  std::vector<std::uint32_t> picks(contenders.size());
  std::vector<std::uint32_t> occupancy(static_cast<std::size_t>(num_preambles), 0);
  for (std::size_t i = 0; i < contenders.size(); ++i) {
    picks[i] = static_cast<std::uint32_t>(
        stream.uniform_below(static_cast<std::uint64_t>(num_preambles)));
    ++occupancy[picks[i]];
  }

  RoundSplit split;
  for (std::size_t i = 0; i < contenders.size(); ++i) {
    (occupancy[picks[i]] == 1 ? split.winners : split.collided).push_back(contenders[i]);
  }
  std::sort(split.winners.begin(), split.winners.end());
  std::sort(split.collided.begin(), split.collided.end());
  return split;
}

std::vector<DeviceId> acb_gate(std::span<const DeviceId> backlog, double barring_factor,
                               rng::RandomStream& stream) {
  if (!(barring_factor >= 0.0) || !(barring_factor <= 1.0)) {
    throw std::domain_error("acb_gate: barring factor must lie in [0, 1]");
  }
  std::vector<DeviceId> passed;
  for (const DeviceId id : backlog) {
    if (stream.bernoulli(barring_factor)) passed.push_back(id);
  }
  return passed;
}

RaRoundResult ra_round(std::span<const DeviceId> backlog, const RaConfig& cfg, bool acb_enabled,
                       rng::RandomStream& stream) {
  if (cfg.num_preambles < 1) throw std::domain_error("ra_round: num_preambles must be >= 1");

  std::vector<DeviceId> gated;
  std::span<const DeviceId> contenders = backlog;
  if (acb_enabled) {
    const double factor = std::min(
        1.0, static_cast<double>(cfg.num_preambles) /
                 static_cast<double>(std::max<std::size_t>(std::size_t{1}, backlog.size())));
    gated = acb_gate(backlog, factor, stream);
    contenders = gated;
  }

  RoundSplit split = preamble_round(contenders, cfg.num_preambles, stream);

  RaRoundResult result;
  const double grant_bits = cfg.grant_tw_product * std::log2(1.0 + cfg.grant_snr);
  if (static_cast<double>(cfg.msg_bits) <= grant_bits) {
    result.succeeded = std::move(split.winners);
  }
  result.collided = std::move(split.collided);
  result.overhead = overhead_tally(acb_enabled ? Scheme::AcbRa : Scheme::Ra,
                                   result.succeeded.size(), result.collided.size(), cfg, {});
  return result;
}

OmaRoundResult oma_round(std::span<const DeviceId> active, int num_resources,
                         double per_resource_rate_bits, std::uint32_t msg_bits,
                         rng::RandomStream& stream) {
  if (num_resources < 1) throw std::domain_error("oma_round: num_resources must be >= 1");

  std::vector<std::uint32_t> picks(active.size());
  std::vector<std::uint32_t> occupancy(static_cast<std::size_t>(num_resources), 0);
  for (std::size_t i = 0; i < active.size(); ++i) {
    picks[i] = static_cast<std::uint32_t>(
        stream.uniform_below(static_cast<std::uint64_t>(num_resources)));
    ++occupancy[picks[i]];
  }

  const bool rate_ok = static_cast<double>(msg_bits) <= per_resource_rate_bits;
  OmaRoundResult result;
  for (std::size_t i = 0; i < active.size(); ++i) {
    if (occupancy[picks[i]] == 1) {
      if (rate_ok) result.succeeded.push_back(active[i]);
    } else {
      result.collided.push_back(active[i]);
    }
  }
  std::sort(result.succeeded.begin(), result.succeeded.end());
  std::sort(result.collided.begin(), result.collided.end());
  return result;
}

std::vector<SubbandOutcome> noma_round(std::span<const DeviceId> active, const NomaConfig& cfg,
                                       rng::RandomStream& stream) {
  if (cfg.num_subbands < 1) throw std::domain_error("noma_round: num_subbands must be >= 1");
  if (cfg.seed_space < 1) throw std::domain_error("noma_round: seed_space must be >= 1");

  struct Tx {
    std::uint64_t seed;
    DeviceId id;
  };
  std::vector<std::vector<Tx>> by_subband(static_cast<std::size_t>(cfg.num_subbands));
  for (const DeviceId id : active) {
    const auto subband = stream.uniform_below(static_cast<std::uint64_t>(cfg.num_subbands));
    const auto seed = stream.uniform_below(cfg.seed_space);
    by_subband[subband].push_back({seed, id});
  }

  std::vector<SubbandOutcome> outcomes(static_cast<std::size_t>(cfg.num_subbands));
  for (int k = 0; k < cfg.num_subbands; ++k) {
    auto& txs = by_subband[static_cast<std::size_t>(k)];
    SubbandOutcome& out = outcomes[static_cast<std::size_t>(k)];
    out.subband_index = k;

    std::sort(txs.begin(), txs.end(), [](const Tx& a, const Tx& b) {
      return a.seed != b.seed ? a.seed < b.seed : a.id < b.id;
    });
    for (std::size_t i = 0; i < txs.size();) {
      std::size_t j = i + 1;
      while (j < txs.size() && txs[j].seed == txs[i].seed) ++j;
      auto& bucket = (j - i > 1) ? out.collided_devices : out.clean_devices;
      for (std::size_t t = i; t < j; ++t) bucket.push_back(txs[t].id);
      i = j;
    }
    std::sort(out.clean_devices.begin(), out.clean_devices.end());
    std::sort(out.collided_devices.begin(), out.collided_devices.end());

    const long cap =
        capacity::noma_max_load(cfg.load_model, static_cast<long>(out.collided_devices.size()));
    const std::size_t decodable =
        std::min(out.clean_devices.size(), static_cast<std::size_t>(cap));
    out.decoded_devices.assign(out.clean_devices.begin(),
                               out.clean_devices.begin() + static_cast<std::ptrdiff_t>(decodable));

    // Load estimate from one wideband power measurement; powers normalized
    // to unit noise, so per-device receive power equals gamma.
    const double observed =
        radio::observed_band_power(static_cast<long>(txs.size()), cfg.load_model.gamma, 1.0,
                                   cfg.load_model.tw_product, stream);
    out.estimated_load = radio::estimate_load(observed, cfg.load_model.gamma, 1.0);
  }
  return outcomes;
}

OverheadTally overhead_tally(Scheme scheme, std::uint64_t successes, std::uint64_t retransmissions,
                             const RaConfig& ra, const NomaConfig& noma) {
  OverheadTally tally;
  switch (scheme) {
    case Scheme::Ra:
    case Scheme::AcbRa:
      tally.ul_bytes = successes * static_cast<std::uint64_t>(ra.ra_overhead_ul_bytes) +
                       retransmissions * static_cast<std::uint64_t>(ra.msg1_bytes);
      tally.dl_bytes = successes * static_cast<std::uint64_t>(ra.ra_overhead_dl_bytes);
      break;
    case Scheme::Noma:
      tally.ul_bytes = successes * static_cast<std::uint64_t>(noma.per_tx_overhead_bytes);
      tally.dl_bytes = successes * static_cast<std::uint64_t>(noma.ack_bytes);
      break;
    case Scheme::Fdma:
    case Scheme::Tdma:
      break;  // no modeled signalling
  }
  return tally;
}

}  // namespace nomasim::access
