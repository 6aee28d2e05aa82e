#pragma once

#include <optional>

#include "nomasim/rng.hpp"

namespace nomasim::radio {

/// 10^(x/10).
double db_to_linear(double value_db);

/// 10*log10(x). Throws std::domain_error for x <= 0.
double linear_to_db(double value_linear);

/// AWGN capacity bandwidth_hz * log2(1 + snr) in bits per second.
/// Throws std::domain_error for negative arguments.
double shannon_rate(double bandwidth_hz, double snr_linear);

/// Two transmitters sharing one band at a single receive antenna.
/// Powers in watts (linear), h1/h2 are amplitude gains, so the received
/// SNR of device i is p_i * h_i^2 / noise_power.
struct TwoUserUplink {
  double p1 = 1.0;
  double p2 = 1.0;
  double h1 = 1.0;
  double h2 = 1.0;
  double noise_power = 1.0;
  double bandwidth_hz = 1.0;

  double snr1() const { return p1 * h1 * h1 / noise_power; }
  double snr2() const { return p2 * h2 * h2 / noise_power; }

  /// Throws std::domain_error when powers are not strictly positive and
  /// finite or gains are negative or non-finite.
  void validate() const;
};

/// One device's link: linear power gain of the channel, the device's
/// transmit-power ceiling, and the receive-power target set by the cell.
struct LinkBudget {
  double channel_gain = 1.0;     // linear power gain, > 0
  double max_tx_power = 1.0;     // watts
  double target_rx_power = 1.0;  // watts

  bool coverage_feasible() const { return target_rx_power / channel_gain <= max_tx_power; }

  /// Throws std::domain_error when any field is not strictly positive/finite.
  void validate() const;
};

/// Open-loop power control: the transmit power that lands target_rx_power
/// at the base station, or nullopt when that exceeds max_tx_power (coverage
/// outage; the device cannot transmit this frame).
std::optional<double> power_control(const LinkBudget& link);

/// Device count behind a total-power measurement:
/// round((total_rx_power - noise_power) / per_device_rx_power), clamped to
/// >= 0. All inputs >= 0 and per_device_rx_power > 0, else std::domain_error.
long estimate_load(double total_rx_power, double per_device_rx_power, double noise_power);

/// One power measurement of a band carrying device_count equal-power
/// signals. The noise term fluctuates around noise_power with standard
/// deviation noise_power / sqrt(tw_product), tw_product being the
/// time-bandwidth product of the observation. Clamped to >= 0.
double observed_band_power(long device_count, double per_device_rx_power, double noise_power,
                           double tw_product, rng::RandomStream& stream);

}  // namespace nomasim::radio
