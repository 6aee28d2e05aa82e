#include "nomasim/radio.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nomasim::radio {

double db_to_linear(double value_db) { return std::pow(10.0, value_db / 10.0); }

double linear_to_db(double value_linear) {
  if (!(value_linear > 0.0)) {
    throw std::domain_error("linear_to_db: value must be > 0");
  }
  return 10.0 * std::log10(value_linear);
}

double shannon_rate(double bandwidth_hz, double snr_linear) {
  if (!(bandwidth_hz >= 0.0) || !(snr_linear >= 0.0)) {
    throw std::domain_error("shannon_rate: bandwidth and SNR must be >= 0");
  }
  return bandwidth_hz * std::log2(1.0 + snr_linear);
}

void TwoUserUplink::validate() const {
  const bool powers_ok = p1 > 0.0 && p2 > 0.0 && noise_power > 0.0 && std::isfinite(p1) &&
                         std::isfinite(p2) && std::isfinite(noise_power);
  const bool gains_ok = h1 >= 0.0 && h2 >= 0.0 && std::isfinite(h1) && std::isfinite(h2);
  const bool bw_ok = bandwidth_hz >= 0.0 && std::isfinite(bandwidth_hz);
  if (!powers_ok || !gains_ok || !bw_ok) {
    throw std::domain_error("TwoUserUplink: powers must be positive, gains non-negative, all finite");
  }
}

void LinkBudget::validate() const {
  const bool ok = channel_gain > 0.0 && max_tx_power > 0.0 && target_rx_power > 0.0 &&
                  std::isfinite(channel_gain) && std::isfinite(max_tx_power) &&
                  std::isfinite(target_rx_power);
  if (!ok) {
    throw std::domain_error("LinkBudget: all fields must be strictly positive and finite");
  }
}

std::optional<double> power_control(const LinkBudget& link) {
  link.validate();
  const double required = link.target_rx_power / link.channel_gain;
  if (required > link.max_tx_power) return std::nullopt;
  return required;
}

long estimate_load(double total_rx_power, double per_device_rx_power, double noise_power) {
  if (!(total_rx_power >= 0.0) || !(noise_power >= 0.0) || !(per_device_rx_power > 0.0)) {
    throw std::domain_error("estimate_load: powers must be >= 0 and per-device power > 0");
  }
  const long estimate = std::lround((total_rx_power - noise_power) / per_device_rx_power);
  return std::max(0L, estimate);
}

double observed_band_power(long device_count, double per_device_rx_power, double noise_power,
                           double tw_product, rng::RandomStream& stream) {
  if (device_count < 0 || !(per_device_rx_power > 0.0) || !(noise_power >= 0.0) ||
      !(tw_product > 0.0)) {
    throw std::domain_error("observed_band_power: invalid measurement parameters");
  }
  const double noise_term = noise_power * (1.0 + stream.normal() / std::sqrt(tw_product));
  const double observed = static_cast<double>(device_count) * per_device_rx_power + noise_term;
  return std::max(0.0, observed);
}

}  // namespace nomasim::radio
