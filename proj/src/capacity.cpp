#include "nomasim/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nomasim::capacity {

namespace {

void require_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::domain_error("gamma must be finite and > 0");
  }
}

void validate_model(const SubbandLoadModel& model) {
  require_gamma(model.gamma);
  if (!(model.tw_product > 0.0) || !std::isfinite(model.tw_product)) {
    throw std::domain_error("tw_product must be finite and > 0");
  }
  if (model.msg_bits < 1) {
    throw std::domain_error("msg_bits must be >= 1");
  }
}

}  // namespace

std::vector<double> sic_stage_rates(int device_count, double gamma, double bandwidth_hz) {
  if (device_count < 0) throw std::domain_error("device_count must be >= 0");
  require_gamma(gamma);
  if (!(bandwidth_hz >= 0.0)) throw std::domain_error("bandwidth must be >= 0");

  std::vector<double> rates;
  rates.reserve(static_cast<std::size_t>(device_count));
  for (int stage = 1; stage <= device_count; ++stage) {
    const double pending = static_cast<double>(device_count - stage);  // not yet decoded
    rates.push_back(bandwidth_hz * std::log2(1.0 + gamma / (pending * gamma + 1.0)));
  }
  return rates;
}

double sum_capacity(int device_count, double gamma, double bandwidth_hz) {
  if (device_count < 0) throw std::domain_error("device_count must be >= 0");
  require_gamma(gamma);
  if (!(bandwidth_hz >= 0.0)) throw std::domain_error("bandwidth must be >= 0");
  return bandwidth_hz * std::log2(1.0 + static_cast<double>(device_count) * gamma);
}

RegionVertices noma_region_vertices(double snr1, double snr2) {
  require_gamma(snr1);
  require_gamma(snr2);
  RegionVertices v;
  v.a = {std::log2(1.0 + snr1), std::log2(1.0 + snr2 / (1.0 + snr1))};
  v.b = {std::log2(1.0 + snr1 / (1.0 + snr2)), std::log2(1.0 + snr2)};
  return v;
}

double oma_share_rate(double alpha, double snr) {
  if (alpha <= 0.0) return 0.0;
  return alpha * std::log2(1.0 + snr / alpha);
}

RatePair oma_region_point(double alpha, double snr1, double snr2) {
  if (!(alpha >= 0.0) || !(alpha <= 1.0)) {
    throw std::domain_error("oma_region_point: alpha must lie in [0, 1]");
  }
  require_gamma(snr1);
  require_gamma(snr2);
  return {oma_share_rate(alpha, snr1), oma_share_rate(1.0 - alpha, snr2)};
}

long noma_max_load(const SubbandLoadModel& model, long collided_count) {
  validate_model(model);
  if (collided_count < 0) throw std::domain_error("collided_count must be >= 0");

  const double gamma = model.gamma;
  const double tw = model.tw_product;
  const double msg = static_cast<double>(model.msg_bits);
  const double jam = static_cast<double>(collided_count) * gamma + 1.0;

  const auto feasible = [&](long n) {
    const double dn = static_cast<double>(n);
    if (model.model == LoadModel::EqualShare) {
      return dn * msg <= tw * std::log2(1.0 + dn * gamma / jam);
    }
    return msg <= tw * std::log2(1.0 + gamma / ((dn - 1.0) * gamma + jam));
  };

  if (!feasible(1)) return 0;
  // The feasible set is a prefix of the integers (linear demand against a
  // concave supply for EqualShare; a stage SINR that shrinks with n for
  // StageStrict), so gallop to the first failure and bisect the boundary.
  long lo = 1;
  long hi = 2;
  while (feasible(hi)) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

namespace {

// Unique w in [0, w_max] with oma-style rate w*log2(1+rho/w) equal to
// target. The rate is increasing in w from 0 toward rho/ln2, and the caller
// guarantees the target is reachable at w_max.
double solve_share(double rho_hz, double target_rate, double w_max) {
  double lo = 0.0;
  double hi = w_max;
  for (int i = 0; i < 200 && (hi - lo) > 1e-16 * w_max; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double rate = mid * std::log2(1.0 + rho_hz / mid);
    (rate < target_rate ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> fairness_allocate(std::span<const double> snr_densities_hz,
                                      double total_bandwidth_hz) {
  if (snr_densities_hz.empty()) {
    throw std::domain_error("fairness_allocate: need at least one device");
  }
  if (!(total_bandwidth_hz > 0.0) || !std::isfinite(total_bandwidth_hz)) {
    throw std::domain_error("fairness_allocate: total bandwidth must be finite and > 0");
  }
  for (const double rho : snr_densities_hz) {
    if (!(rho > 0.0) || !std::isfinite(rho)) {
      throw std::domain_error("fairness_allocate: densities must be finite and > 0");
    }
  }

  const double w_total = total_bandwidth_hz;
  // Highest common rate any single device could reach with the whole band;
  // above it the weakest device cannot be served at all.
  double rate_hi = std::numeric_limits<double>::infinity();
  for (const double rho : snr_densities_hz) {
    rate_hi = std::min(rate_hi, w_total * std::log2(1.0 + rho / w_total));
  }

  // Total demanded bandwidth grows with the common rate; bisect until the
  // demand matches the band.
  double lo = 0.0;
  double hi = rate_hi;
  for (int i = 0; i < 200 && (hi - lo) > 1e-15 * rate_hi; ++i) {
    const double rate = 0.5 * (lo + hi);
    double demand = 0.0;
    for (const double rho : snr_densities_hz) {
      demand += solve_share(rho, rate, w_total);
    }
    (demand <= w_total ? lo : hi) = rate;
  }

  const double rate = 0.5 * (lo + hi);
  std::vector<double> shares(snr_densities_hz.size());
  for (std::size_t i = 0; i < shares.size(); ++i) {
    shares[i] = solve_share(snr_densities_hz[i], rate, w_total);
  }
  const double sum = std::accumulate(shares.begin(), shares.end(), 0.0);
  if (sum > 0.0) {
    const double scale = w_total / sum;
    for (double& w : shares) w *= scale;
  }
  return shares;
}

}  // namespace nomasim::capacity
