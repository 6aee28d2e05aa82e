#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace nomasim::capacity {

/// Rates of a two-device operating point, bits/s/Hz at unit bandwidth.
struct RatePair {
  double r1 = 0.0;
  double r2 = 0.0;
};

/// How many equal-power devices a subband supports in one frame.
///
/// EqualShare: the clean devices jointly spend the decodable sum rate, so n
/// devices fit when n*msg_bits <= tw*log2(1 + n*gamma / (c*gamma + 1)).
///
/// StageStrict: every device must fit through the worst (first-decoded)
/// stage, so n fit when msg_bits <= tw*log2(1 + gamma / ((n-1+c)*gamma + 1)).
enum class LoadModel { EqualShare, StageStrict };

struct SubbandLoadModel {
  double gamma = 100.0;       // per-device received SNR on the subband, linear
  double tw_product = 250.0;  // symbols carried by one subband in one frame
  std::uint32_t msg_bits = 1024;
  LoadModel model = LoadModel::EqualShare;
};

/// Per-stage rates of successive cancellation over device_count equal-power
/// devices, in decoding order. Stage j sees the not-yet-decoded devices as
/// noise: bandwidth_hz * log2(1 + gamma / ((n-j)*gamma + 1)). The sequence
/// is strictly increasing and telescopes to sum_capacity. device_count 0
/// returns an empty sequence.
std::vector<double> sic_stage_rates(int device_count, double gamma, double bandwidth_hz);

/// bandwidth_hz * log2(1 + device_count * gamma), bits per second.
double sum_capacity(int device_count, double gamma, double bandwidth_hz);

/// The two corner points of the two-device multiple-access region at unit
/// bandwidth. Vertex A: device 1 decoded last, so it reaches its single-user
/// rate while device 2 is decoded against device 1's full interference.
/// Vertex B is the reverse decoding order. Both vertices share the
/// coordinate sum log2(1 + snr1 + snr2).
struct RegionVertices {
  RatePair a;
  RatePair b;
};
RegionVertices noma_region_vertices(double snr1, double snr2);

/// Rate of a device given the bandwidth fraction alpha of a unit band:
/// alpha * log2(1 + snr / alpha), extended with 0 at alpha = 0.
double oma_share_rate(double alpha, double snr);

/// Orthogonal-split operating point: device 1 gets fraction alpha, device 2
/// the rest. Throws std::domain_error for alpha outside [0, 1]. The
/// coordinate sum never exceeds log2(1 + snr1 + snr2); it touches that bound
/// only at alpha = snr1 / (snr1 + snr2).
RatePair oma_region_point(double alpha, double snr1, double snr2);

/// Largest clean-device count the subband supports under the given model
/// when collided_count unresolvable devices jam it as constant interference.
/// Feasibility is prefix-closed in n, so the maximum is located by
/// galloping followed by bisection. Returns 0 when even one device does
/// not fit.
long noma_max_load(const SubbandLoadModel& model, long collided_count);

/// Equal-rate bandwidth split. snr_densities_hz holds each device's received
/// power over noise density (units Hz); the returned shares are positive,
/// sum to total_bandwidth_hz, and give every device the same rate
/// W_i * log2(1 + rho_i / W_i). Solved by bisection on the common rate with
/// an inner bisection per device. Throws std::domain_error on empty input or
/// non-positive parameters.
std::vector<double> fairness_allocate(std::span<const double> snr_densities_hz,
                                      double total_bandwidth_hz);

}  // namespace nomasim::capacity
