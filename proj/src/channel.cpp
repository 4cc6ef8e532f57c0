#include "gsalloc/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gsalloc/rng.hpp"

namespace gsalloc {

std::vector<std::complex<double>> freq_response(const TapSet& taps,
                                                int subcarriers) {
  if (taps.taps.empty()) {
    throw std::invalid_argument("tap set is empty");
  }
  for (const Tap& tap : taps.taps) {
    if (tap.delay_s < 0.0) {
      throw std::invalid_argument("negative tap delay");
    }
  }
  std::vector<std::complex<double>> response(subcarriers);
  for (int m = 0; m < subcarriers; ++m) {
    std::complex<double> sum = 0.0;
    for (const Tap& tap : taps.taps) {
      const double phase =
          -2.0 * std::numbers::pi * m * taps.subcarrier_spacing_hz * tap.delay_s;
      sum += tap.amplitude * std::polar(1.0, phase);
    }
    response[m] = sum;
  }
  return response;
}

std::vector<double> snr_from_response(std::span<const std::complex<double>> gains,
                                      double rho) {
  if (rho < 0.0) {
    throw std::invalid_argument("power-to-noise ratio must be >= 0");
  }
  std::vector<double> snr(gains.size());
  for (std::size_t m = 0; m < gains.size(); ++m) {
    snr[m] = rho * std::norm(gains[m]);
  }
  return snr;
}

SnrMatrix gen_iid_exp_snr(int users, int subcarriers, double mean_snr,
                          std::uint64_t seed) {
  if (users <= 0 || subcarriers <= 0) {
    throw std::invalid_argument("SNR matrix needs positive dimensions");
  }
  if (!(mean_snr > 0.0)) {
    throw std::invalid_argument("mean SNR must be > 0");
  }
  SnrMatrix snr;
  snr.mean_snr = mean_snr;
  snr.values.assign(users, std::vector<double>(subcarriers));
  for (int k = 0; k < users; ++k) {
    rng::Stream stream(rng::derive(seed, static_cast<std::uint64_t>(k)));
    for (int m = 0; m < subcarriers; ++m) {
      snr.values[k][m] = stream.next_exponential(mean_snr);
    }
  }
  return snr;
}

}  // namespace gsalloc
