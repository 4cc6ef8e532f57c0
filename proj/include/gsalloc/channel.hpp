#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace gsalloc {

using Matrix = std::vector<std::vector<double>>;

// One multipath component: complex amplitude at the sampling instant and
// its propagation delay.
struct Tap {
  std::complex<double> amplitude;
  double delay_s = 0.0;
};

// Multipath channel description. The tap amplitudes are taken at a fixed
// sampling instant; time evolution is the caller's responsibility.
struct TapSet {
  std::vector<Tap> taps;
  double subcarrier_spacing_hz = 0.0;  // delta f
  double symbol_period_s = 0.0;        // T_s
};

// Sampled frequency response: H_m = sum_l h_l * exp(-j*2*pi*m*df*tau_l)
// for m = 0..subcarriers-1.
std::vector<std::complex<double>> freq_response(const TapSet& taps,
                                                int subcarriers);

// Per-subcarrier SNR: rho * |H_m|^2.
std::vector<double> snr_from_response(std::span<const std::complex<double>> gains,
                                      double rho);

// Instantaneous per-subcarrier SNR for all users in one slot.
struct SnrMatrix {
  Matrix values;          // users x subcarriers, linear scale
  double mean_snr = 0.0;  // nominal average used for generation

  int users() const { return static_cast<int>(values.size()); }
  int subcarriers() const {
    return values.empty() ? 0 : static_cast<int>(values.front().size());
  }
};

// Rayleigh fading with power control folded in: each entry is drawn i.i.d.
// exponential with the given mean. Row k uses the substream derive(seed, k),
// so the output is byte-identical for identical (users, subcarriers,
// mean_snr, seed).
SnrMatrix gen_iid_exp_snr(int users, int subcarriers, double mean_snr,
                          std::uint64_t seed);

}  // namespace gsalloc
