#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "eegpnn/fft.hpp"
#include "eegpnn/segment.hpp"

namespace eegpnn {

// 15 bands of 2 Hz tiling [2, 32) Hz.
inline constexpr std::size_t kNumBands = 15;
inline constexpr double kBandFloorHz = 2.0;
inline constexpr double kBandWidthHz = 2.0;

// Full-length DFT magnitudes |X_k|, k = 0..N-1 (0-based; bin k sits at
// frequency k * fs / N).
struct Spectrum {
  std::vector<double> magnitudes;
  double sample_rate_hz = kBonnSampleRateHz;
  std::size_t n_samples = 0;
};

struct BandPowers {
  std::array<double, kNumBands> psi{};  // summed magnitude per band
  std::array<double, kNumBands> rir{};  // psi / total band power; all zero for silent input
};

inline Spectrum fft_magnitudes(const Segment& seg) {
  validate(seg);
  const auto coef = fft::forward_real(seg.samples);
  Spectrum out;
  out.sample_rate_hz = seg.sample_rate_hz;
  out.n_samples = seg.samples.size();
  out.magnitudes.resize(coef.size());
  for (std::size_t k = 0; k < coef.size(); ++k) out.magnitudes[k] = std::abs(coef[k]);
  return out;
}

// Half-open bin range [lo, hi) of band `band` (0-based), so adjacent bands
// partition the spectrum with no shared bins.
inline std::pair<std::size_t, std::size_t> band_bin_range(std::size_t n_samples,
                                                          double sample_rate_hz,
                                                          std::size_t band) {
  const double fmin = kBandFloorHz + static_cast<double>(band) * kBandWidthHz;
  const double fmax = fmin + kBandWidthHz;
  const double n = static_cast<double>(n_samples);
  const auto lo = static_cast<std::size_t>(std::floor(n * fmin / sample_rate_hz));
  const auto hi = static_cast<std::size_t>(std::floor(n * fmax / sample_rate_hz));
  return {lo, hi};
}

inline BandPowers band_powers(const Spectrum& spec) {
  if (!(spec.sample_rate_hz > 2.0 * (kBandFloorHz + kNumBands * kBandWidthHz))) {
    throw std::domain_error("sample rate " + std::to_string(spec.sample_rate_hz) +
                            " Hz is too low for the 2-32 Hz band grid");
  }
  if (spec.magnitudes.size() != spec.n_samples || spec.n_samples == 0) {
    throw shape_error("spectrum length does not match its sample count");
  }
  BandPowers bp;
  double total = 0.0;
  for (std::size_t band = 0; band < kNumBands; ++band) {
    const auto [lo, hi] = band_bin_range(spec.n_samples, spec.sample_rate_hz, band);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += spec.magnitudes[i];
    bp.psi[band] = acc;
    total += acc;
  }
  if (total > 0.0) {
    for (std::size_t band = 0; band < kNumBands; ++band) bp.rir[band] = bp.psi[band] / total;
  }
  return bp;
}

}  // namespace eegpnn
