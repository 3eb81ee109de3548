#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "eegpnn/segment.hpp"
#include "eegpnn/spectral.hpp"

namespace eegpnn {

// Canonical feature layout: psi_1..psi_15, rir_1..rir_15, pfd, hfd,
// hjorth_mobility, hjorth_complexity, mean_raw, std_raw, mean_abs, std_abs.
inline constexpr std::size_t kFeatureCount = 38;
using FeatureVector = std::array<double, kFeatureCount>;

inline constexpr std::size_t kPsiOffset = 0;
inline constexpr std::size_t kRirOffset = 15;
inline constexpr std::size_t kPfdIndex = 30;
inline constexpr std::size_t kHfdIndex = 31;
inline constexpr std::size_t kMobilityIndex = 32;
inline constexpr std::size_t kComplexityIndex = 33;
inline constexpr std::size_t kMeanRawIndex = 34;
inline constexpr std::size_t kStdRawIndex = 35;
inline constexpr std::size_t kMeanAbsIndex = 36;
inline constexpr std::size_t kStdAbsIndex = 37;

inline const std::array<std::string, kFeatureCount>& feature_names() {
  static const std::array<std::string, kFeatureCount> names = [] {
    std::array<std::string, kFeatureCount> n;
    for (std::size_t k = 0; k < kNumBands; ++k) n[kPsiOffset + k] = "psi_" + std::to_string(k + 1);
    for (std::size_t k = 0; k < kNumBands; ++k) n[kRirOffset + k] = "rir_" + std::to_string(k + 1);
    n[kPfdIndex] = "pfd";
    n[kHfdIndex] = "hfd";
    n[kMobilityIndex] = "hjorth_mobility";
    n[kComplexityIndex] = "hjorth_complexity";
    n[kMeanRawIndex] = "mean_raw";
    n[kStdRawIndex] = "std_raw";
    n[kMeanAbsIndex] = "mean_abs";
    n[kStdAbsIndex] = "std_abs";
    return n;
  }();
  return names;
}

struct HfdConfig {
  std::size_t k_max = 5;
};

// Petrosian fractal dimension. N_delta counts sign changes of the first
// difference; a monotone series gives exactly 1.
inline double petrosian_fd(const Segment& seg) {
  validate(seg);
  const auto& x = seg.samples;
  const std::size_t n = x.size();
  std::size_t sign_changes = 0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d1 = x[i] - x[i - 1];
    const double d2 = x[i + 1] - x[i];
    if (d1 * d2 < 0.0) ++sign_changes;
  }
  const double nd = static_cast<double>(n);
  const double log_n = std::log10(nd);
  return log_n / (log_n + std::log10(nd / (nd + 0.4 * static_cast<double>(sign_changes))));
}

// Higuchi fractal dimension: mean normalized curve length L(k) over stride-k
// subsampled series, slope of ln L(k) against ln(1/k). A smooth curve comes
// out near 1, white noise near 2. A constant signal has zero curve length;
// it yields 0 and sets *degenerate.
inline double higuchi_fd(const Segment& seg, const HfdConfig& cfg = {},
                         bool* degenerate = nullptr) {
  validate(seg);
  if (degenerate != nullptr) *degenerate = false;
  const auto& x = seg.samples;
  const std::size_t n = x.size();
  if (cfg.k_max < 2 || n <= 2 * cfg.k_max) {
    throw std::domain_error("higuchi_fd needs 2 <= k_max < N/2 (k_max=" +
                            std::to_string(cfg.k_max) + ", N=" + std::to_string(n) + ")");
  }

  std::vector<double> log_len(cfg.k_max), log_inv_k(cfg.k_max);
  for (std::size_t k = 1; k <= cfg.k_max; ++k) {
    double mean_len = 0.0;
    for (std::size_t m = 0; m < k; ++m) {
      const std::size_t steps = (n - 1 - m) / k;
      double acc = 0.0;
      for (std::size_t i = 1; i <= steps; ++i) {
        acc += std::abs(x[m + i * k] - x[m + (i - 1) * k]);
      }
      mean_len += acc * static_cast<double>(n - 1) /
                  (static_cast<double>(steps) * static_cast<double>(k) * static_cast<double>(k));
    }
    mean_len /= static_cast<double>(k);
    if (!(mean_len > 0.0)) {
      if (degenerate != nullptr) *degenerate = true;
      return 0.0;
    }
    log_len[k - 1] = std::log(mean_len);
    log_inv_k[k - 1] = -std::log(static_cast<double>(k));
  }

  double mean_u = 0.0, mean_v = 0.0;
  for (std::size_t i = 0; i < cfg.k_max; ++i) {
    mean_u += log_inv_k[i];
    mean_v += log_len[i];
  }
  mean_u /= static_cast<double>(cfg.k_max);
  mean_v /= static_cast<double>(cfg.k_max);
  double cov = 0.0, var = 0.0;
  for (std::size_t i = 0; i < cfg.k_max; ++i) {
    const double du = log_inv_k[i] - mean_u;
    cov += du * (log_len[i] - mean_v);
    var += du * du;
  }
  return cov / var;
}

struct HjorthParams {
  double mobility = 0.0;
  double complexity = 0.0;
};

// Hjorth mobility sqrt(M2/TP) and complexity sqrt(M4*TP/M2^2), with
// TP = sum x^2 / N, M2 = sum d^2 / N, M4 = sum (second difference)^2 / N.
inline HjorthParams hjorth(const Segment& seg) {
  validate(seg);
  const auto& x = seg.samples;
  const std::size_t n = x.size();
  double tp = 0.0;
  for (double v : x) tp += v * v;
  tp /= static_cast<double>(n);
  if (!(tp > 0.0)) {
    throw std::domain_error("hjorth parameters are undefined for an identically-zero signal");
  }
  double m2 = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double d = x[i] - x[i - 1];
    m2 += d * d;
  }
  m2 /= static_cast<double>(n);
  if (!(m2 > 0.0)) {
    throw std::domain_error("hjorth parameters are undefined for a constant signal");
  }
  double m4 = 0.0;
  for (std::size_t i = 2; i < n; ++i) {
    const double g = (x[i] - x[i - 1]) - (x[i - 1] - x[i - 2]);
    m4 += g * g;
  }
  m4 /= static_cast<double>(n);
  HjorthParams p;
  p.mobility = std::sqrt(m2 / tp);
  p.complexity = std::sqrt(m4 * tp / (m2 * m2));
  return p;
}

struct AmplitudeStats {
  double mean_raw = 0.0;
  double std_raw = 0.0;
  double mean_abs = 0.0;
  double std_abs = 0.0;
};

// Population statistics (divide by N) of the signal and of its absolute values.
inline AmplitudeStats amplitude_stats(const Segment& seg) {
  validate(seg);
  const auto& x = seg.samples;
  const double n = static_cast<double>(x.size());
  AmplitudeStats s;
  for (double v : x) {
    s.mean_raw += v;
    s.mean_abs += std::abs(v);
  }
  s.mean_raw /= n;
  s.mean_abs /= n;
  double var_raw = 0.0, var_abs = 0.0;
  for (double v : x) {
    const double dr = v - s.mean_raw;
    const double da = std::abs(v) - s.mean_abs;
    var_raw += dr * dr;
    var_abs += da * da;
  }
  s.std_raw = std::sqrt(var_raw / n);
  s.std_abs = std::sqrt(var_abs / n);
  return s;
}

inline FeatureVector extract_features(const Segment& seg, const HfdConfig& cfg = {}) {
  validate(seg);
  FeatureVector out{};
  const auto tagged = [](const char* name, auto&& fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      throw std::domain_error(std::string("feature '") + name + "' failed: " + e.what());
    }
  };

  const BandPowers bp =
      tagged("band_powers", [&] { return band_powers(fft_magnitudes(seg)); });
  for (std::size_t k = 0; k < kNumBands; ++k) {
    out[kPsiOffset + k] = bp.psi[k];
    out[kRirOffset + k] = bp.rir[k];
  }
  out[kPfdIndex] = tagged("pfd", [&] { return petrosian_fd(seg); });
  out[kHfdIndex] = tagged("hfd", [&] { return higuchi_fd(seg, cfg); });
  const HjorthParams hp = tagged("hjorth", [&] { return hjorth(seg); });
  out[kMobilityIndex] = hp.mobility;
  out[kComplexityIndex] = hp.complexity;
  const AmplitudeStats st = tagged("amplitude_stats", [&] { return amplitude_stats(seg); });
  out[kMeanRawIndex] = st.mean_raw;
  out[kStdRawIndex] = st.std_raw;
  out[kMeanAbsIndex] = st.mean_abs;
  out[kStdAbsIndex] = st.std_abs;

  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (!std::isfinite(out[i])) {
      throw std::domain_error("feature '" + feature_names()[i] + "' is non-finite for segment '" +
                              seg.source_id + "'");
    }
  }
  return out;
}

}  // namespace eegpnn
