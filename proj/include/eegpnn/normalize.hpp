#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

#include "eegpnn/features.hpp"

namespace eegpnn {

enum class NormMethod { zscore, minmax };

inline std::string to_string(NormMethod m) {
  return m == NormMethod::zscore ? "zscore" : "minmax";
}

inline NormMethod parse_norm_method(const std::string& s) {
  if (s == "zscore") return NormMethod::zscore;
  if (s == "minmax") return NormMethod::minmax;
  throw std::invalid_argument("normalization method must be 'zscore' or 'minmax' (got '" + s + "')");
}

// Per-feature affine normalization, fitted on training rows only. Features
// with zero spread get scale 1 so degenerate columns map to zero instead of
// poisoning a run.
struct NormStats {
  NormMethod method = NormMethod::zscore;
  std::array<double, kFeatureCount> location{};
  std::array<double, kFeatureCount> scale{};
};

inline NormStats identity_norm_stats() {
  NormStats stats;
  stats.scale.fill(1.0);
  return stats;
}

inline NormStats fit_norm(std::span<const FeatureVector> train,
                          NormMethod method = NormMethod::zscore) {
  if (train.size() < 2) {
    throw std::domain_error("normalization needs at least 2 training rows, got " +
                            std::to_string(train.size()));
  }
  NormStats stats;
  stats.method = method;
  const double n = static_cast<double>(train.size());
  if (method == NormMethod::zscore) {
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      double mean = 0.0;
      for (const auto& row : train) mean += row[f];
      mean /= n;
      double var = 0.0;
      for (const auto& row : train) {
        const double d = row[f] - mean;
        var += d * d;
      }
      const double sd = std::sqrt(var / n);
      stats.location[f] = mean;
      stats.scale[f] = sd > 0.0 ? sd : 1.0;
    }
  } else {
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      double lo = train[0][f], hi = train[0][f];
      for (const auto& row : train) {
        lo = std::min(lo, row[f]);
        hi = std::max(hi, row[f]);
      }
      stats.location[f] = lo;
      stats.scale[f] = (hi - lo) > 0.0 ? (hi - lo) : 1.0;
    }
  }
  return stats;
}

inline FeatureVector apply_norm(const NormStats& stats, const FeatureVector& v) {
  FeatureVector out;
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    out[f] = (v[f] - stats.location[f]) / stats.scale[f];
    if (!std::isfinite(out[f])) {
      throw std::domain_error("normalized feature '" + feature_names()[f] +
                              "' (index " + std::to_string(f) + ") is non-finite");
    }
  }
  return out;
}

}  // namespace eegpnn
