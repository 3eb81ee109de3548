#pragma once

// Shared helpers for the test suites: temp directories, deterministic signal
// builders, and small dataset generators.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include <eegpnn/features.hpp>
#include <eegpnn/segment.hpp>

namespace testsupport {

class TempDir {
 public:
  explicit TempDir(const std::string& prefix = "eegpnn_test") {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            (prefix + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void write_lines(const std::filesystem::path& file, const std::vector<std::string>& lines) {
  std::ofstream out(file);
  for (const auto& line : lines) out << line << "\n";
}

// Nearest frequency that lands exactly on a DFT bin, so leakage-free sines can
// be used where tests reason about single bins.
inline double bin_exact_freq(std::size_t n, double fs, double target_hz) {
  const double k = std::round(target_hz * static_cast<double>(n) / fs);
  return k * fs / static_cast<double>(n);
}

inline eegpnn::Segment make_sine(std::size_t n, double fs, double freq_hz, double amplitude = 1.0,
                                 double phase = 0.0) {
  eegpnn::Segment seg;
  seg.sample_rate_hz = fs;
  seg.source_id = "sine";
  seg.samples.resize(n);
  const double w = 2.0 * std::numbers::pi * freq_hz / fs;
  for (std::size_t i = 0; i < n; ++i) {
    seg.samples[i] = amplitude * std::sin(w * static_cast<double>(i) + phase);
  }
  return seg;
}

inline std::vector<double> gaussian_vector(std::size_t n, std::uint64_t seed, double sigma = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, sigma);
  std::vector<double> x(n);
  for (auto& v : x) v = gauss(rng);
  return x;
}

inline eegpnn::Segment make_noise_segment(std::size_t n, double fs, std::uint64_t seed,
                                          double sigma = 1.0) {
  eegpnn::Segment seg;
  seg.sample_rate_hz = fs;
  seg.source_id = "noise";
  seg.samples = gaussian_vector(n, seed, sigma);
  return seg;
}

// Gaussian blobs around well-separated class centers; generic positions, so
// nearest-neighbor decisions have real margins.
struct ClusterData {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
};

inline ClusterData make_clusters(std::uint64_t seed, int n_classes, std::size_t per_class,
                                 std::size_t dim, double center_gap = 10.0, double radius = 0.5) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ClusterData data;
  for (int k = 0; k < n_classes; ++k) {
    std::vector<double> center(dim, 0.0);
    center[static_cast<std::size_t>(k) % dim] = center_gap * (1.0 + k);
    for (std::size_t i = 0; i < per_class; ++i) {
      std::vector<double> row(dim);
      for (std::size_t f = 0; f < dim; ++f) row[f] = center[f] + radius * gauss(rng);
      data.rows.push_back(std::move(row));
      data.labels.push_back(k);
    }
  }
  return data;
}

// Two feature-space clusters packaged as an evaluation dataset.
inline void fill_feature_clusters(std::uint64_t seed, std::size_t per_class, double center_gap,
                                  double radius, std::vector<eegpnn::FeatureVector>& rows,
                                  std::vector<int>& labels) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int k = 0; k < 2; ++k) {
    for (std::size_t i = 0; i < per_class; ++i) {
      eegpnn::FeatureVector row;
      const double center = k == 0 ? -center_gap / 2.0 : center_gap / 2.0;
      for (auto& v : row) v = center + radius * gauss(rng);
      rows.push_back(row);
      labels.push_back(k);
    }
  }
}

}  // namespace testsupport
