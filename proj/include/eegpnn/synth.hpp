#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "eegpnn/segment.hpp"

namespace eegpnn {

enum class SynthKind { sine, noise, spikewave, mixture };

inline std::string to_string(SynthKind kind) {
  switch (kind) {
    case SynthKind::sine: return "sine";
    case SynthKind::noise: return "noise";
    case SynthKind::spikewave: return "spikewave";
    case SynthKind::mixture: return "mixture";
  }
  throw std::logic_error("unreachable");
}

inline SynthKind parse_synth_kind(const std::string& s) {
  if (s == "sine") return SynthKind::sine;
  if (s == "noise") return SynthKind::noise;
  if (s == "spikewave") return SynthKind::spikewave;
  if (s == "mixture") return SynthKind::mixture;
  throw std::invalid_argument("unknown generator kind '" + s + "'");
}

struct Tone {
  double freq_hz = 10.0;
  double amplitude = 100.0;
  double phase = 0.0;
};

struct SynthSpec {
  SynthKind kind = SynthKind::sine;
  std::size_t n_samples = kBonnSegmentLength;
  double sample_rate_hz = kBonnSampleRateHz;
  std::vector<Tone> tones;        // sine: exactly one entry; mixture: any number
  double noise_sigma = 0.0;       // gaussian noise level (noise, mixture)
  double spike_freq_hz = 3.0;     // spikewave fundamental
  double spike_amplitude = 100.0; // spikewave: amplitude of both wave and spikes
  double spike_width = 0.05;      // spike width as a fraction of the period
};

// Deterministic gaussian source: mt19937_64 plus Box-Muller, so corpora
// regenerate identically across standard library implementations.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  double uniform01() {  // (0, 1]
    return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
  }

  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

namespace detail {

inline void check_tone(const Tone& t, double nyquist_hz) {
  if (!(t.freq_hz > 0.0) || t.freq_hz >= nyquist_hz) {
    throw std::domain_error("tone frequency " + std::to_string(t.freq_hz) +
                            " Hz must lie in (0, " + std::to_string(nyquist_hz) + ") Hz");
  }
  if (!(t.amplitude > 0.0)) {
    throw std::domain_error("tone amplitude must be positive");
  }
}

}  // namespace detail

// Deterministic given (spec, seed).
inline Segment synth_segment(const SynthSpec& spec, std::uint64_t seed,
                             std::string source_id = {}) {
  if (spec.n_samples < kMinSegmentLength) {
    throw shape_error("synthetic segment needs at least " +
                      std::to_string(kMinSegmentLength) + " samples");
  }
  if (!(spec.sample_rate_hz > 0.0)) {
    throw std::domain_error("sample rate must be positive");
  }
  const double fs = spec.sample_rate_hz;
  const double nyquist = fs / 2.0;

  Segment seg;
  seg.sample_rate_hz = fs;
  seg.source_id = source_id.empty() ? to_string(spec.kind) + "-" + std::to_string(seed)
                                    : std::move(source_id);
  seg.samples.assign(spec.n_samples, 0.0);

  const auto add_tones = [&](const std::vector<Tone>& tones) {
    for (const Tone& t : tones) {
      detail::check_tone(t, nyquist);
      const double w = 2.0 * std::numbers::pi * t.freq_hz / fs;
      for (std::size_t i = 0; i < seg.samples.size(); ++i) {
        seg.samples[i] += t.amplitude * std::sin(w * static_cast<double>(i) + t.phase);
      }
    }
  };
  const auto add_noise = [&](double sigma) {
    GaussianSource gauss(seed);
    for (double& v : seg.samples) v += sigma * gauss();
  };

  switch (spec.kind) {
    case SynthKind::sine:
      if (spec.tones.size() != 1) {
        throw std::domain_error("sine generator takes exactly one tone");
      }
      add_tones(spec.tones);
      break;
    case SynthKind::noise:
      if (!(spec.noise_sigma > 0.0)) {
        throw std::domain_error("noise generator needs noise_sigma > 0");
      }
      add_noise(spec.noise_sigma);
      break;
    case SynthKind::spikewave: {
      if (!(spec.spike_freq_hz > 0.0) || spec.spike_freq_hz >= nyquist) {
        throw std::domain_error("spikewave frequency must lie in (0, Nyquist)");
      }
      if (!(spec.spike_amplitude > 0.0)) {
        throw std::domain_error("spikewave amplitude must be positive");
      }
      if (!(spec.spike_width > 0.0 && spec.spike_width < 0.5)) {
        throw std::domain_error("spike width must be a fraction in (0, 0.5)");
      }
      // Slow wave at the fundamental plus a train of narrow gaussian spikes,
      // one per period. The wave carries most of the energy, so the dominant
      // spectral peak stays at the fundamental.
      const double period_s = 1.0 / spec.spike_freq_hz;
      const double width_s = spec.spike_width * period_s;
      const double w = 2.0 * std::numbers::pi * spec.spike_freq_hz / fs;
      for (std::size_t i = 0; i < seg.samples.size(); ++i) {
        const double t = static_cast<double>(i) / fs;
        double v = spec.spike_amplitude * std::sin(w * static_cast<double>(i));
        const double nearest = std::round(t / period_s) * period_s;
        const double dt = (t - nearest) / width_s;
        v += spec.spike_amplitude * std::exp(-0.5 * dt * dt);
        seg.samples[i] = v;
      }
      break;
    }
    case SynthKind::mixture:
      if (spec.tones.empty() && !(spec.noise_sigma > 0.0)) {
        throw std::domain_error("mixture generator needs tones and/or noise");
      }
      add_tones(spec.tones);
      if (spec.noise_sigma < 0.0) {
        throw std::domain_error("noise_sigma must be non-negative");
      }
      if (spec.noise_sigma > 0.0) add_noise(spec.noise_sigma);
      break;
  }
  validate(seg);
  return seg;
}

// One generated segment of a reproducible corpus.
struct ManifestEntry {
  std::string id;
  int label = 0;
  std::string set = "A";  // Bonn-layout placement (A..E)
  std::uint64_t seed = 0;
  SynthSpec spec;
};

struct SyntheticManifest {
  std::vector<ManifestEntry> entries;
};

inline std::vector<LabeledSegment> generate_corpus(const SyntheticManifest& manifest) {
  std::vector<LabeledSegment> out;
  out.reserve(manifest.entries.size());
  for (const ManifestEntry& e : manifest.entries) {
    LabeledSegment ls;
    ls.segment = synth_segment(e.spec, e.seed, e.id);
    ls.class_label = e.label;
    ls.set_tag = parse_set_tag(e.set);
    out.push_back(std::move(ls));
  }
  return out;
}

// The shipped two-class corpus: 50 low-frequency "normal" mixtures (sets A, B)
// and 50 high-frequency, high-amplitude "ictal" mixtures (sets C, D), with
// per-segment parameter jitter drawn from a fixed generator seed.
inline SyntheticManifest demo_corpus_manifest() {
  SyntheticManifest manifest;
  std::mt19937_64 rng(20240901ull);
  const auto uni = [&rng](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  const auto make_id = [](const char* set, int idx) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%s%03d", set, idx + 1);
    return std::string(buf);
  };

  for (int i = 0; i < 50; ++i) {
    ManifestEntry e;
    e.label = 0;
    e.set = (i < 25) ? "A" : "B";
    e.id = make_id(e.set.c_str(), i % 25);
    e.seed = 4200 + static_cast<std::uint64_t>(i);
    e.spec.kind = SynthKind::mixture;
    e.spec.tones = {
        {uni(2.5, 4.5), uni(25.0, 35.0), uni(0.0, 6.0)},
        {uni(7.0, 9.5), uni(20.0, 30.0), uni(0.0, 6.0)},
        {uni(10.5, 12.5), uni(12.0, 20.0), uni(0.0, 6.0)},
    };
    e.spec.noise_sigma = uni(4.0, 8.0);
    manifest.entries.push_back(std::move(e));
  }
  for (int i = 0; i < 50; ++i) {
    ManifestEntry e;
    e.label = 1;
    e.set = (i < 25) ? "C" : "D";
    e.id = make_id(e.set.c_str(), i % 25);
    e.seed = 9300 + static_cast<std::uint64_t>(i);
    e.spec.kind = SynthKind::mixture;
    e.spec.tones = {
        {uni(15.0, 18.0), uni(180.0, 260.0), uni(0.0, 6.0)},
        {uni(20.0, 24.0), uni(220.0, 320.0), uni(0.0, 6.0)},
        {uni(25.0, 30.0), uni(150.0, 240.0), uni(0.0, 6.0)},
    };
    e.spec.noise_sigma = uni(30.0, 55.0);
    manifest.entries.push_back(std::move(e));
  }
  return manifest;
}

}  // namespace eegpnn
