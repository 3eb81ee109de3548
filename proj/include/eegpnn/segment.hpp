#pragma once

#include <cctype>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "eegpnn/errors.hpp"

namespace eegpnn {

inline constexpr double kBonnSampleRateHz = 173.61;
inline constexpr std::size_t kMinSegmentLength = 16;

// The public corpus release ships 4097 lines per file; the trailing sample is
// dropped on load so every segment has the nominal 4096 points.
inline constexpr std::size_t kBonnPublishedLength = 4097;
inline constexpr std::size_t kBonnSegmentLength = 4096;

// One single-channel EEG recording window, the unit of classification.
// Treated as immutable once built.
struct Segment {
  std::vector<double> samples;  // amplitudes in microvolts
  double sample_rate_hz = kBonnSampleRateHz;
  std::string source_id;
};

// The five recording conditions of the Bonn corpus.
enum class SetTag { A, B, C, D, E };

inline constexpr SetTag kAllSetTags[] = {SetTag::A, SetTag::B, SetTag::C,
                                         SetTag::D, SetTag::E};

inline char set_tag_letter(SetTag tag) {
  return static_cast<char>('A' + static_cast<int>(tag));
}

// File-name prefix used by the published corpus: A->Z, B->O, C->N, D->F, E->S.
inline char bonn_file_letter(SetTag tag) {
  constexpr char letters[] = {'Z', 'O', 'N', 'F', 'S'};
  return letters[static_cast<int>(tag)];
}

inline SetTag parse_set_tag(const std::string& s) {
  if (s.size() == 1) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    if (c >= 'A' && c <= 'E') return static_cast<SetTag>(c - 'A');
  }
  throw std::invalid_argument("set tag must be one of A, B, C, D, E (got '" + s + "')");
}

struct LabeledSegment {
  Segment segment;
  int class_label = 0;
  SetTag set_tag = SetTag::A;
};

// Checks the per-segment invariants: length, positive sample rate, finite samples.
inline void validate(const Segment& seg) {
  if (seg.samples.size() < kMinSegmentLength) {
    throw shape_error("segment '" + seg.source_id + "' has " +
                      std::to_string(seg.samples.size()) + " samples, need at least " +
                      std::to_string(kMinSegmentLength));
  }
  if (!(seg.sample_rate_hz > 0.0)) {
    throw std::domain_error("segment '" + seg.source_id + "' has non-positive sample rate");
  }
  for (std::size_t i = 0; i < seg.samples.size(); ++i) {
    if (!std::isfinite(seg.samples[i])) {
      throw std::domain_error("segment '" + seg.source_id + "' has a non-finite sample at index " +
                              std::to_string(i));
    }
  }
}

}  // namespace eegpnn
