#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "eegpnn/errors.hpp"
#include "eegpnn/fft.hpp"
#include "eegpnn/segment.hpp"

namespace eegpnn {

namespace detail {

inline bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

inline double parse_amplitude(const std::string& line, const std::filesystem::path& file,
                              std::size_t line_no) {
  const char* begin = line.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  while (end != nullptr && (*end == ' ' || *end == '\t' || *end == '\r')) ++end;
  if (end == begin || *end != '\0' || !std::isfinite(value)) {
    throw parse_error(file.string() + ":" + std::to_string(line_no) +
                      ": expected one amplitude value per line, got '" + line + "'");
  }
  return value;
}

}  // namespace detail

// Reads one segment file: one amplitude per line, LF or CRLF, blank lines skipped.
inline Segment read_segment_text(const std::filesystem::path& file,
                                 double sample_rate_hz = kBonnSampleRateHz) {
  std::ifstream in(file);
  if (!in) {
    throw io_error("cannot open segment file " + file.string());
  }
  Segment seg;
  seg.sample_rate_hz = sample_rate_hz;
  seg.source_id = file.stem().string();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_blank(line)) continue;
    seg.samples.push_back(detail::parse_amplitude(line, file, line_no));
  }
  if (in.bad()) {
    throw io_error("read failure on segment file " + file.string());
  }
  return seg;
}

inline void write_segment_text(const std::filesystem::path& file, const Segment& seg) {
  std::ofstream out(file);
  if (!out) {
    throw io_error("cannot open " + file.string() + " for writing");
  }
  char buf[40];
  for (double v : seg.samples) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", v);
    out << buf;
  }
  out.flush();
  if (!out) {
    throw io_error("write failure on " + file.string());
  }
}

// Drops the padding sample of a published-corpus file, if present.
inline void drop_bonn_padding(Segment& seg) {
  if (seg.samples.size() == kBonnPublishedLength) seg.samples.pop_back();
}

// Loads every *.txt in `dir` in lexicographic filename order. All segments must
// come out the same length; the load fails fast otherwise.
inline std::vector<Segment> load_bonn_dir(const std::filesystem::path& dir, SetTag tag) {
  if (!std::filesystem::is_directory(dir)) {
    throw io_error(std::string("set ") + set_tag_letter(tag) + ": segment directory " +
                   dir.string() + " does not exist");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
    return a.filename().string() < b.filename().string();
  });

  std::vector<Segment> segments;
  segments.reserve(files.size());
  for (const auto& file : files) {
    Segment seg = read_segment_text(file);
    drop_bonn_padding(seg);
    validate(seg);
    segments.push_back(std::move(seg));
  }
  for (const auto& seg : segments) {
    if (seg.samples.size() != segments.front().samples.size()) {
      throw shape_error(std::string("set ") + set_tag_letter(tag) + ": segment '" +
                        seg.source_id + "' has " + std::to_string(seg.samples.size()) +
                        " samples but '" + segments.front().source_id + "' has " +
                        std::to_string(segments.front().samples.size()));
    }
  }
  return segments;
}

// Locates the directory of one set under a corpus root. Set directories may be
// named by tag letter (A..E) or by the published file prefix (Z, O, N, F, S),
// in either case.
inline std::filesystem::path resolve_set_dir(const std::filesystem::path& root, SetTag tag) {
  const char names[] = {set_tag_letter(tag), bonn_file_letter(tag)};
  for (char c : names) {
    for (char variant : {c, static_cast<char>(std::tolower(static_cast<unsigned char>(c)))}) {
      const std::filesystem::path candidate = root / std::string(1, variant);
      if (std::filesystem::is_directory(candidate)) return candidate;
    }
  }
  throw io_error(std::string("set ") + set_tag_letter(tag) + " not found under " + root.string() +
                 " (expected a subdirectory named " + set_tag_letter(tag) + " or " +
                 bonn_file_letter(tag) + ")");
}

// Zero-phase brick-wall low-pass: DFT bins strictly above `cutoff_hz` are
// zeroed, bins at or below it are kept, so the result is exactly reproducible.
inline Segment lowpass(const Segment& seg, double cutoff_hz) {
  validate(seg);
  if (!(seg.sample_rate_hz > 2.0 * cutoff_hz)) {
    throw std::domain_error("sample rate " + std::to_string(seg.sample_rate_hz) +
                            " Hz leaves no headroom above the " + std::to_string(cutoff_hz) +
                            " Hz cutoff");
  }
  const std::size_t n = seg.samples.size();
  std::vector<std::complex<double>> spec = fft::forward_real(seg.samples);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t folded = std::min(k, n - k);
    const double freq = static_cast<double>(folded) * seg.sample_rate_hz / static_cast<double>(n);
    if (freq > cutoff_hz) spec[k] = 0.0;
  }
  fft::transform(spec, true);
  Segment out;
  out.sample_rate_hz = seg.sample_rate_hz;
  out.source_id = seg.source_id;
  out.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.samples[i] = spec[i].real();
  return out;
}

inline Segment lowpass_40hz(const Segment& seg) { return lowpass(seg, 40.0); }

}  // namespace eegpnn
