#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "eegpnn/errors.hpp"
#include "eegpnn/eval.hpp"
#include "eegpnn/pnn.hpp"
#include "eegpnn/synth.hpp"

namespace eegpnn {

namespace detail {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Writes through a temp file plus rename so a failed run leaves no partial artifact.
inline void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw io_error("write failure on " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw io_error("cannot move " + tmp.string() + " to " + path.string());
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw io_error("read failure on " + path.string());
  return ss.str();
}

inline double parse_double(const std::string& cell, const std::filesystem::path& file,
                           std::size_t line_no) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw parse_error(file.string() + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
  }
  return v;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

inline nlohmann::json parse_json(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(path.string() + ": " + e.what());
  }
}

}  // namespace detail

// ---- feature matrix CSV: 38 canonical columns + label + source_id ----

inline void write_feature_csv(const std::filesystem::path& path, const FeatureDataset& ds) {
  std::string out;
  for (const auto& name : feature_names()) {
    out += name;
    out += ',';
  }
  out += "label,source_id\n";
  for (std::size_t i = 0; i < ds.rows.size(); ++i) {
    for (double v : ds.rows[i]) {
      out += detail::fmt17(v);
      out += ',';
    }
    out += std::to_string(ds.labels[i]);
    out += ',';
    out += ds.source_ids.empty() ? std::to_string(i) : ds.source_ids[i];
    out += '\n';
  }
  detail::write_text_atomic(path, out);
}

inline FeatureDataset read_feature_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open feature CSV " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw parse_error(path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = detail::split_csv_line(line);
  if (header.size() != kFeatureCount + 2) {
    throw parse_error(path.string() + ": header has " + std::to_string(header.size()) +
                      " columns, expected " + std::to_string(kFeatureCount + 2));
  }
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    if (header[f] != feature_names()[f]) {
      throw parse_error(path.string() + ": column " + std::to_string(f + 1) + " is '" + header[f] +
                        "', expected '" + feature_names()[f] + "'");
    }
  }
  if (header[kFeatureCount] != "label" || header[kFeatureCount + 1] != "source_id") {
    throw parse_error(path.string() + ": trailing columns must be 'label,source_id'");
  }

  FeatureDataset ds;
  std::size_t line_no = 1;
  int max_label = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != kFeatureCount + 2) {
      throw parse_error(path.string() + ":" + std::to_string(line_no) + ": row has " +
                        std::to_string(cells.size()) + " columns, expected " +
                        std::to_string(kFeatureCount + 2));
    }
    FeatureVector row;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      row[f] = detail::parse_double(cells[f], path, line_no);
    }
    const double label = detail::parse_double(cells[kFeatureCount], path, line_no);
    const int label_i = static_cast<int>(label);
    if (label != label_i || label_i < 0) {
      throw parse_error(path.string() + ":" + std::to_string(line_no) +
                        ": label must be a non-negative integer");
    }
    max_label = std::max(max_label, label_i);
    ds.rows.push_back(row);
    ds.labels.push_back(label_i);
    ds.source_ids.push_back(cells[kFeatureCount + 1]);
  }
  ds.n_classes = std::max(2, max_label + 1);
  return ds;
}

// ---- model file: versioned JSON ----

inline constexpr const char* kModelFormat = "eegpnn-model";
inline constexpr int kModelVersion = 1;

struct LoadedModel {
  PnnModel model;
  PipelineConfig pipeline;
};

inline void save_model(const std::filesystem::path& path, const PnnModel& model,
                       const PipelineConfig& pipeline = {}) {
  nlohmann::json j;
  j["format"] = kModelFormat;
  j["version"] = kModelVersion;
  j["spread"] = model.spread;
  j["n_classes"] = model.n_classes;
  j["n_features"] = model.n_features;
  j["labels"] = model.labels;
  j["weights"] = model.weights;
  j["norm"] = {
      {"method", to_string(model.norm.method)},
      {"location", model.norm.location},
      {"scale", model.norm.scale},
  };
  j["pipeline"] = {
      {"lowpass", pipeline.lowpass},
      {"k_max", pipeline.hfd.k_max},
      {"norm_method", to_string(pipeline.norm_method)},
  };
  detail::write_text_atomic(path, j.dump(2) + "\n");
}

inline LoadedModel load_model(const std::filesystem::path& path) {
  const nlohmann::json j = detail::parse_json(path);
  try {
    if (j.value("format", "") != kModelFormat) {
      throw model_error(path.string() + ": not a model file");
    }
    if (j.at("version").get<int>() != kModelVersion) {
      throw model_error(path.string() + ": unsupported model version");
    }
    LoadedModel loaded;
    PnnModel& m = loaded.model;
    m.spread = j.at("spread").get<double>();
    m.n_classes = j.at("n_classes").get<int>();
    m.n_features = j.at("n_features").get<std::size_t>();
    m.labels = j.at("labels").get<std::vector<int>>();
    m.weights = j.at("weights").get<std::vector<std::vector<double>>>();
    const auto& norm = j.at("norm");
    m.norm.method = parse_norm_method(norm.at("method").get<std::string>());
    const auto location = norm.at("location").get<std::vector<double>>();
    const auto scale = norm.at("scale").get<std::vector<double>>();
    if (location.size() != kFeatureCount || scale.size() != kFeatureCount) {
      throw model_error(path.string() + ": normalization stats must have " +
                        std::to_string(kFeatureCount) + " entries");
    }
    std::copy(location.begin(), location.end(), m.norm.location.begin());
    std::copy(scale.begin(), scale.end(), m.norm.scale.begin());

    if (!(m.spread > 0.0) || m.n_classes < 2 || m.weights.empty() ||
        m.weights.size() != m.labels.size()) {
      throw model_error(path.string() + ": inconsistent model contents");
    }
    for (const auto& row : m.weights) {
      if (row.size() != m.n_features) {
        throw model_error(path.string() + ": weight row length does not match n_features");
      }
    }
    for (int label : m.labels) {
      if (label < 0 || label >= m.n_classes) {
        throw model_error(path.string() + ": stored label out of range");
      }
    }
    for (double s : m.norm.scale) {
      if (!(s > 0.0)) throw model_error(path.string() + ": normalization scale must be positive");
    }

    const auto& pipe = j.at("pipeline");
    loaded.pipeline.lowpass = pipe.at("lowpass").get<bool>();
    loaded.pipeline.hfd.k_max = pipe.at("k_max").get<std::size_t>();
    loaded.pipeline.norm_method = parse_norm_method(pipe.at("norm_method").get<std::string>());
    return loaded;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(path.string() + ": " + e.what());
  }
}

// ---- evaluation report JSON and sweep CSV ----

inline constexpr const char* kReportFormat = "eegpnn-report";
inline constexpr int kReportVersion = 1;

inline nlohmann::json report_to_json(const EvalReport& report) {
  nlohmann::json j;
  j["format"] = kReportFormat;
  j["version"] = kReportVersion;
  j["experiment"] = {{"id", report.experiment_id}, {"name", report.experiment_name}};
  j["spread"] = report.spread;
  j["norm_method"] = to_string(report.norm_method);
  j["n_samples"] = report.n_samples;
  j["accuracy"] = report.accuracy;
  j["confusion"] = report.confusion;
  auto per_class = nlohmann::json::array();
  for (const auto& s : report.per_class) {
    per_class.push_back({{"class", s.cls},
                         {"sensitivity", s.sensitivity},
                         {"specificity", s.specificity}});
  }
  j["per_class"] = per_class;
  j["timing"] = {{"timed", report.timed},
                 {"median_fold_classify_s", report.median_fold_classify_s}};
  auto preds = nlohmann::json::array();
  for (const auto& p : report.predictions) {
    preds.push_back({{"source_id", p.source_id}, {"true", p.truth}, {"predicted", p.predicted}});
  }
  j["predictions"] = preds;
  return j;
}

inline void write_report_json(const std::filesystem::path& path, const EvalReport& report) {
  detail::write_text_atomic(path, report_to_json(report).dump(2) + "\n");
}

inline void write_sweep_csv(const std::filesystem::path& path,
                            std::span<const std::pair<double, double>> sweep) {
  std::string out = "spread,accuracy\n";
  for (const auto& [spread, accuracy] : sweep) {
    out += detail::fmt17(spread);
    out += ',';
    out += detail::fmt17(accuracy);
    out += '\n';
  }
  detail::write_text_atomic(path, out);
}

// ---- synthetic corpus manifest JSON ----

inline constexpr const char* kManifestFormat = "eegpnn-corpus";
inline constexpr int kManifestVersion = 1;

inline nlohmann::json manifest_to_json(const SyntheticManifest& manifest) {
  nlohmann::json j;
  j["format"] = kManifestFormat;
  j["version"] = kManifestVersion;
  auto segments = nlohmann::json::array();
  for (const auto& e : manifest.entries) {
    nlohmann::json s;
    s["id"] = e.id;
    s["label"] = e.label;
    s["set"] = e.set;
    s["seed"] = e.seed;
    s["kind"] = to_string(e.spec.kind);
    s["n_samples"] = e.spec.n_samples;
    s["sample_rate_hz"] = e.spec.sample_rate_hz;
    if (!e.spec.tones.empty()) {
      auto tones = nlohmann::json::array();
      for (const Tone& t : e.spec.tones) {
        tones.push_back({{"freq_hz", t.freq_hz}, {"amplitude", t.amplitude}, {"phase", t.phase}});
      }
      s["tones"] = tones;
    }
    if (e.spec.noise_sigma > 0.0) s["noise_sigma"] = e.spec.noise_sigma;
    if (e.spec.kind == SynthKind::spikewave) {
      s["spike"] = {{"freq_hz", e.spec.spike_freq_hz},
                    {"amplitude", e.spec.spike_amplitude},
                    {"width", e.spec.spike_width}};
    }
    segments.push_back(std::move(s));
  }
  j["segments"] = segments;
  return j;
}

inline void write_manifest(const std::filesystem::path& path, const SyntheticManifest& manifest) {
  detail::write_text_atomic(path, manifest_to_json(manifest).dump(2) + "\n");
}

inline SyntheticManifest read_manifest(const std::filesystem::path& path) {
  const nlohmann::json j = detail::parse_json(path);
  try {
    if (j.value("format", "") != kManifestFormat || j.at("version").get<int>() != kManifestVersion) {
      throw parse_error(path.string() + ": not a corpus manifest");
    }
    SyntheticManifest manifest;
    for (const auto& s : j.at("segments")) {
      ManifestEntry e;
      e.id = s.at("id").get<std::string>();
      e.label = s.at("label").get<int>();
      e.set = s.value("set", "A");
      e.seed = s.at("seed").get<std::uint64_t>();
      e.spec.kind = parse_synth_kind(s.at("kind").get<std::string>());
      e.spec.n_samples = s.at("n_samples").get<std::size_t>();
      e.spec.sample_rate_hz = s.at("sample_rate_hz").get<double>();
      if (s.contains("tones")) {
        for (const auto& t : s.at("tones")) {
          e.spec.tones.push_back({t.at("freq_hz").get<double>(), t.at("amplitude").get<double>(),
                                  t.value("phase", 0.0)});
        }
      }
      e.spec.noise_sigma = s.value("noise_sigma", 0.0);
      if (s.contains("spike")) {
        e.spec.spike_freq_hz = s.at("spike").at("freq_hz").get<double>();
        e.spec.spike_amplitude = s.at("spike").at("amplitude").get<double>();
        e.spec.spike_width = s.at("spike").value("width", 0.05);
      }
      manifest.entries.push_back(std::move(e));
    }
    return manifest;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(path.string() + ": " + e.what());
  }
}

}  // namespace eegpnn
