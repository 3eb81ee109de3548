#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "eegpnn/features.hpp"
#include "eegpnn/normalize.hpp"
#include "eegpnn/pnn.hpp"
#include "eegpnn/signal_io.hpp"

namespace eegpnn {

// One two-class experiment: the first group gets label 0, the second label 1.
struct ExperimentDef {
  int id = 0;
  std::string name;
  std::vector<SetTag> positive_sets;
  std::vector<SetTag> negative_sets;
};

inline const std::array<ExperimentDef, 4>& standard_experiments() {
  static const std::array<ExperimentDef, 4> defs = {{
      {1, "normal-vs-interictal", {SetTag::A, SetTag::B}, {SetTag::C, SetTag::D}},
      {2, "normal-vs-ictal", {SetTag::A, SetTag::B}, {SetTag::E}},
      {3, "interictal-vs-ictal", {SetTag::C, SetTag::D}, {SetTag::E}},
      {4, "focus-localization", {SetTag::C}, {SetTag::D}},
  }};
  return defs;
}

inline const ExperimentDef& experiment_by_id(int id) {
  for (const auto& def : standard_experiments()) {
    if (def.id == id) return def;
  }
  throw std::invalid_argument("experiment id must be 1..4, got " + std::to_string(id));
}

struct FeatureDataset {
  std::vector<FeatureVector> rows;
  std::vector<int> labels;
  std::vector<std::string> source_ids;
  int n_classes = 2;
};

struct Prediction {
  std::string source_id;
  int truth = 0;
  int predicted = 0;
};

// Sensitivity/specificity per class; an extension beyond the overall accuracy,
// useful for the imbalanced experiments.
struct PerClassStats {
  int cls = 0;
  double sensitivity = 0.0;
  double specificity = 0.0;
};

struct EvalReport {
  int experiment_id = 0;
  std::string experiment_name;
  double spread = kDefaultSpread;
  NormMethod norm_method = NormMethod::zscore;
  std::size_t n_samples = 0;
  std::vector<std::vector<std::int64_t>> confusion;  // confusion[truth][predicted]
  double accuracy = 0.0;
  bool timed = false;                    // per-fold timing runs only sequentially
  double median_fold_classify_s = 0.0;   // measured around classify alone
  std::vector<Prediction> predictions;
  std::vector<PerClassStats> per_class;
};

struct LooOptions {
  NormMethod norm_method = NormMethod::zscore;
  unsigned threads = 1;  // >1 runs folds in parallel and disables timing
};

// Normalization stats and model for one LOO fold, fitted on every row except
// `held_out`. The held-out row must not influence either.
struct Fold {
  NormStats stats;
  PnnModel model;
};

namespace detail {

inline void check_dataset(const FeatureDataset& ds) {
  const std::size_t n = ds.rows.size();
  if (n < 2 || ds.labels.size() != n) {
    throw shape_error("dataset needs matching rows and labels (at least 2 rows)");
  }
  if (!ds.source_ids.empty() && ds.source_ids.size() != n) {
    throw shape_error("dataset source_ids do not match its rows");
  }
  if (ds.n_classes < 2) throw std::domain_error("dataset needs at least 2 classes");
  std::vector<std::size_t> counts(static_cast<std::size_t>(ds.n_classes), 0);
  for (int label : ds.labels) {
    if (label < 0 || label >= ds.n_classes) {
      throw std::domain_error("label " + std::to_string(label) + " is outside 0.." +
                              std::to_string(ds.n_classes - 1));
    }
    ++counts[static_cast<std::size_t>(label)];
  }
  for (int k = 0; k < ds.n_classes; ++k) {
    if (counts[static_cast<std::size_t>(k)] < 2) {
      throw std::domain_error("class " + std::to_string(k) +
                              " has fewer than 2 samples; leave-one-out would drop it");
    }
  }
}

}  // namespace detail

inline Fold fit_fold(const FeatureDataset& ds, std::size_t held_out, double spread,
                     NormMethod method = NormMethod::zscore) {
  if (held_out >= ds.rows.size()) {
    throw std::out_of_range("held-out index " + std::to_string(held_out) + " is out of range");
  }
  std::vector<FeatureVector> train_rows;
  std::vector<int> train_labels;
  train_rows.reserve(ds.rows.size() - 1);
  train_labels.reserve(ds.rows.size() - 1);
  for (std::size_t i = 0; i < ds.rows.size(); ++i) {
    if (i == held_out) continue;
    train_rows.push_back(ds.rows[i]);
    train_labels.push_back(ds.labels[i]);
  }
  Fold fold;
  fold.stats = fit_norm(train_rows, method);
  std::vector<std::vector<double>> normalized;
  normalized.reserve(train_rows.size());
  for (const auto& row : train_rows) {
    const FeatureVector v = apply_norm(fold.stats, row);
    normalized.emplace_back(v.begin(), v.end());
  }
  fold.model = train(std::move(normalized), std::move(train_labels), ds.n_classes, spread,
                     fold.stats);
  return fold;
}

inline EvalReport loo_cv(const FeatureDataset& ds, double spread = kDefaultSpread,
                         const LooOptions& opts = {}) {
  detail::check_dataset(ds);
  pnn_bias(spread);  // validates spread
  const std::size_t n = ds.rows.size();

  std::vector<int> predicted(n, 0);
  std::vector<double> classify_times(n, 0.0);
  const bool timed = opts.threads <= 1;

  const auto run_fold = [&](std::size_t i) {
    const Fold fold = fit_fold(ds, i, spread, opts.norm_method);
    const FeatureVector probe = apply_norm(fold.stats, ds.rows[i]);
    if (timed) {
      const auto t0 = std::chrono::steady_clock::now();
      predicted[i] = classify(fold.model, probe);
      const auto t1 = std::chrono::steady_clock::now();
      classify_times[i] = std::chrono::duration<double>(t1 - t0).count();
    } else {
      predicted[i] = classify(fold.model, probe);
    }
  };

  if (opts.threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) run_fold(i);
  } else {
    const unsigned workers = std::min<unsigned>(opts.threads, static_cast<unsigned>(n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n; i += workers) run_fold(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  EvalReport report;
  report.spread = spread;
  report.norm_method = opts.norm_method;
  report.n_samples = n;
  report.confusion.assign(static_cast<std::size_t>(ds.n_classes),
                          std::vector<std::int64_t>(static_cast<std::size_t>(ds.n_classes), 0));
  std::size_t correct = 0;
  report.predictions.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int truth = ds.labels[i];
    ++report.confusion[static_cast<std::size_t>(truth)][static_cast<std::size_t>(predicted[i])];
    if (truth == predicted[i]) ++correct;
    Prediction p;
    p.source_id = ds.source_ids.empty() ? std::to_string(i) : ds.source_ids[i];
    p.truth = truth;
    p.predicted = predicted[i];
    report.predictions.push_back(std::move(p));
  }
  report.accuracy = static_cast<double>(correct) / static_cast<double>(n);

  for (int k = 0; k < ds.n_classes; ++k) {
    std::int64_t tp = 0, fn = 0, tn = 0, fp = 0;
    for (int t = 0; t < ds.n_classes; ++t) {
      for (int p = 0; p < ds.n_classes; ++p) {
        const std::int64_t c =
            report.confusion[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
        if (t == k && p == k) tp += c;
        if (t == k && p != k) fn += c;
        if (t != k && p == k) fp += c;
        if (t != k && p != k) tn += c;
      }
    }
    PerClassStats s;
    s.cls = k;
    s.sensitivity = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    s.specificity = tn + fp > 0 ? static_cast<double>(tn) / static_cast<double>(tn + fp) : 0.0;
    report.per_class.push_back(s);
  }

  report.timed = timed;
  if (timed) {
    std::sort(classify_times.begin(), classify_times.end());
    report.median_fold_classify_s = n % 2 == 1
                                        ? classify_times[n / 2]
                                        : 0.5 * (classify_times[n / 2 - 1] + classify_times[n / 2]);
  }
  return report;
}

inline std::vector<std::pair<double, double>> spread_sweep(const FeatureDataset& ds,
                                                           std::span<const double> spreads,
                                                           const LooOptions& opts = {}) {
  std::vector<std::pair<double, double>> out;
  out.reserve(spreads.size());
  for (double s : spreads) {
    out.emplace_back(s, loo_cv(ds, s, opts).accuracy);
  }
  return out;
}

struct PipelineConfig {
  bool lowpass = true;  // 40 Hz brick-wall before feature extraction
  HfdConfig hfd{};
  NormMethod norm_method = NormMethod::zscore;
};

using SegmentCorpus = std::map<SetTag, std::vector<Segment>>;

inline FeatureDataset build_experiment(const ExperimentDef& def, const SegmentCorpus& corpus,
                                       const PipelineConfig& cfg = {}) {
  FeatureDataset ds;
  ds.n_classes = 2;
  const Segment* first = nullptr;
  const auto add_group = [&](const std::vector<SetTag>& sets, int label) {
    for (SetTag tag : sets) {
      const auto it = corpus.find(tag);
      if (it == corpus.end() || it->second.empty()) {
        throw io_error(std::string("experiment ") + std::to_string(def.id) + " needs set " +
                       set_tag_letter(tag) + " but it is missing or empty");
      }
      for (const Segment& seg : it->second) {
        if (first == nullptr) {
          first = &seg;
        } else if (seg.samples.size() != first->samples.size()) {
          throw shape_error("segment '" + seg.source_id + "' has " +
                            std::to_string(seg.samples.size()) + " samples but '" +
                            first->source_id + "' has " +
                            std::to_string(first->samples.size()));
        }
        const Segment processed = cfg.lowpass ? lowpass_40hz(seg) : seg;
        ds.rows.push_back(extract_features(processed, cfg.hfd));
        ds.labels.push_back(label);
        ds.source_ids.push_back(seg.source_id);
      }
    }
  };
  add_group(def.positive_sets, 0);
  add_group(def.negative_sets, 1);
  return ds;
}

}  // namespace eegpnn
