#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eegpnn/errors.hpp"
#include "eegpnn/normalize.hpp"

namespace eegpnn {

inline constexpr double kDefaultSpread = 0.1;

// Radial basis bias sqrt(ln 2) / s: the activation exp(-(d*b)^2) crosses 0.5
// exactly at weighted input +-s.
inline double pnn_bias(double spread) {
  if (!(spread > 0.0)) {
    throw std::domain_error("spread must be positive, got " + std::to_string(spread));
  }
  return std::sqrt(std::numbers::ln2) / spread;
}

// Three-layer probabilistic neural network. Training is storage: each row of
// `weights` is one (already normalized) training vector. Immutable after train.
struct PnnModel {
  std::size_t n_features = kFeatureCount;  // R
  int n_classes = 0;                       // K
  double spread = kDefaultSpread;
  std::vector<std::vector<double>> weights;  // Q rows
  std::vector<int> labels;                   // class of each stored row
  NormStats norm = identity_norm_stats();

  std::size_t n_stored() const { return weights.size(); }
  double bias() const { return pnn_bias(spread); }
};

struct ClassificationTrace {
  std::vector<double> distances;     // n_q: weighted euclidean distance per row
  std::vector<double> activations;   // a_q = exp(-n_q^2); may underflow for far rows
  std::vector<double> class_scores;  // d = M . a
  std::vector<double> class_means;   // d_k / class count, diagnostic only
  int winner = 0;
};

namespace detail {

inline void check_probe(const PnnModel& model, std::span<const double> p) {
  if (p.size() != model.n_features) {
    throw model_error("input has " + std::to_string(p.size()) + " features but the model expects " +
                      std::to_string(model.n_features));
  }
  for (double v : p) {
    if (!std::isfinite(v)) throw std::domain_error("classification input has a non-finite value");
  }
}

// Squared weighted distances n_q^2. The winner is computed from exponentials
// shifted by min(n_q^2), which leaves the class ordering unchanged but keeps
// the competitive layer meaningful when every raw activation underflows
// (tiny spreads / distant probes).
inline std::vector<double> squared_inputs(const PnnModel& model, std::span<const double> p) {
  const double b2 = model.bias() * model.bias();
  std::vector<double> nsq(model.n_stored());
  for (std::size_t q = 0; q < model.n_stored(); ++q) {
    const auto& row = model.weights[q];
    double d2 = 0.0;
    for (std::size_t f = 0; f < row.size(); ++f) {
      const double d = row[f] - p[f];
      d2 += d * d;
    }
    nsq[q] = d2 * b2;
  }
  return nsq;
}

inline int competitive_winner(const PnnModel& model, const std::vector<double>& nsq,
                              std::vector<double>* shifted_scores = nullptr) {
  double min_nsq = nsq[0];
  for (double v : nsq) min_nsq = std::min(min_nsq, v);
  std::vector<double> scores(static_cast<std::size_t>(model.n_classes), 0.0);
  for (std::size_t q = 0; q < nsq.size(); ++q) {
    scores[static_cast<std::size_t>(model.labels[q])] += std::exp(-(nsq[q] - min_nsq));
  }
  int winner = 0;
  for (int k = 1; k < model.n_classes; ++k) {
    if (scores[static_cast<std::size_t>(k)] > scores[static_cast<std::size_t>(winner)]) winner = k;
  }
  if (shifted_scores != nullptr) *shifted_scores = std::move(scores);
  return winner;
}

}  // namespace detail

inline PnnModel train(std::vector<std::vector<double>> rows, std::vector<int> labels,
                      int n_classes, double spread = kDefaultSpread,
                      NormStats norm = identity_norm_stats()) {
  if (rows.empty() || rows.size() != labels.size()) {
    throw shape_error("training needs matching non-empty rows and labels");
  }
  if (n_classes < 2) {
    throw std::domain_error("a classifier needs at least 2 classes");
  }
  pnn_bias(spread);  // validates spread
  const std::size_t n_features = rows.front().size();
  if (n_features == 0) throw shape_error("training rows must be non-empty");
  std::vector<std::size_t> class_counts(static_cast<std::size_t>(n_classes), 0);
  for (std::size_t q = 0; q < rows.size(); ++q) {
    if (rows[q].size() != n_features) {
      throw shape_error("training row " + std::to_string(q) + " has " +
                        std::to_string(rows[q].size()) + " features, expected " +
                        std::to_string(n_features));
    }
    for (double v : rows[q]) {
      if (!std::isfinite(v)) {
        throw std::domain_error("training row " + std::to_string(q) + " has a non-finite value");
      }
    }
    if (labels[q] < 0 || labels[q] >= n_classes) {
      throw std::domain_error("label " + std::to_string(labels[q]) + " of row " +
                              std::to_string(q) + " is outside 0.." + std::to_string(n_classes - 1));
    }
    ++class_counts[static_cast<std::size_t>(labels[q])];
  }
  for (int k = 0; k < n_classes; ++k) {
    if (class_counts[static_cast<std::size_t>(k)] == 0) {
      throw std::domain_error("class " + std::to_string(k) + " has no training samples");
    }
  }
  PnnModel model;
  model.n_features = n_features;
  model.n_classes = n_classes;
  model.spread = spread;
  model.weights = std::move(rows);
  model.labels = std::move(labels);
  model.norm = std::move(norm);
  return model;
}

// Incremental insertion; classifying against the result is exactly equivalent
// to retraining from scratch on the enlarged set.
inline PnnModel add_sample(PnnModel model, std::span<const double> v, int label) {
  if (label < 0 || label >= model.n_classes) {
    throw std::domain_error("label " + std::to_string(label) + " is outside 0.." +
                            std::to_string(model.n_classes - 1));
  }
  detail::check_probe(model, v);
  model.weights.emplace_back(v.begin(), v.end());
  model.labels.push_back(label);
  return model;
}

// Winner class index; ties go to the lowest class index.
inline int classify(const PnnModel& model, std::span<const double> p) {
  if (model.n_stored() == 0 || model.n_classes < 2) {
    throw model_error("model has no stored training samples");
  }
  detail::check_probe(model, p);
  const auto nsq = detail::squared_inputs(model, p);
  return detail::competitive_winner(model, nsq);
}

inline ClassificationTrace classify_trace(const PnnModel& model, std::span<const double> p) {
  if (model.n_stored() == 0 || model.n_classes < 2) {
    throw model_error("model has no stored training samples");
  }
  detail::check_probe(model, p);
  const auto nsq = detail::squared_inputs(model, p);

  ClassificationTrace trace;
  trace.winner = detail::competitive_winner(model, nsq);
  trace.distances.resize(nsq.size());
  trace.activations.resize(nsq.size());
  trace.class_scores.assign(static_cast<std::size_t>(model.n_classes), 0.0);
  std::vector<std::size_t> counts(static_cast<std::size_t>(model.n_classes), 0);
  for (std::size_t q = 0; q < nsq.size(); ++q) {
    trace.distances[q] = std::sqrt(nsq[q]);  // n_q = euclidean distance times bias
    trace.activations[q] = std::exp(-nsq[q]);
    trace.class_scores[static_cast<std::size_t>(model.labels[q])] += trace.activations[q];
    ++counts[static_cast<std::size_t>(model.labels[q])];
  }
  trace.class_means.resize(trace.class_scores.size());
  for (std::size_t k = 0; k < trace.class_scores.size(); ++k) {
    trace.class_means[k] = trace.class_scores[k] / static_cast<double>(counts[k]);
  }
  return trace;
}

// Raw-feature entry point: applies the model's stored normalization first.
inline int classify_features(const PnnModel& model, const FeatureVector& raw) {
  if (model.n_features != kFeatureCount) {
    throw model_error("model expects " + std::to_string(model.n_features) +
                      " features, pipeline produces " + std::to_string(kFeatureCount));
  }
  const FeatureVector normalized = apply_norm(model.norm, raw);
  return classify(model, normalized);
}

inline ClassificationTrace classify_features_trace(const PnnModel& model,
                                                   const FeatureVector& raw) {
  if (model.n_features != kFeatureCount) {
    throw model_error("model expects " + std::to_string(model.n_features) +
                      " features, pipeline produces " + std::to_string(kFeatureCount));
  }
  const FeatureVector normalized = apply_norm(model.norm, raw);
  return classify_trace(model, normalized);
}

}  // namespace eegpnn
