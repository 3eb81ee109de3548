// Command-line front end: extract features, run LOO-CV experiments, sweep the
// spread constant, train/apply model files, and generate synthetic corpora.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <eegpnn/eegpnn.hpp>

namespace fs = std::filesystem;
using namespace eegpnn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPipeline = 1;
constexpr int kExitParse = 2;
constexpr int kExitMissingData = 3;
constexpr int kExitModelMismatch = 4;
constexpr int kExitUsage = 64;

struct RunConfig {
  std::string in_dir;
  std::string data_dir;
  std::string features_csv;
  std::string model_path;
  std::string segment_path;
  std::string manifest_path;
  std::string out_path;
  std::string out_dir;
  std::string set = "A";
  std::string lowpass = "on";
  std::string norm = "zscore";
  int experiment = 1;
  double spread = kDefaultSpread;
  std::vector<double> spreads = {0.01, 0.05, 0.1, 0.5, 1.0};
  std::size_t k_max = 5;
  unsigned threads = 1;
  bool demo = false;
};

PipelineConfig pipeline_from(const RunConfig& cfg) {
  PipelineConfig p;
  p.lowpass = cfg.lowpass == "on";
  p.hfd.k_max = cfg.k_max;
  p.norm_method = parse_norm_method(cfg.norm);
  return p;
}

SegmentCorpus load_corpus(const fs::path& root, const ExperimentDef& def) {
  if (root.empty()) {
    throw io_error("no data directory given (use --data or set EEGPNN_DATA_DIR)");
  }
  if (!fs::is_directory(root)) {
    throw io_error("data directory " + root.string() + " does not exist");
  }
  SegmentCorpus corpus;
  for (const auto& group : {def.positive_sets, def.negative_sets}) {
    for (SetTag tag : group) {
      corpus[tag] = load_bonn_dir(resolve_set_dir(root, tag), tag);
    }
  }
  return corpus;
}

FeatureDataset dataset_for(const RunConfig& cfg, const ExperimentDef& def) {
  if (!cfg.features_csv.empty()) {
    return read_feature_csv(cfg.features_csv);
  }
  return build_experiment(def, load_corpus(cfg.data_dir, def), pipeline_from(cfg));
}

int cmd_extract(const RunConfig& cfg) {
  const SetTag tag = parse_set_tag(cfg.set);
  const PipelineConfig pipe = pipeline_from(cfg);
  const auto segments = load_bonn_dir(cfg.in_dir, tag);
  FeatureDataset ds;
  ds.n_classes = 5;
  for (const Segment& seg : segments) {
    const Segment processed = pipe.lowpass ? lowpass_40hz(seg) : seg;
    ds.rows.push_back(extract_features(processed, pipe.hfd));
    ds.labels.push_back(static_cast<int>(tag));  // set index A=0 .. E=4
    ds.source_ids.push_back(seg.source_id);
  }
  write_feature_csv(cfg.out_path, ds);
  std::cout << "wrote " << ds.rows.size() << " rows to " << cfg.out_path << "\n";
  return kExitOk;
}

int cmd_cv(const RunConfig& cfg) {
  const ExperimentDef& def = experiment_by_id(cfg.experiment);
  const FeatureDataset ds = dataset_for(cfg, def);
  LooOptions opts;
  opts.norm_method = parse_norm_method(cfg.norm);
  opts.threads = cfg.threads;
  EvalReport report = loo_cv(ds, cfg.spread, opts);
  report.experiment_id = def.id;
  report.experiment_name = def.name;
  write_report_json(cfg.out_path, report);
  std::printf("experiment %d (%s): n=%zu spread=%g accuracy=%.4f median_fold_classify_s=%g\n",
              def.id, def.name.c_str(), report.n_samples, report.spread, report.accuracy,
              report.median_fold_classify_s);
  std::cout << "wrote " << cfg.out_path << "\n";
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
  for (double s : cfg.spreads) {
    if (!(s > 0.0)) {
      std::cerr << "error: --spreads values must be positive\n";
      return kExitUsage;
    }
  }
  const ExperimentDef& def = experiment_by_id(cfg.experiment);
  const FeatureDataset ds = dataset_for(cfg, def);
  LooOptions opts;
  opts.norm_method = parse_norm_method(cfg.norm);
  opts.threads = cfg.threads;
  const auto sweep = spread_sweep(ds, cfg.spreads, opts);
  write_sweep_csv(cfg.out_path, sweep);
  for (const auto& [spread, accuracy] : sweep) {
    std::printf("spread=%g accuracy=%.4f\n", spread, accuracy);
  }
  std::cout << "wrote " << cfg.out_path << "\n";
  return kExitOk;
}

int cmd_train(const RunConfig& cfg) {
  const ExperimentDef& def = experiment_by_id(cfg.experiment);
  const FeatureDataset ds = dataset_for(cfg, def);
  const PipelineConfig pipe = pipeline_from(cfg);
  const NormStats stats = fit_norm(ds.rows, pipe.norm_method);
  std::vector<std::vector<double>> rows;
  rows.reserve(ds.rows.size());
  for (const auto& row : ds.rows) {
    const FeatureVector v = apply_norm(stats, row);
    rows.emplace_back(v.begin(), v.end());
  }
  const PnnModel model = train(std::move(rows), ds.labels, ds.n_classes, cfg.spread, stats);
  save_model(cfg.out_path, model, pipe);
  std::cout << "trained on " << model.n_stored() << " samples (" << model.n_classes
            << " classes), wrote " << cfg.out_path << "\n";
  return kExitOk;
}

int cmd_classify(const RunConfig& cfg) {
  const LoadedModel loaded = load_model(cfg.model_path);
  Segment seg = read_segment_text(cfg.segment_path);
  drop_bonn_padding(seg);
  validate(seg);
  if (loaded.pipeline.lowpass) seg = lowpass_40hz(seg);
  const FeatureVector features = extract_features(seg, loaded.pipeline.hfd);
  const ClassificationTrace trace = classify_features_trace(loaded.model, features);
  std::cout << "class " << trace.winner << "\n";
  std::cout << "scores";
  for (double d : trace.class_scores) std::cout << " " << d;
  std::cout << "\n";
  return kExitOk;
}

int cmd_synth(const RunConfig& cfg) {
  const SyntheticManifest manifest =
      cfg.demo ? demo_corpus_manifest() : read_manifest(cfg.manifest_path);
  const auto corpus = generate_corpus(manifest);
  const fs::path out_dir(cfg.out_dir);
  fs::create_directories(out_dir);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const fs::path set_dir = out_dir / std::string(1, set_tag_letter(corpus[i].set_tag));
    fs::create_directories(set_dir);
    write_segment_text(set_dir / (manifest.entries[i].id + ".txt"), corpus[i].segment);
  }
  write_manifest(out_dir / "manifest.json", manifest);
  std::cout << "wrote " << corpus.size() << " segments under " << out_dir.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EEG feature extraction and PNN classification toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto add_pipeline_opts = [&cfg](CLI::App* sub) {
    sub->add_option("--lowpass", cfg.lowpass, "apply the 40 Hz low-pass before extraction")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    sub->add_option("--kmax", cfg.k_max, "Higuchi k_max")
        ->check(CLI::Range(std::size_t{2}, std::size_t{64}))
        ->capture_default_str();
    sub->add_option("--norm", cfg.norm, "feature normalization method")
        ->check(CLI::IsMember({"zscore", "minmax"}))
        ->capture_default_str();
  };
  const auto add_dataset_opts = [&cfg, &add_pipeline_opts](CLI::App* sub) {
    sub->add_option("--experiment", cfg.experiment, "experiment id")
        ->check(CLI::Range(1, 4))
        ->required();
    sub->add_option("--data", cfg.data_dir, "corpus root with set subdirectories")
        ->envname("EEGPNN_DATA_DIR");
    sub->add_option("--features", cfg.features_csv, "precomputed feature CSV (skips extraction)");
    sub->add_option("--spread", cfg.spread, "PNN spread constant")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--threads", cfg.threads, "fold workers; >1 disables fold timing")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();
    add_pipeline_opts(sub);
  };

  CLI::App* extract = app.add_subcommand("extract", "extract features from one set directory");
  extract->add_option("--in", cfg.in_dir, "directory of segment text files")->required();
  extract->add_option("--set", cfg.set, "set tag A..E")->required();
  extract->add_option("--out", cfg.out_path, "output feature CSV")->required();
  add_pipeline_opts(extract);

  CLI::App* cv = app.add_subcommand("cv", "leave-one-out cross-validation for one experiment");
  add_dataset_opts(cv);
  cv->add_option("--out", cfg.out_path, "output JSON report (default report.json)");

  CLI::App* sweep = app.add_subcommand("sweep", "LOO-CV accuracy over a grid of spread values");
  add_dataset_opts(sweep);
  sweep->add_option("--spreads", cfg.spreads, "comma-separated spread grid")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--out", cfg.out_path, "output CSV of (spread, accuracy)");

  CLI::App* train_cmd = app.add_subcommand("train", "train a PNN model file");
  add_dataset_opts(train_cmd);
  train_cmd->add_option("--out", cfg.out_path, "output model JSON");

  CLI::App* classify_cmd = app.add_subcommand("classify", "classify one segment with a model file");
  classify_cmd->add_option("--model", cfg.model_path, "model JSON from 'train'")->required();
  classify_cmd->add_option("--segment", cfg.segment_path, "segment text file")->required();

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic corpus in Bonn layout");
  synth->add_option("--manifest", cfg.manifest_path, "corpus manifest JSON");
  synth->add_flag("--demo", cfg.demo, "use the built-in two-class demo corpus");
  synth->add_option("--out-dir", cfg.out_dir, "output corpus directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (extract->parsed()) return cmd_extract(cfg);
    if (cv->parsed()) {
      if (cfg.out_path.empty()) cfg.out_path = "report.json";
      return cmd_cv(cfg);
    }
    if (sweep->parsed()) {
      if (cfg.out_path.empty()) cfg.out_path = "sweep.csv";
      return cmd_sweep(cfg);
    }
    if (train_cmd->parsed()) {
      if (cfg.out_path.empty()) cfg.out_path = "model.json";
      return cmd_train(cfg);
    }
    if (classify_cmd->parsed()) return cmd_classify(cfg);
    if (synth->parsed()) {
      if (!cfg.demo && cfg.manifest_path.empty()) {
        std::cerr << "error: synth needs --manifest or --demo\n";
        return kExitUsage;
      }
      return cmd_synth(cfg);
    }
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const shape_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMissingData;
  } catch (const model_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitModelMismatch;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPipeline;
  }
  return kExitUsage;
}
