// wristleak command line front end. Links the C API only; everything here is
// argument plumbing, manifest assembly, and file naming.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wristleak.h"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInternal = 2;
constexpr int kExitUsage = 64;

int exit_code_for(wl_status st) {
  switch (st) {
    case WL_OK: return kExitOk;
    case WL_ERR_VALIDATION: return kExitValidation;
    default: return kExitInternal;
  }
}

// Aborts the handler by throwing the mapped exit code.
void check(wl_status st) {
  if (st != WL_OK) {
    std::cerr << "error: " << wl_last_error() << "\n";
    throw exit_code_for(st);
  }
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  ~Handle() { Free(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

using TraceHandle = Handle<wl_trace, wl_trace_free>;
using LabelsHandle = Handle<wl_labels, wl_labels_free>;
using RecordsHandle = Handle<wl_records, wl_records_free>;
using VectorsHandle = Handle<wl_vectors, wl_vectors_free>;
using ModelHandle = Handle<wl_model, wl_model_free>;

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { wl_string_free(ptr); }
  char** out() { return &ptr; }
  std::string str() const { return ptr ? ptr : ""; }
};

std::string sha256_file(const std::string& path) {
  char hex[65];
  check(wl_sha256_file(path.c_str(), hex));
  return hex;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    throw kExitValidation;
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Captures everything that determines a run's outputs: flag values verbatim
// and input files by content digest. Identical manifests imply byte-identical
// artifacts.
class Manifest {
 public:
  explicit Manifest(std::string command) : command_(std::move(command)) {}

  void add_flag(const std::string& name, const json& value) { args_[name] = value; }

  void add_input_file(const std::string& name, const std::string& path) {
    args_["input:" + name] = sha256_file(path);
  }

  // Writes content into dir/filename atomically and registers the output.
  void write_output(const std::string& dir, const std::string& filename,
                    const std::string& content) {
    const std::string path = (std::filesystem::path(dir) / filename).string();
    check(wl_write_file(path.c_str(), content.c_str()));
    ordered_json entry;
    entry["path"] = filename;
    entry["sha256"] = sha256_file(path);
    outputs_.push_back(std::move(entry));
  }

  void register_output(const std::string& dir, const std::string& filename) {
    const std::string path = (std::filesystem::path(dir) / filename).string();
    ordered_json entry;
    entry["path"] = filename;
    entry["sha256"] = sha256_file(path);
    outputs_.push_back(std::move(entry));
  }

  void write(const std::string& dir) {
    ordered_json manifest;
    manifest["command"] = command_;
    char hex[65];
    const std::string canonical = json(args_).dump();
    check(wl_sha256_string(canonical.c_str(), hex));
    manifest["config_hash"] = hex;
    manifest["tool_version"] = wl_version();
    manifest["args"] = args_;
    manifest["outputs"] = outputs_;
    const std::string path = (std::filesystem::path(dir) / "manifest.json").string();
    check(wl_write_file(path.c_str(), (manifest.dump(2) + "\n").c_str()));
  }

 private:
  std::string command_;
  json args_;  // std::map ordering keeps the hash canonical
  std::vector<ordered_json> outputs_;
};

void ensure_outdir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::cerr << "error: cannot create output directory '" << dir << "'\n";
    throw kExitValidation;
  }
}

uint64_t resolve_seed(const CLI::Option* seed_opt, uint64_t seed_flag) {
  if (seed_opt->count() > 0) return seed_flag;
  if (const char* env = std::getenv("WRISTLEAK_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

std::string random_digits(uint64_t seed, size_t count) {
  // splitmix64 stream; good enough for synthetic key material.
  std::string keys;
  uint64_t x = seed;
  for (size_t i = 0; i < count; ++i) {
    x += 0x9e3779b97f4a7c15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    keys.push_back(static_cast<char>('0' + z % 10));
  }
  return keys;
}

std::string read_handle_file(const std::string& path) { return read_text_file(path); }

// ---- subcommand implementations -------------------------------------------

struct IngestArgs {
  std::string trace_path, device, outdir;
  double resample_hz = 0.0;
  bool do_resample = false;
};

int run_ingest(const IngestArgs& a) {
  Manifest manifest("ingest");
  manifest.add_input_file("trace", a.trace_path);
  if (!a.device.empty()) manifest.add_flag("device", a.device);
  TraceHandle trace;
  check(wl_trace_read_file(a.trace_path.c_str(), a.device.empty() ? nullptr : a.device.c_str(),
                           trace.out()));
  TraceHandle resampled;
  const wl_trace* final_trace = trace.get();
  if (a.do_resample) {
    manifest.add_flag("resample_hz", a.resample_hz);
    check(wl_trace_resample(trace.get(), a.resample_hz, resampled.out()));
    final_trace = resampled.get();
  }
  ensure_outdir(a.outdir);
  const std::string out_path = (std::filesystem::path(a.outdir) / "trace.jsonl").string();
  check(wl_trace_write_file(final_trace, out_path.c_str()));
  manifest.register_output(a.outdir, "trace.jsonl");
  manifest.write(a.outdir);
  std::cout << "ingested " << wl_trace_sample_count(final_trace) << " samples at "
            << wl_trace_rate_hz(final_trace) << " Hz\n";
  return kExitOk;
}

struct SynthArgs {
  std::string scenario, keys, config_path, outdir, device = "watch";
  size_t random_keys = 0;
  uint64_t seed = 0;
  double noise_sigma = -1.0, amplitude = -1.0, rate_hz = -1.0;
};

int run_synth(const SynthArgs& a) {
  json config = json::object();
  if (!a.config_path.empty()) config = json::parse(read_text_file(a.config_path));
  config["scenario"] = a.scenario;
  config["seed"] = a.seed;
  config["device"] = a.device;
  if (a.noise_sigma >= 0.0) config["noise_sigma"] = a.noise_sigma;
  if (a.amplitude > 0.0) config["spike_amplitude"] = a.amplitude;
  if (a.rate_hz > 0.0) config["rate_hz"] = a.rate_hz;

  std::string keys = a.keys;
  if (keys.empty() && a.random_keys > 0) keys = random_digits(a.seed, a.random_keys);
  if (keys.empty()) {
    std::cerr << "error: provide --keys or --random-keys\n";
    return kExitValidation;
  }

  Manifest manifest("synth");
  manifest.add_flag("config", config);
  manifest.add_flag("keys", keys);

  TraceHandle trace;
  LabelsHandle labels;
  const std::string cfg = config.dump();
  if (a.scenario == "sh") {
    check(wl_synth_sh(cfg.c_str(), keys.c_str(), trace.out(), labels.out()));
  } else {
    check(wl_synth_dh(cfg.c_str(), keys.c_str(), trace.out(), labels.out()));
  }

  ensure_outdir(a.outdir);
  const auto trace_path = (std::filesystem::path(a.outdir) / "trace.jsonl").string();
  const auto labels_path = (std::filesystem::path(a.outdir) / "labels.jsonl").string();
  check(wl_trace_write_file(trace.get(), trace_path.c_str()));
  check(wl_labels_write_file(labels.get(), labels_path.c_str()));
  manifest.register_output(a.outdir, "trace.jsonl");
  manifest.register_output(a.outdir, "labels.jsonl");
  manifest.write_output(a.outdir, "synth_config.json", config.dump(2) + "\n");
  manifest.write(a.outdir);
  std::cout << "synthesized " << wl_trace_sample_count(trace.get()) << " samples, "
            << wl_labels_count(labels.get()) << " presses\n";
  return kExitOk;
}

struct DetectArgs {
  std::string trace_path, labels_path, outdir;
  double threshold = 0.0;
  bool has_threshold = false;
};

int run_detect(const DetectArgs& a) {
  Manifest manifest("detect");
  manifest.add_input_file("trace", a.trace_path);
  TraceHandle trace;
  check(wl_trace_read_file(a.trace_path.c_str(), nullptr, trace.out()));

  double threshold = a.threshold;
  size_t trained_on = 0;
  if (!a.has_threshold) {
    if (a.labels_path.empty()) {
      std::cerr << "error: provide --labels (to train a threshold) or --threshold\n";
      return kExitValidation;
    }
    manifest.add_input_file("labels", a.labels_path);
    LabelsHandle labels;
    check(wl_labels_read_file(a.labels_path.c_str(), labels.out()));
    check(wl_threshold_train(trace.get(), labels.get(), &threshold, &trained_on));
  } else {
    manifest.add_flag("threshold", threshold);
  }

  RecordsHandle records;
  size_t edge_skipped = 0;
  check(wl_detect(trace.get(), threshold, records.out(), &edge_skipped));

  ordered_json diag;
  diag["threshold"] = threshold;
  diag["trained_on"] = trained_on;
  diag["edge_skipped"] = edge_skipped;
  diag["records"] = wl_records_count(records.get());

  ensure_outdir(a.outdir);
  const auto rec_path = (std::filesystem::path(a.outdir) / "records.jsonl").string();
  check(wl_records_write_file(records.get(), rec_path.c_str(), diag.dump().c_str()));
  manifest.register_output(a.outdir, "records.jsonl");
  manifest.write(a.outdir);
  std::cout << diag.dump() << "\n";
  return kExitOk;
}

struct FeaturesArgs {
  std::string records_path, schema, subject, outdir;
};

int run_features(const FeaturesArgs& a) {
  Manifest manifest("features");
  manifest.add_input_file("records", a.records_path);
  manifest.add_flag("schema", a.schema);
  RecordsHandle records;
  check(wl_records_read_file(a.records_path.c_str(), records.out()));
  VectorsHandle vectors;
  check(wl_features_extract(records.get(), a.schema.c_str(), vectors.out()));
  if (!a.subject.empty()) {
    manifest.add_flag("subject", a.subject);
    check(wl_vectors_set_subject(vectors.ptr, a.subject.c_str()));
  }
  ensure_outdir(a.outdir);
  const auto path = (std::filesystem::path(a.outdir) / "vectors.jsonl").string();
  check(wl_vectors_write_file(vectors.get(), path.c_str()));
  manifest.register_output(a.outdir, "vectors.jsonl");
  manifest.write(a.outdir);
  std::cout << "extracted " << wl_vectors_count(vectors.get()) << " vectors (" << a.schema
            << ")\n";
  return kExitOk;
}

struct TrainArgs {
  std::vector<std::string> data_paths;
  std::string config_path, outdir;
  uint64_t seed = 0;
};

int run_train(const TrainArgs& a) {
  json config = json::object();
  if (!a.config_path.empty()) config = json::parse(read_text_file(a.config_path));
  config["seed"] = a.seed;

  Manifest manifest("train");
  manifest.add_flag("config", config);
  VectorsHandle pool;
  for (size_t i = 0; i < a.data_paths.size(); ++i) {
    manifest.add_input_file("data" + std::to_string(i), a.data_paths[i]);
    VectorsHandle part;
    check(wl_vectors_read_file(a.data_paths[i].c_str(), part.out()));
    if (pool.ptr == nullptr) {
      pool.ptr = part.ptr;
      part.ptr = nullptr;
    } else {
      check(wl_vectors_append(pool.ptr, part.get()));
    }
  }
  ModelHandle model;
  check(wl_model_fit(pool.get(), config.dump().c_str(), model.out()));
  ensure_outdir(a.outdir);
  const auto path = (std::filesystem::path(a.outdir) / "model.json").string();
  check(wl_model_save(model.get(), path.c_str()));
  manifest.register_output(a.outdir, "model.json");
  manifest.write(a.outdir);
  std::cout << "trained on " << wl_vectors_count(pool.get()) << " vectors\n";
  return kExitOk;
}

struct PredictArgs {
  std::string model_path, data_path, outdir;
};

int run_predict(const PredictArgs& a) {
  Manifest manifest("predict");
  manifest.add_input_file("model", a.model_path);
  manifest.add_input_file("data", a.data_path);
  ModelHandle model;
  check(wl_model_load(a.model_path.c_str(), model.out()));
  VectorsHandle vectors;
  check(wl_vectors_read_file(a.data_path.c_str(), vectors.out()));
  OwnedString preds;
  check(wl_model_predict(model.get(), vectors.get(), preds.out()));
  ensure_outdir(a.outdir);
  manifest.write_output(a.outdir, "predictions.jsonl", preds.str());
  manifest.write(a.outdir);
  std::cout << "predicted " << wl_vectors_count(vectors.get()) << " vectors\n";
  return kExitOk;
}

struct EvalArgs {
  std::vector<std::string> data_paths;
  std::string protocol, target_subject, train_config_path, outdir;
  double train_fraction = 2.0 / 3.0;
  uint64_t seed = 0;
};

int run_eval(const EvalArgs& a) {
  Manifest manifest("eval");
  manifest.add_flag("protocol", a.protocol);
  manifest.add_flag("train_fraction", a.train_fraction);
  manifest.add_flag("seed", a.seed);

  std::vector<VectorsHandle> handles(a.data_paths.size());
  std::vector<const wl_vectors*> datasets;
  for (size_t i = 0; i < a.data_paths.size(); ++i) {
    manifest.add_input_file("data" + std::to_string(i), a.data_paths[i]);
    check(wl_vectors_read_file(a.data_paths[i].c_str(), handles[i].out()));
    datasets.push_back(handles[i].get());
  }

  json split;
  split["train_fraction"] = a.train_fraction;
  split["seed"] = a.seed;
  if (!a.target_subject.empty()) split["target_subject"] = a.target_subject;

  json train_config = json::object();
  if (!a.train_config_path.empty()) train_config = json::parse(read_text_file(a.train_config_path));
  if (!train_config.contains("seed")) train_config["seed"] = a.seed;
  manifest.add_flag("train_config", train_config);

  OwnedString report;
  check(wl_evaluate(datasets.data(), datasets.size(), a.protocol.c_str(), split.dump().c_str(),
                    train_config.dump().c_str(), report.out()));
  ensure_outdir(a.outdir);
  manifest.write_output(a.outdir, "report.json", report.str());
  manifest.write(a.outdir);
  std::cout << report.str();
  return kExitOk;
}

struct TraceArgs {
  std::string dirs_json, dirs_file, trace_path, model_path, mode = "bidirectional";
  std::string phone_preds_path, outdir;
  size_t rw_subsequences = 16, rw_min = 2, rw_max = 6;
  uint64_t seed = 0;
};

int run_trace(const TraceArgs& a) {
  Manifest manifest("trace");
  manifest.add_flag("mode", a.mode);

  std::string dirs_json = a.dirs_json;
  if (!a.dirs_file.empty()) {
    manifest.add_input_file("dirs_file", a.dirs_file);
    dirs_json = read_text_file(a.dirs_file);
  }

  OwnedString scanned;
  if (dirs_json.empty()) {
    if (a.trace_path.empty() || a.model_path.empty()) {
      std::cerr << "error: provide --dirs/--dirs-file or both --trace and --model\n";
      return kExitValidation;
    }
    manifest.add_input_file("trace", a.trace_path);
    manifest.add_input_file("model", a.model_path);
    TraceHandle trace;
    check(wl_trace_read_file(a.trace_path.c_str(), nullptr, trace.out()));
    ModelHandle model;
    check(wl_model_load(a.model_path.c_str(), model.out()));
    check(wl_scan_transitions(trace.get(), model.get(), scanned.out()));
    dirs_json = scanned.str();
  } else {
    manifest.add_flag("dirs", json::parse(dirs_json));
  }

  const char* rw_config = nullptr;
  std::string rw_config_str;
  if (a.mode == "random-walk") {
    json rw;
    rw["subsequences"] = a.rw_subsequences;
    rw["min_length"] = a.rw_min;
    rw["max_length"] = a.rw_max;
    rw["seed"] = a.seed;
    manifest.add_flag("random_walk", rw);
    rw_config_str = rw.dump();
    rw_config = rw_config_str.c_str();
  }

  OwnedString report;
  check(wl_trace_directions(dirs_json.c_str(), a.mode.c_str(), rw_config, report.out()));

  std::string final_report = report.str();
  if (!a.phone_preds_path.empty()) {
    manifest.add_input_file("phone_preds", a.phone_preds_path);
    const std::string preds = read_text_file(a.phone_preds_path);
    OwnedString refined;
    check(wl_recover_with_phone(final_report.c_str(), preds.c_str(), refined.out()));
    final_report = refined.str();
  }

  ensure_outdir(a.outdir);
  if (scanned.ptr != nullptr) {
    manifest.write_output(a.outdir, "scanned_directions.json", scanned.str() + "\n");
  }
  manifest.write_output(a.outdir, "recovery.json", final_report);
  manifest.write(a.outdir);
  std::cout << final_report;
  return kExitOk;
}

struct RecoverArgs {
  std::string report_path, phone_preds_path, outdir;
};

int run_recover(const RecoverArgs& a) {
  Manifest manifest("recover");
  manifest.add_input_file("report", a.report_path);
  manifest.add_input_file("phone_preds", a.phone_preds_path);
  const std::string report = read_text_file(a.report_path);
  const std::string preds = read_text_file(a.phone_preds_path);
  OwnedString refined;
  check(wl_recover_with_phone(report.c_str(), preds.c_str(), refined.out()));
  ensure_outdir(a.outdir);
  manifest.write_output(a.outdir, "recovery.json", refined.str());
  manifest.write(a.outdir);
  std::cout << refined.str();
  return kExitOk;
}

struct FuseArgs {
  std::string watch_path, phone_path, accel_path, gyro_path, outdir;
};

int run_fuse(const FuseArgs& a) {
  const bool watch_phone = !a.watch_path.empty() && !a.phone_path.empty();
  const bool accel_gyro = !a.accel_path.empty() && !a.gyro_path.empty();
  if (watch_phone == accel_gyro) {
    std::cerr << "error: provide either --watch/--phone or --accel/--gyro\n";
    return kExitValidation;
  }
  Manifest manifest("fuse");
  VectorsHandle first, second, fused;
  if (watch_phone) {
    manifest.add_input_file("watch", a.watch_path);
    manifest.add_input_file("phone", a.phone_path);
    check(wl_vectors_read_file(a.watch_path.c_str(), first.out()));
    check(wl_vectors_read_file(a.phone_path.c_str(), second.out()));
    check(wl_vectors_fuse(first.get(), second.get(), fused.out()));
  } else {
    manifest.add_input_file("accel", a.accel_path);
    manifest.add_input_file("gyro", a.gyro_path);
    check(wl_vectors_read_file(a.accel_path.c_str(), first.out()));
    check(wl_vectors_read_file(a.gyro_path.c_str(), second.out()));
    check(wl_vectors_combine(first.get(), second.get(), fused.out()));
  }
  ensure_outdir(a.outdir);
  const auto path = (std::filesystem::path(a.outdir) / "fused.jsonl").string();
  check(wl_vectors_write_file(fused.get(), path.c_str()));
  manifest.register_output(a.outdir, "fused.jsonl");
  manifest.write(a.outdir);
  std::cout << "fused " << wl_vectors_count(fused.get()) << " vectors\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wristleak: motion side-channel keystroke inference toolkit"};
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Validate and normalize a trace file");
  ingest_cmd->add_option("--trace", ingest.trace_path, "Input trace (JSONL)")->required();
  ingest_cmd->add_option("--device", ingest.device, "Expected device (watch|phone)");
  auto* resample_opt =
      ingest_cmd->add_option("--resample", ingest.resample_hz, "Decimate to this rate (Hz)");
  ingest_cmd->add_option("-o,--out", ingest.outdir, "Output directory")->required();

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a labeled synthetic trace");
  synth_cmd->add_option("--scenario", synth.scenario, "sh (spikes) or dh (transitions)")
      ->required()
      ->check(CLI::IsMember({"sh", "dh"}));
  synth_cmd->add_option("--keys", synth.keys, "Digit sequence to type");
  synth_cmd->add_option("--random-keys", synth.random_keys, "Generate this many random keys");
  auto* synth_seed = synth_cmd->add_option("--seed", synth.seed, "Random seed");
  synth_cmd->add_option("--noise-sigma", synth.noise_sigma, "Gaussian noise sigma (m/s^2)");
  synth_cmd->add_option("--amplitude", synth.amplitude, "Spike amplitude (SH)");
  synth_cmd->add_option("--rate", synth.rate_hz, "Sampling rate (Hz)");
  synth_cmd->add_option("--device", synth.device, "Device tag (watch|phone)");
  synth_cmd->add_option("--config", synth.config_path, "Config JSON file (flags override)");
  synth_cmd->add_option("-o,--out", synth.outdir, "Output directory")->required();

  DetectArgs detect;
  auto* detect_cmd = app.add_subcommand("detect", "Detect key presses in a trace");
  detect_cmd->add_option("--trace", detect.trace_path, "Input trace")->required();
  detect_cmd->add_option("--labels", detect.labels_path, "Labels to train the threshold");
  auto* thr_opt = detect_cmd->add_option("--threshold", detect.threshold, "Fixed threshold");
  detect_cmd->add_option("-o,--out", detect.outdir, "Output directory")->required();

  FeaturesArgs features;
  auto* features_cmd = app.add_subcommand("features", "Extract feature vectors from records");
  features_cmd->add_option("--records", features.records_path, "Record file")->required();
  features_cmd
      ->add_option("--schema", features.schema,
                   "watch-accel-155, gyro-59 or transition-freq")
      ->required();
  features_cmd->add_option("--subject", features.subject, "Subject tag for the vectors");
  features_cmd->add_option("-o,--out", features.outdir, "Output directory")->required();

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Fit the five-member ensemble");
  train_cmd->add_option("--data", train.data_paths, "Labeled vector files")->required();
  auto* train_seed = train_cmd->add_option("--seed", train.seed, "Random seed");
  train_cmd->add_option("--config", train.config_path, "Training config JSON file");
  train_cmd->add_option("-o,--out", train.outdir, "Output directory")->required();

  PredictArgs predict;
  auto* predict_cmd = app.add_subcommand("predict", "Classify vectors with a trained model");
  predict_cmd->add_option("--model", predict.model_path, "Model file")->required();
  predict_cmd->add_option("--data", predict.data_path, "Vector file")->required();
  predict_cmd->add_option("-o,--out", predict.outdir, "Output directory")->required();

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Run an evaluation protocol");
  eval_cmd->add_option("--protocol", eval.protocol, "one-vs-one, one-vs-rest or all-vs-all")
      ->required();
  eval_cmd->add_option("--data", eval.data_paths, "Vector files (one per subject)")->required();
  eval_cmd->add_option("--train-fraction", eval.train_fraction, "Training split fraction");
  auto* eval_seed = eval_cmd->add_option("--seed", eval.seed, "Random seed");
  eval_cmd->add_option("--target", eval.target_subject, "Evaluate a single target subject");
  eval_cmd->add_option("--train-config", eval.train_config_path, "Training config JSON file");
  eval_cmd->add_option("-o,--out", eval.outdir, "Output directory")->required();

  TraceArgs trace;
  auto* trace_cmd = app.add_subcommand("trace", "Trace transition directions on the keypad");
  trace_cmd->add_option("--dirs", trace.dirs_json, "JSON array of directions (\"U\"=unknown)");
  trace_cmd->add_option("--dirs-file", trace.dirs_file, "File with the JSON array");
  trace_cmd->add_option("--trace", trace.trace_path, "Trace to scan for transitions");
  trace_cmd->add_option("--model", trace.model_path, "Transition model for scanning");
  trace_cmd->add_option("--mode", trace.mode,
                        "forward, backward, bidirectional or random-walk");
  trace_cmd->add_option("--rw-subsequences", trace.rw_subsequences, "Random-walk repetitions");
  trace_cmd->add_option("--rw-min-len", trace.rw_min, "Random-walk min subsequence length");
  trace_cmd->add_option("--rw-max-len", trace.rw_max, "Random-walk max subsequence length");
  auto* trace_seed = trace_cmd->add_option("--seed", trace.seed, "Random seed");
  trace_cmd->add_option("--phone-preds", trace.phone_preds_path,
                        "Phone predictions JSON (per key position)");
  trace_cmd->add_option("-o,--out", trace.outdir, "Output directory")->required();

  RecoverArgs recover;
  auto* recover_cmd =
      app.add_subcommand("recover", "Disambiguate a recovery report with phone predictions");
  recover_cmd->add_option("--report", recover.report_path, "Recovery report JSON")->required();
  recover_cmd->add_option("--phone-preds", recover.phone_preds_path, "Phone predictions JSON")
      ->required();
  recover_cmd->add_option("-o,--out", recover.outdir, "Output directory")->required();

  FuseArgs fuse;
  auto* fuse_cmd = app.add_subcommand("fuse", "Concatenate feature vector sets");
  fuse_cmd->add_option("--watch", fuse.watch_path, "Watch vectors (watch-accel-155)");
  fuse_cmd->add_option("--phone", fuse.phone_path, "Phone vectors (watch-accel-155)");
  fuse_cmd->add_option("--accel", fuse.accel_path, "Accelerometer vectors");
  fuse_cmd->add_option("--gyro", fuse.gyro_path, "Gyroscope vectors");
  fuse_cmd->add_option("-o,--out", fuse.outdir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (ingest_cmd->parsed()) {
      ingest.do_resample = resample_opt->count() > 0;
      return run_ingest(ingest);
    }
    if (synth_cmd->parsed()) {
      synth.seed = resolve_seed(synth_seed, synth.seed);
      return run_synth(synth);
    }
    if (detect_cmd->parsed()) {
      detect.has_threshold = thr_opt->count() > 0;
      return run_detect(detect);
    }
    if (features_cmd->parsed()) return run_features(features);
    if (train_cmd->parsed()) {
      train.seed = resolve_seed(train_seed, train.seed);
      return run_train(train);
    }
    if (predict_cmd->parsed()) return run_predict(predict);
    if (eval_cmd->parsed()) {
      eval.seed = resolve_seed(eval_seed, eval.seed);
      return run_eval(eval);
    }
    if (trace_cmd->parsed()) {
      trace.seed = resolve_seed(trace_seed, trace.seed);
      return run_trace(trace);
    }
    if (recover_cmd->parsed()) return run_recover(recover);
    if (fuse_cmd->parsed()) return run_fuse(fuse);
  } catch (int exit_code) {
    return exit_code;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
