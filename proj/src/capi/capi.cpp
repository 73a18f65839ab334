#include "wristleak.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include <json.hpp>

#include "classify/ensemble.hpp"
#include "classify/evaluate.hpp"
#include "core/direction_table.hpp"
#include "core/file_util.hpp"
#include "core/record_io.hpp"
#include "core/resample.hpp"
#include "core/sha256.hpp"
#include "core/trace_io.hpp"
#include "detection/detect.hpp"
#include "features/vector_io.hpp"
#include "synth/synth.hpp"
#include "transitions/scan.hpp"
#include "transitions/tracing.hpp"

using nlohmann::json;
namespace wl = wristleak;

struct wl_trace {
  wl::SensorTrace v;
};
struct wl_labels {
  wl::LabelStream v;
};
struct wl_records {
  wl::RecordBundle v;
};
struct wl_vectors {
  std::vector<wl::FeatureVector> v;
};
struct wl_model {
  wl::TrainedModel v;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
wl_status guard(Fn&& fn) {
  try {
    fn();
    return WL_OK;
  } catch (const wl::InconsistencyError& e) {
    g_last_error = e.what();
    return WL_ERR_INCONSISTENT;
  } catch (const wl::ValidationError& e) {
    g_last_error = e.what();
    return WL_ERR_VALIDATION;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WL_ERR_INTERNAL;
  }
}

wl_status require(bool ok) {
  if (!ok) {
    g_last_error = "NULL argument";
    return WL_ERR_NULL_ARGUMENT;
  }
  return WL_OK;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void hex_out_copy(const std::string& hex, char out[65]) {
  std::memcpy(out, hex.c_str(), 65);
}

std::vector<std::string> parse_phone_preds(const char* preds_json) {
  json j;
  try {
    j = json::parse(preds_json);
  } catch (const json::exception& e) {
    throw wl::ValidationError(std::string("phone predictions are not valid JSON: ") + e.what());
  }
  if (!j.is_array()) throw wl::ValidationError("phone predictions must be a JSON array");
  std::vector<std::string> preds;
  for (const auto& p : j) {
    if (p.is_string()) {
      preds.push_back(p.get<std::string>());
    } else if (p.is_object() && p.contains("label")) {
      preds.push_back(p["label"].get<std::string>());
    } else {
      throw wl::ValidationError("phone prediction entries must be strings or {\"label\":...}");
    }
  }
  return preds;
}

}  // namespace

extern "C" {

const char* wl_version(void) { return "0.1.0"; }

const char* wl_last_error(void) { return g_last_error.c_str(); }

void wl_string_free(char* s) { ::free(s); }

/* ---- traces & labels ---------------------------------------------------- */

wl_status wl_trace_read_file(const char* path, const char* expected_device, wl_trace** out) {
  if (auto st = require(path && out)) return st;
  return guard([&] {
    std::optional<wl::Device> dev;
    if (expected_device) dev = wl::device_from_name(expected_device);
    auto trace = wl::parse_trace_file(path, dev);
    trace.validate();
    *out = new wl_trace{std::move(trace)};
  });
}

wl_status wl_trace_write_file(const wl_trace* trace, const char* path) {
  if (auto st = require(trace && path)) return st;
  return guard([&] { wl::write_trace_file(trace->v, path); });
}

wl_status wl_trace_resample(const wl_trace* trace, double target_hz, wl_trace** out) {
  if (auto st = require(trace && out)) return st;
  return guard([&] { *out = new wl_trace{wl::resample(trace->v, target_hz)}; });
}

size_t wl_trace_sample_count(const wl_trace* trace) {
  return trace ? trace->v.samples.size() : 0;
}

double wl_trace_rate_hz(const wl_trace* trace) {
  return trace ? trace->v.nominal_rate_hz : 0.0;
}

void wl_trace_free(wl_trace* trace) { delete trace; }

wl_status wl_labels_read_file(const char* path, wl_labels** out) {
  if (auto st = require(path && out)) return st;
  return guard([&] {
    auto labels = wl::parse_labels_file(path);
    labels.validate();
    *out = new wl_labels{std::move(labels)};
  });
}

wl_status wl_labels_write_file(const wl_labels* labels, const char* path) {
  if (auto st = require(labels && path)) return st;
  return guard([&] { wl::write_labels_file(labels->v, path); });
}

size_t wl_labels_count(const wl_labels* labels) {
  return labels ? labels->v.events.size() : 0;
}

void wl_labels_free(wl_labels* labels) { delete labels; }

/* ---- synthesis ----------------------------------------------------------- */

wl_status wl_synth_sh(const char* config_json, const char* keys, wl_trace** trace_out,
                      wl_labels** labels_out) {
  if (auto st = require(config_json && keys && trace_out && labels_out)) return st;
  return guard([&] {
    auto config = wl::SynthConfig::from_json(config_json);
    auto [trace, labels] = wl::generate_sh(config, keys);
    *trace_out = new wl_trace{std::move(trace)};
    *labels_out = new wl_labels{std::move(labels)};
  });
}

wl_status wl_synth_dh(const char* config_json, const char* keys, wl_trace** trace_out,
                      wl_labels** labels_out) {
  if (auto st = require(config_json && keys && trace_out && labels_out)) return st;
  return guard([&] {
    auto config = wl::SynthConfig::from_json(config_json);
    auto [trace, labels] = wl::generate_dh(config, keys);
    *trace_out = new wl_trace{std::move(trace)};
    *labels_out = new wl_labels{std::move(labels)};
  });
}

/* ---- key press detection ------------------------------------------------- */

wl_status wl_threshold_train(const wl_trace* trace, const wl_labels* labels,
                             double* threshold_out, size_t* trained_on_out) {
  if (auto st = require(trace && labels && threshold_out)) return st;
  return guard([&] {
    const wl::Threshold t = wl::set_threshold(trace->v, labels->v);
    *threshold_out = t.value;
    if (trained_on_out) *trained_on_out = t.trained_on;
  });
}

wl_status wl_detect(const wl_trace* trace, double threshold, wl_records** out,
                    size_t* edge_skipped_out) {
  if (auto st = require(trace && out)) return st;
  return guard([&] {
    wl::Threshold t;
    t.value = threshold;
    t.trained_on = 1;
    wl::DetectionResult result = wl::detect_keypresses(trace->v, t);
    if (edge_skipped_out) *edge_skipped_out = result.edge_skipped;
    auto* handle = new wl_records{};
    handle->v.keystrokes = std::move(result.records);
    *out = handle;
  });
}

wl_status wl_records_label(wl_records* records, const wl_labels* labels, int64_t max_gap_ms) {
  if (auto st = require(records && labels)) return st;
  return guard([&] { wl::label_records(records->v.keystrokes, labels->v, max_gap_ms); });
}

wl_status wl_segment_transitions(const wl_trace* trace, const wl_labels* labels,
                                 wl_records** out) {
  if (auto st = require(trace && labels && out)) return st;
  return guard([&] {
    auto* handle = new wl_records{};
    handle->v.transitions = wl::segment_transitions(trace->v, labels->v);
    *out = handle;
  });
}

wl_status wl_records_read_file(const char* path, wl_records** out) {
  if (auto st = require(path && out)) return st;
  return guard([&] { *out = new wl_records{wl::parse_records_file(path)}; });
}

wl_status wl_records_write_file(const wl_records* records, const char* path,
                                const char* diagnostics_json) {
  if (auto st = require(records && path)) return st;
  return guard([&] {
    if (!records->v.transitions.empty()) {
      wl::write_transition_records_file(records->v.transitions, path);
    } else {
      std::optional<std::string> diag;
      if (diagnostics_json) diag = diagnostics_json;
      wl::write_keystroke_records_file(records->v.keystrokes, path, diag);
    }
  });
}

size_t wl_records_count(const wl_records* records) {
  return records ? records->v.keystrokes.size() + records->v.transitions.size() : 0;
}

void wl_records_free(wl_records* records) { delete records; }

/* ---- feature extraction --------------------------------------------------- */

wl_status wl_features_extract(const wl_records* records, const char* schema_id,
                              wl_vectors** out) {
  if (auto st = require(records && schema_id && out)) return st;
  return guard([&] {
    const std::string id = schema_id;
    auto handle = std::make_unique<wl_vectors>();
    if (id == wl::kSchemaTransition) {
      if (records->v.transitions.empty()) {
        throw wl::ValidationError("schema " + id + " needs transition records");
      }
      for (const auto& r : records->v.transitions) {
        handle->v.push_back(wl::transition_features(r));
      }
    } else if (id == wl::kSchemaWatchAccel || id == wl::kSchemaGyro) {
      if (records->v.keystrokes.empty()) {
        throw wl::ValidationError("schema " + id + " needs keystroke records");
      }
      for (const auto& r : records->v.keystrokes) {
        handle->v.push_back(id == wl::kSchemaGyro ? wl::gyro_features(r)
                                                  : wl::keystroke_features(r));
      }
    } else {
      throw wl::ValidationError("cannot extract schema '" + id + "' directly from records");
    }
    *out = handle.release();
  });
}

wl_status wl_vectors_fuse(const wl_vectors* watch, const wl_vectors* phone, wl_vectors** out) {
  if (auto st = require(watch && phone && out)) return st;
  return guard([&] {
    if (watch->v.size() != phone->v.size()) {
      throw wl::ValidationError("fuse: vector counts differ (" + std::to_string(watch->v.size()) +
                                " vs " + std::to_string(phone->v.size()) + ")");
    }
    auto handle = std::make_unique<wl_vectors>();
    for (size_t i = 0; i < watch->v.size(); ++i) {
      handle->v.push_back(wl::fuse(watch->v[i], phone->v[i]));
    }
    *out = handle.release();
  });
}

wl_status wl_vectors_combine(const wl_vectors* accel, const wl_vectors* gyro, wl_vectors** out) {
  if (auto st = require(accel && gyro && out)) return st;
  return guard([&] {
    if (accel->v.size() != gyro->v.size()) {
      throw wl::ValidationError("combine: vector counts differ");
    }
    auto handle = std::make_unique<wl_vectors>();
    for (size_t i = 0; i < accel->v.size(); ++i) {
      handle->v.push_back(wl::combine_accel_gyro(accel->v[i], gyro->v[i]));
    }
    *out = handle.release();
  });
}

wl_status wl_vectors_set_subject(wl_vectors* vectors, const char* subject) {
  if (auto st = require(vectors && subject)) return st;
  for (auto& v : vectors->v) v.subject = subject;
  return WL_OK;
}

wl_status wl_vectors_append(wl_vectors* dst, const wl_vectors* src) {
  if (auto st = require(dst && src)) return st;
  return guard([&] {
    if (!dst->v.empty() && !src->v.empty() &&
        dst->v.front().schema_id != src->v.front().schema_id) {
      throw wl::ValidationError("append: schema mismatch between vector sets");
    }
    dst->v.insert(dst->v.end(), src->v.begin(), src->v.end());
  });
}

wl_status wl_vectors_read_file(const char* path, wl_vectors** out) {
  if (auto st = require(path && out)) return st;
  return guard([&] { *out = new wl_vectors{wl::parse_vectors_file(path)}; });
}

wl_status wl_vectors_write_file(const wl_vectors* vectors, const char* path) {
  if (auto st = require(vectors && path)) return st;
  return guard([&] { wl::write_vectors_file(vectors->v, path); });
}

size_t wl_vectors_count(const wl_vectors* vectors) { return vectors ? vectors->v.size() : 0; }

void wl_vectors_free(wl_vectors* vectors) { delete vectors; }

wl_status wl_schema_json(const char* schema_id, char** json_out) {
  if (auto st = require(schema_id && json_out)) return st;
  return guard([&] { *json_out = dup_string(wl::schema(schema_id).to_json()); });
}

/* ---- ensemble classification ---------------------------------------------- */

wl_status wl_model_fit(const wl_vectors* train, const char* config_json, wl_model** out) {
  if (auto st = require(train && out)) return st;
  return guard([&] {
    const auto config = wl::TrainConfig::from_json(config_json ? config_json : "{}");
    *out = new wl_model{wl::TrainedModel::fit(train->v, config)};
  });
}

wl_status wl_model_save(const wl_model* model, const char* path) {
  if (auto st = require(model && path)) return st;
  return guard([&] { model->v.save(path); });
}

wl_status wl_model_load(const char* path, wl_model** out) {
  if (auto st = require(path && out)) return st;
  return guard([&] { *out = new wl_model{wl::TrainedModel::load(path)}; });
}

void wl_model_free(wl_model* model) { delete model; }

wl_status wl_model_predict(const wl_model* model, const wl_vectors* vectors,
                           char** predictions_jsonl_out) {
  if (auto st = require(model && vectors && predictions_jsonl_out)) return st;
  return guard([&] {
    std::string out;
    for (const auto& v : vectors->v) {
      const wl::Prediction p = model->v.predict(v);
      json line;
      line["label"] = p.label;
      line["votes"] = p.votes;
      line["tie_broken"] = p.tie_broken;
      if (v.label) line["expected"] = *v.label;
      out += line.dump();
      out += '\n';
    }
    *predictions_jsonl_out = dup_string(out);
  });
}

wl_status wl_evaluate(const wl_vectors* const* datasets, size_t dataset_count,
                      const char* protocol, const char* split_json, const char* train_json,
                      char** report_json_out) {
  if (auto st = require(datasets && dataset_count > 0 && protocol && report_json_out)) return st;
  return guard([&] {
    std::vector<wl::FeatureVector> pooled;
    for (size_t i = 0; i < dataset_count; ++i) {
      if (!datasets[i]) throw wl::ValidationError("NULL dataset handle");
      for (const auto& v : datasets[i]->v) {
        wl::FeatureVector copy = v;
        if (!copy.subject) copy.subject = "s" + std::to_string(i);
        pooled.push_back(std::move(copy));
      }
    }
    wl::SplitConfig split;
    if (split_json) {
      json j = json::parse(split_json);
      if (j.contains("train_fraction")) split.train_fraction = j["train_fraction"].get<double>();
      if (j.contains("seed")) split.seed = j["seed"].get<uint64_t>();
      if (j.contains("target_subject")) {
        split.target_subject = j["target_subject"].get<std::string>();
      }
    }
    const auto config = wl::TrainConfig::from_json(train_json ? train_json : "{}");
    const wl::EvalReport report =
        wl::evaluate(pooled, wl::protocol_from_name(protocol), split, config);
    *report_json_out = dup_string(report.to_json());
  });
}

/* ---- transition tracing ---------------------------------------------------- */

wl_status wl_direction_of(char from_key, char to_key, char out[4]) {
  if (auto st = require(out != nullptr)) return st;
  return guard([&] {
    const char* name = wl::direction_name(wl::direction_of(from_key, to_key));
    std::memset(out, 0, 4);
    std::memcpy(out, name, std::strlen(name));
  });
}

wl_status wl_scan_transitions(const wl_trace* trace, const wl_model* model,
                              char** directions_json_out) {
  if (auto st = require(trace && model && directions_json_out)) return st;
  return guard([&] {
    const wl::ScanResult result = wl::scan_transitions(trace->v, model->v);
    json arr = json::array();
    for (const auto& t : result.transitions) arr.push_back(wl::direction_name(t.direction));
    *directions_json_out = dup_string(arr.dump());
  });
}

wl_status wl_trace_directions(const char* dirs_json, const char* mode,
                              const char* rw_config_json, char** report_json_out) {
  if (auto st = require(dirs_json && mode && report_json_out)) return st;
  return guard([&] {
    json j;
    try {
      j = json::parse(dirs_json);
    } catch (const json::exception& e) {
      throw wl::ValidationError(std::string("directions are not valid JSON: ") + e.what());
    }
    if (!j.is_array() || j.empty()) {
      throw wl::ValidationError("directions must be a non-empty JSON array");
    }
    wl::DirectionSequence dirs;
    for (const auto& d : j) {
      const auto name = d.get<std::string>();
      if (name == "U") {
        dirs.push_back(std::nullopt);
      } else {
        dirs.push_back(wl::direction_from_name(name));
      }
    }

    const std::string mode_str = mode;
    wl::CandidateSet cands = wl::candidates_for(dirs);
    if (mode_str == "forward") {
      cands = wl::forward_trace(std::move(cands));
    } else if (mode_str == "backward") {
      cands = wl::backward_trace(std::move(cands));
    } else if (mode_str == "bidirectional") {
      cands = wl::bidirectional_trace(std::move(cands));
    } else if (mode_str == "random-walk") {
      wl::RandomWalkConfig rw;
      if (rw_config_json) {
        json rj = json::parse(rw_config_json);
        if (rj.contains("subsequences")) rw.subsequences = rj["subsequences"].get<size_t>();
        if (rj.contains("min_length")) rw.min_length = rj["min_length"].get<size_t>();
        if (rj.contains("max_length")) rw.max_length = rj["max_length"].get<size_t>();
        if (rj.contains("seed")) rw.seed = rj["seed"].get<uint64_t>();
      }
      cands = wl::random_walk_trace(cands, rw);
    } else {
      throw wl::ValidationError("unknown tracing mode '" + mode_str + "'");
    }

    wl::RecoveryReport report = wl::enumerate_candidates(cands);
    report.directions = dirs;
    report.mode = mode_str;
    *report_json_out = dup_string(report.to_json());
  });
}

wl_status wl_recover_with_phone(const char* report_json, const char* phone_preds_json,
                                char** report_json_out) {
  if (auto st = require(report_json && phone_preds_json && report_json_out)) return st;
  return guard([&] {
    const wl::RecoveryReport report = wl::RecoveryReport::from_json(report_json);
    const auto preds = parse_phone_preds(phone_preds_json);
    const wl::RecoveryReport out = wl::phone_assisted_recovery(report, preds);
    *report_json_out = dup_string(out.to_json());
  });
}

/* ---- manifest support ------------------------------------------------------ */

wl_status wl_sha256_file(const char* path, char hex_out[65]) {
  if (auto st = require(path && hex_out)) return st;
  return guard([&] { hex_out_copy(wl::sha256_file_hex(path), hex_out); });
}

wl_status wl_sha256_string(const char* data, char hex_out[65]) {
  if (auto st = require(data && hex_out)) return st;
  return guard([&] { hex_out_copy(wl::sha256_hex(data), hex_out); });
}

wl_status wl_write_file(const char* path, const char* content) {
  if (auto st = require(path && content)) return st;
  return guard([&] { wl::atomic_write_file(path, content); });
}

}  // extern "C"
