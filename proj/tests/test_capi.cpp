#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>

#include <json.hpp>

#include "wristleak.h"

using nlohmann::json;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("wristleak-capi-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string owned(char* s) {
  std::string out = s ? s : "";
  wl_string_free(s);
  return out;
}

constexpr const char* kShConfig =
    R"({"scenario":"sh","seed":5,"noise_sigma":0.2,"spike_amplitude":10})";

}  // namespace

TEST_CASE("null arguments are rejected with a status") {
  CHECK(wl_trace_read_file(nullptr, nullptr, nullptr) == WL_ERR_NULL_ARGUMENT);
  CHECK(wl_labels_read_file("x", nullptr) == WL_ERR_NULL_ARGUMENT);
  CHECK(std::string(wl_version()) == "0.1.0");
}

TEST_CASE("validation failures carry a message") {
  TempDir dir;
  wl_trace* trace = nullptr;
  CHECK(wl_trace_read_file(dir.file("missing.jsonl").c_str(), nullptr, &trace) ==
        WL_ERR_VALIDATION);
  CHECK(std::string(wl_last_error()).find("missing.jsonl") != std::string::npos);
}

TEST_CASE("synthesis, detection, features, training and prediction through the C API") {
  TempDir dir;

  wl_trace* trace = nullptr;
  wl_labels* labels = nullptr;
  REQUIRE(wl_synth_sh(kShConfig, "0123456789012345678901234567890123456789", &trace, &labels) ==
          WL_OK);
  CHECK(wl_labels_count(labels) == 40);
  CHECK(wl_trace_rate_hz(trace) == 50.0);

  // Round-trip through files.
  REQUIRE(wl_trace_write_file(trace, dir.file("trace.jsonl").c_str()) == WL_OK);
  REQUIRE(wl_labels_write_file(labels, dir.file("labels.jsonl").c_str()) == WL_OK);
  wl_trace* trace2 = nullptr;
  REQUIRE(wl_trace_read_file(dir.file("trace.jsonl").c_str(), "watch", &trace2) == WL_OK);
  CHECK(wl_trace_sample_count(trace2) == wl_trace_sample_count(trace));

  double threshold = 0.0;
  size_t trained_on = 0;
  REQUIRE(wl_threshold_train(trace, labels, &threshold, &trained_on) == WL_OK);
  CHECK(trained_on == 40);
  CHECK(threshold > 0.0);

  wl_records* records = nullptr;
  size_t edge_skipped = 99;
  REQUIRE(wl_detect(trace, threshold, &records, &edge_skipped) == WL_OK);
  CHECK(wl_records_count(records) == 40);
  CHECK(edge_skipped == 0);
  REQUIRE(wl_records_label(records, labels, 200) == WL_OK);
  REQUIRE(wl_records_write_file(records, dir.file("records.jsonl").c_str(),
                                R"({"edge_skipped":0})") == WL_OK);

  wl_records* records2 = nullptr;
  REQUIRE(wl_records_read_file(dir.file("records.jsonl").c_str(), &records2) == WL_OK);
  CHECK(wl_records_count(records2) == 40);

  wl_vectors* vectors = nullptr;
  REQUIRE(wl_features_extract(records2, "watch-accel-155", &vectors) == WL_OK);
  CHECK(wl_vectors_count(vectors) == 40);
  REQUIRE(wl_vectors_set_subject(vectors, "p0") == WL_OK);
  REQUIRE(wl_vectors_write_file(vectors, dir.file("vectors.jsonl").c_str()) == WL_OK);

  wl_model* model = nullptr;
  const char* train_config = R"({"seed":3,"rf_trees":15,"bdt_trees":8,"svm_epochs":3})";
  REQUIRE(wl_model_fit(vectors, train_config, &model) == WL_OK);
  REQUIRE(wl_model_save(model, dir.file("model.json").c_str()) == WL_OK);
  wl_model* model2 = nullptr;
  REQUIRE(wl_model_load(dir.file("model.json").c_str(), &model2) == WL_OK);

  char* preds_raw = nullptr;
  REQUIRE(wl_model_predict(model2, vectors, &preds_raw) == WL_OK);
  const std::string preds = owned(preds_raw);
  size_t correct = 0, total = 0;
  std::istringstream lines(preds);
  std::string line;
  while (std::getline(lines, line)) {
    const json p = json::parse(line);
    ++total;
    if (p["label"] == p["expected"]) ++correct;
  }
  CHECK(total == 40);
  CHECK(correct == total);  // training-set accuracy on separable data

  // Evaluation across two pseudo-subjects.
  wl_vectors* vectors_b = nullptr;
  {
    wl_trace* tb = nullptr;
    wl_labels* lb = nullptr;
    const char* config_b =
        R"({"scenario":"sh","seed":6,"noise_sigma":0.2,"spike_amplitude":10})";
    REQUIRE(wl_synth_sh(config_b, "0123456789012345678901234567890123456789", &tb, &lb) == WL_OK);
    double thr_b = 0.0;
    REQUIRE(wl_threshold_train(tb, lb, &thr_b, nullptr) == WL_OK);
    wl_records* rb = nullptr;
    REQUIRE(wl_detect(tb, thr_b, &rb, nullptr) == WL_OK);
    REQUIRE(wl_records_label(rb, lb, 200) == WL_OK);
    REQUIRE(wl_features_extract(rb, "watch-accel-155", &vectors_b) == WL_OK);
    REQUIRE(wl_vectors_set_subject(vectors_b, "p1") == WL_OK);
    wl_records_free(rb);
    wl_labels_free(lb);
    wl_trace_free(tb);
  }
  const wl_vectors* datasets[2] = {vectors, vectors_b};
  char* report_raw = nullptr;
  REQUIRE(wl_evaluate(datasets, 2, "one-vs-rest", R"({"seed":1})", train_config,
                      &report_raw) == WL_OK);
  const json report = json::parse(owned(report_raw));
  CHECK(report["protocol"] == "one-vs-rest");
  CHECK(report["accuracy"].get<double>() >= 0.9);
  CHECK(report["test_total"].get<int>() == 80);

  wl_vectors_free(vectors_b);
  wl_model_free(model2);
  wl_model_free(model);
  wl_vectors_free(vectors);
  wl_records_free(records2);
  wl_records_free(records);
  wl_trace_free(trace2);
  wl_labels_free(labels);
  wl_trace_free(trace);
}

TEST_CASE("tracing through the C API reproduces the reference candidate set") {
  char* report_raw = nullptr;
  REQUIRE(wl_trace_directions(R"(["N","SE","S","NW","S","NW","E","N","NE"])", "bidirectional",
                              nullptr, &report_raw) == WL_OK);
  const json report = json::parse(owned(report_raw));
  CHECK(report["candidates"].size() == 21);
  CHECK(report["trials_worst_case"] == 21);
  CHECK(report["unambiguous"]["10"] == "3");

  // Phone-assisted disambiguation down to the single true sequence.
  char* refined_raw = nullptr;
  REQUIRE(wl_recover_with_phone(report.dump().c_str(),
                                R"(["4","1","6","9","2","0","7","8","5","3"])",
                                &refined_raw) == WL_OK);
  const json refined = json::parse(owned(refined_raw));
  REQUIRE(refined["candidates"].size() == 1);
  CHECK(refined["candidates"][0] == "4169207853");
}

TEST_CASE("an over-pruned direction list surfaces as an inconsistency") {
  char* out = nullptr;
  CHECK(wl_trace_directions(R"(["N","SE","S","NW","S","N","E","N","NE"])", "bidirectional",
                            nullptr, &out) == WL_ERR_INCONSISTENT);
  CHECK(std::string(wl_last_error()).find("transition") != std::string::npos);
}

TEST_CASE("direction lookup and schema dump") {
  char dir[4];
  REQUIRE(wl_direction_of('4', '1', dir) == WL_OK);
  CHECK(std::string(dir) == "N");
  CHECK(wl_direction_of('a', '1', dir) == WL_ERR_VALIDATION);

  char* schema_raw = nullptr;
  REQUIRE(wl_schema_json("fused-310", &schema_raw) == WL_OK);
  const json schema = json::parse(owned(schema_raw));
  CHECK(schema["dimension"] == 310);
  CHECK(schema["feature_names"].size() == 310);
  CHECK(wl_schema_json("bogus", &schema_raw) == WL_ERR_VALIDATION);
}

TEST_CASE("hashing and atomic writes") {
  TempDir dir;
  char hex[65];
  REQUIRE(wl_sha256_string("abc", hex) == WL_OK);
  CHECK(std::string(hex) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  REQUIRE(wl_write_file(dir.file("x.txt").c_str(), "abc") == WL_OK);
  char hex2[65];
  REQUIRE(wl_sha256_file(dir.file("x.txt").c_str(), hex2) == WL_OK);
  CHECK(std::string(hex) == hex2);
}
