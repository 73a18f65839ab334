/*
 * wristleak — motion side-channel keystroke inference toolkit.
 *
 * C API over the core library: opaque handles, integer status codes, and
 * JSON strings for structured configs/reports. Every function returning
 * wl_status stores a message retrievable via wl_last_error() on failure.
 * Strings returned through char** out-parameters are heap-allocated and must
 * be released with wl_string_free(). Handles are released with their
 * matching *_free() function; passing NULL to a *_free() is a no-op.
 *
 * File formats (all JSON lines unless noted):
 *   trace    header {"meta":{"rate_hz":50,"device":"watch"}} then one sample
 *            object per line: {"t":ms,"ax":..,"ay":..,"az":..[,"gx","gy","gz"]}
 *   labels   {"t":ms,"key":"7"}
 *   records  keystroke {"kind":"keystroke","start_t":..,"detect_index":3,...}
 *            or transition {"kind":"transition","start_t":..,"end_t":..,...}
 *   vectors  {"schema":"watch-accel-155","label":"7","subject":"s01","values":[..]}
 *   model    single JSON document (versioned)
 */

#ifndef WRISTLEAK_H
#define WRISTLEAK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wl_status {
  WL_OK = 0,
  WL_ERR_VALIDATION = 1,   /* bad input data or arguments */
  WL_ERR_INCONSISTENT = 2, /* internally contradictory state, e.g. empty candidate set */
  WL_ERR_NULL_ARGUMENT = 3,
  WL_ERR_INTERNAL = 4
} wl_status;

const char* wl_version(void);

/* Thread-local message describing the most recent failure on this thread. */
const char* wl_last_error(void);

void wl_string_free(char* s);

typedef struct wl_trace wl_trace;
typedef struct wl_labels wl_labels;
typedef struct wl_records wl_records;
typedef struct wl_vectors wl_vectors;
typedef struct wl_model wl_model;

/* ---- traces & labels ---------------------------------------------------- */

/* expected_device may be NULL, "watch" or "phone". */
wl_status wl_trace_read_file(const char* path, const char* expected_device, wl_trace** out);
wl_status wl_trace_write_file(const wl_trace* trace, const char* path);

/* Decimation to roughly target_hz (keep every k-th sample). */
wl_status wl_trace_resample(const wl_trace* trace, double target_hz, wl_trace** out);

size_t wl_trace_sample_count(const wl_trace* trace);
double wl_trace_rate_hz(const wl_trace* trace);
void wl_trace_free(wl_trace* trace);

wl_status wl_labels_read_file(const char* path, wl_labels** out);
wl_status wl_labels_write_file(const wl_labels* labels, const char* path);
size_t wl_labels_count(const wl_labels* labels);
void wl_labels_free(wl_labels* labels);

/* ---- synthesis ----------------------------------------------------------- */

/* config_json fields: layout, rate_hz, scenario ("sh"/"dh"), device,
 * noise_sigma, seed, spike_amplitude, min_spacing_ms, spacing_jitter_ms,
 * min_duration_ms, max_duration_ms, signatures. All optional except that the
 * scenario must match the generator called. keys is a digit string. */
wl_status wl_synth_sh(const char* config_json, const char* keys, wl_trace** trace_out,
                      wl_labels** labels_out);
wl_status wl_synth_dh(const char* config_json, const char* keys, wl_trace** trace_out,
                      wl_labels** labels_out);

/* ---- key press detection ------------------------------------------------- */

/* Averages the 4-sample energy window around every labeled press. */
wl_status wl_threshold_train(const wl_trace* trace, const wl_labels* labels,
                             double* threshold_out, size_t* trained_on_out);

/* Emits 18-sample keystroke records; edge_skipped_out (optional) counts
 * threshold crossings whose window would cross a trace edge. */
wl_status wl_detect(const wl_trace* trace, double threshold, wl_records** out,
                    size_t* edge_skipped_out);

/* Attaches ground-truth labels to detected keystroke records. */
wl_status wl_records_label(wl_records* records, const wl_labels* labels, int64_t max_gap_ms);

/* Cuts a labeled trace into direction-labeled transition records. */
wl_status wl_segment_transitions(const wl_trace* trace, const wl_labels* labels,
                                 wl_records** out);

wl_status wl_records_read_file(const char* path, wl_records** out);
/* diagnostics_json may be NULL; when given it is appended as a final
 * {"diagnostics":...} line (keystroke records only). */
wl_status wl_records_write_file(const wl_records* records, const char* path,
                                const char* diagnostics_json);
size_t wl_records_count(const wl_records* records);
void wl_records_free(wl_records* records);

/* ---- feature extraction --------------------------------------------------- */

/* schema_id: "watch-accel-155" or "gyro-59" for keystroke records,
 * "transition-freq" for transition records. */
wl_status wl_features_extract(const wl_records* records, const char* schema_id,
                              wl_vectors** out);

/* Watch-first concatenation of two watch-accel-155 sets -> fused-310.
 * Inputs are paired by index and must have equal counts. */
wl_status wl_vectors_fuse(const wl_vectors* watch, const wl_vectors* phone, wl_vectors** out);

/* accel+gyro concatenation: watch-accel-155 + gyro-59 -> accel+gyro-214. */
wl_status wl_vectors_combine(const wl_vectors* accel, const wl_vectors* gyro, wl_vectors** out);

/* Overwrites the subject tag of every vector (used to build eval datasets). */
wl_status wl_vectors_set_subject(wl_vectors* vectors, const char* subject);

/* Appends copies of src's vectors to dst (schemas must match). */
wl_status wl_vectors_append(wl_vectors* dst, const wl_vectors* src);

wl_status wl_vectors_read_file(const char* path, wl_vectors** out);
wl_status wl_vectors_write_file(const wl_vectors* vectors, const char* path);
size_t wl_vectors_count(const wl_vectors* vectors);
void wl_vectors_free(wl_vectors* vectors);

/* Published schema description {"id","dimension","feature_names"}. */
wl_status wl_schema_json(const char* schema_id, char** json_out);

/* ---- ensemble classification ---------------------------------------------- */

/* config_json fields (all optional): seed, knn_k, rf_trees, bdt_trees,
 * svm_epochs, svm_lambda, slr_lambda. */
wl_status wl_model_fit(const wl_vectors* train, const char* config_json, wl_model** out);
wl_status wl_model_save(const wl_model* model, const char* path);
wl_status wl_model_load(const char* path, wl_model** out);
void wl_model_free(wl_model* model);

/* One JSON line per input vector:
 * {"label":..,"votes":{member:label,...},"tie_broken":..[,"expected":..]} */
wl_status wl_model_predict(const wl_model* model, const wl_vectors* vectors,
                           char** predictions_jsonl_out);

/* protocol: "one-vs-one", "one-vs-rest" or "all-vs-all". split_json fields:
 * train_fraction, seed, target_subject. Returns the evaluation report JSON. */
wl_status wl_evaluate(const wl_vectors* const* datasets, size_t dataset_count,
                      const char* protocol, const char* split_json, const char* train_json,
                      char** report_json_out);

/* ---- transition tracing ---------------------------------------------------- */

/* Taxonomy lookup for numeric keys; out receives the direction name. */
wl_status wl_direction_of(char from_key, char to_key, char out[4]);

/* Moving-window scan; returns a JSON array of direction names. */
wl_status wl_scan_transitions(const wl_trace* trace, const wl_model* model,
                              char** directions_json_out);

/* dirs_json: JSON array of direction names ("U" marks an unclassified
 * transition). mode: "forward", "backward", "bidirectional" or "random-walk".
 * rw_config_json (random-walk only, else NULL): subsequences, min_length,
 * max_length, seed. Returns the recovery report JSON. */
wl_status wl_trace_directions(const char* dirs_json, const char* mode,
                              const char* rw_config_json, char** report_json_out);

/* phone_preds_json: JSON array of single-digit strings, one per key position
 * (objects with a "label" field are also accepted). */
wl_status wl_recover_with_phone(const char* report_json, const char* phone_preds_json,
                                char** report_json_out);

/* ---- manifest support ------------------------------------------------------ */

wl_status wl_sha256_file(const char* path, char hex_out[65]);
wl_status wl_sha256_string(const char* data, char hex_out[65]);

/* Atomic write (temp file + rename) for CLI artifacts. */
wl_status wl_write_file(const char* path, const char* content);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* WRISTLEAK_H */
