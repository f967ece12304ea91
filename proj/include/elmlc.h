/*
 * elmlc — extreme learning machines with optional local (block-grouped)
 * input-hidden connections, behind a plain C interface.
 *
 * All functions returning elmlc_status follow the same convention: on
 * success they return ELMLC_OK and fill their out-parameters; on failure
 * they return a nonzero status, leave out-parameters untouched, and store
 * a human-readable message retrievable with elmlc_last_error() (per
 * thread). Objects are created through elmlc_*_... constructors and must
 * be released with the matching elmlc_*_free. Strings returned through
 * char** out-parameters are released with elmlc_string_free.
 */
#ifndef ELMLC_H
#define ELMLC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ELMLC_BUILD)
#    define ELMLC_API __declspec(dllexport)
#  else
#    define ELMLC_API __declspec(dllimport)
#  endif
#else
#  define ELMLC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes (state errors cannot occur through
 * the CLI). */
typedef enum elmlc_status {
  ELMLC_OK = 0,
  ELMLC_ERROR_CONFIG = 2,  /* invalid configuration or arguments */
  ELMLC_ERROR_DATA = 3,    /* file, parse, or dataset problems */
  ELMLC_ERROR_NUMERIC = 4, /* shape mismatches, failed decompositions */
  ELMLC_ERROR_STATE = 5    /* operation on an object in the wrong state */
} elmlc_status;

typedef enum elmlc_task {
  ELMLC_TASK_REGRESSION = 0,
  ELMLC_TASK_CLASSIFICATION = 1
} elmlc_task;

typedef enum elmlc_format {
  ELMLC_FORMAT_TABLE = 0,
  ELMLC_FORMAT_CSV = 1,
  ELMLC_FORMAT_JSONL = 2
} elmlc_format;

typedef enum elmlc_distribution {
  ELMLC_WEIGHTS_UNIFORM = 0, /* i.i.d. uniform on [-1,1] */
  ELMLC_WEIGHTS_GAUSSIAN = 1 /* i.i.d. standard normal */
} elmlc_distribution;

typedef struct elmlc_matrix elmlc_matrix;
typedef struct elmlc_dataset elmlc_dataset;
typedef struct elmlc_partition elmlc_partition;
typedef struct elmlc_model elmlc_model;
typedef struct elmlc_norm_params elmlc_norm_params;
typedef struct elmlc_config elmlc_config;
typedef struct elmlc_report elmlc_report;
typedef struct elmlc_sweep_result elmlc_sweep_result;

ELMLC_API const char* elmlc_version(void);
ELMLC_API const char* elmlc_last_error(void);
ELMLC_API void elmlc_string_free(char* s);

/* ---- dense row-major matrices of doubles ---- */

ELMLC_API elmlc_status elmlc_matrix_create(size_t rows, size_t cols,
                                           const double* data, elmlc_matrix** out);
ELMLC_API void elmlc_matrix_free(elmlc_matrix* m);
ELMLC_API size_t elmlc_matrix_rows(const elmlc_matrix* m);
ELMLC_API size_t elmlc_matrix_cols(const elmlc_matrix* m);
/* Borrowed pointer into the matrix, valid while the matrix lives. */
ELMLC_API const double* elmlc_matrix_data(const elmlc_matrix* m);

/* ---- group partitions ---- */

/* Divides `inputs` input nodes and `hidden` hidden nodes into `groups`
 * contiguous, roughly equal groups (remainders go to the earliest groups).
 * Every hidden group must end up at least one node larger than its input
 * group. */
ELMLC_API elmlc_status elmlc_partition_create(size_t inputs, size_t hidden,
                                              size_t groups, elmlc_partition** out);
/* Same, with explicit per-group sizes (arrays of length `groups`). */
ELMLC_API elmlc_status elmlc_partition_create_explicit(const size_t* input_sizes,
                                                       const size_t* hidden_sizes,
                                                       size_t groups,
                                                       elmlc_partition** out);
ELMLC_API void elmlc_partition_free(elmlc_partition* p);
ELMLC_API size_t elmlc_partition_group_count(const elmlc_partition* p);
/* Structurally present input-hidden weights under this partition. */
ELMLC_API size_t elmlc_partition_weight_count(const elmlc_partition* p);
/* Checks disjointness, coverage and the size constraint against the given
 * node counts. Sets *is_valid; when report_out is non-NULL it receives a
 * newline-separated violation list (empty string when valid). */
ELMLC_API elmlc_status elmlc_partition_validate(const elmlc_partition* p,
                                                size_t inputs, size_t hidden,
                                                int* is_valid, char** report_out);

/* Weight counts for a (inputs, hidden, groups) configuration without
 * building anything: *local_count for the grouped model, *full_count for
 * the fully connected one. */
ELMLC_API elmlc_status elmlc_count_weights(size_t inputs, size_t hidden,
                                           size_t groups, size_t* local_count,
                                           size_t* full_count);

/* ---- datasets ---- */

/* Synthetic regression sets: `function` 1 or 2, inputs uniform on [-2,2]^d
 * (d = 12 or 15), targets f(x) plus sigma-scaled Gaussian noise. */
ELMLC_API elmlc_status elmlc_dataset_synthetic(int function, size_t count,
                                               double sigma, uint64_t seed,
                                               elmlc_dataset** out);
/* CSV ingestion. target_column is a header name, or a 0-based column index
 * written in decimal when target_is_index is nonzero. Classification labels
 * are one-hot encoded in first-appearance order. */
ELMLC_API elmlc_status elmlc_dataset_from_csv(const char* path,
                                              const char* target_column,
                                              int target_is_index, elmlc_task task,
                                              char delimiter, int has_header,
                                              elmlc_dataset** out);
ELMLC_API elmlc_status elmlc_dataset_from_arrays(const elmlc_matrix* features,
                                                 const elmlc_matrix* targets,
                                                 elmlc_task task,
                                                 elmlc_dataset** out);
/* Seeded shuffle, then the first train_count rows form the train half. */
ELMLC_API elmlc_status elmlc_dataset_split(const elmlc_dataset* d,
                                           size_t train_count, uint64_t seed,
                                           elmlc_dataset** train_out,
                                           elmlc_dataset** test_out);
ELMLC_API elmlc_status elmlc_dataset_to_csv(const elmlc_dataset* d, const char* path);
ELMLC_API void elmlc_dataset_free(elmlc_dataset* d);
ELMLC_API size_t elmlc_dataset_rows(const elmlc_dataset* d);
ELMLC_API size_t elmlc_dataset_feature_count(const elmlc_dataset* d);
ELMLC_API size_t elmlc_dataset_output_count(const elmlc_dataset* d);
ELMLC_API elmlc_status elmlc_dataset_features(const elmlc_dataset* d,
                                              elmlc_matrix** out); /* copy */
ELMLC_API elmlc_status elmlc_dataset_targets(const elmlc_dataset* d,
                                             elmlc_matrix** out); /* copy */

/* ---- feature normalization (min-max to [-1,1], fitted on train) ---- */

ELMLC_API elmlc_status elmlc_norm_fit(const elmlc_dataset* train,
                                      elmlc_norm_params** out);
ELMLC_API elmlc_status elmlc_norm_apply(const elmlc_norm_params* p,
                                        const elmlc_dataset* in,
                                        elmlc_dataset** out);
ELMLC_API elmlc_status elmlc_norm_save(const elmlc_norm_params* p, const char* path);
ELMLC_API elmlc_status elmlc_norm_load(const char* path, elmlc_norm_params** out);
ELMLC_API void elmlc_norm_free(elmlc_norm_params* p);

/* ---- models ---- */

/* Seeded random input-hidden weights and biases; pass a partition for local
 * connections or NULL for a fully connected model. The draw order makes a
 * one-group partition bit-identical to the fully connected model under the
 * same seed. */
ELMLC_API elmlc_status elmlc_model_random_init(size_t inputs, size_t hidden,
                                               const elmlc_partition* partition,
                                               uint64_t seed,
                                               elmlc_distribution distribution,
                                               elmlc_model** out);
/* Least-squares output weights; returns a new fitted model, the input model
 * is untouched. */
ELMLC_API elmlc_status elmlc_model_fit(const elmlc_model* m,
                                       const elmlc_dataset* train,
                                       elmlc_model** fitted_out);
ELMLC_API elmlc_status elmlc_model_predict(const elmlc_model* m,
                                           const elmlc_matrix* features,
                                           elmlc_matrix** out);
ELMLC_API elmlc_status elmlc_model_weight_count(const elmlc_model* m, size_t* out);
ELMLC_API size_t elmlc_model_inputs(const elmlc_model* m);
ELMLC_API size_t elmlc_model_hidden(const elmlc_model* m);
ELMLC_API size_t elmlc_model_outputs(const elmlc_model* m); /* 0 until fitted */
/* Binary model container; round-trips are bit-exact. */
ELMLC_API elmlc_status elmlc_model_save(const elmlc_model* m, const char* path);
ELMLC_API elmlc_status elmlc_model_load(const char* path, elmlc_model** out);
ELMLC_API void elmlc_model_free(elmlc_model* m);

/* ---- experiments ---- */

ELMLC_API elmlc_status elmlc_config_from_file(const char* path, elmlc_config** out);
ELMLC_API elmlc_status elmlc_config_from_string(const char* json_text,
                                                elmlc_config** out);
ELMLC_API void elmlc_config_free(elmlc_config* c);

/* Runs the configured trials for both the fully connected and the locally
 * connected model and aggregates mean/max/min statistics. */
ELMLC_API elmlc_status elmlc_run_experiment(const elmlc_config* c,
                                            elmlc_report** out);
ELMLC_API elmlc_status elmlc_report_render(const elmlc_report* r, elmlc_format f,
                                           char** text_out);
ELMLC_API void elmlc_report_free(elmlc_report* r);

/* Hidden-node sweep: trains the fully connected model at each candidate
 * count in config experiment.sweep and picks the smallest mean training
 * error (ties toward fewer nodes). */
ELMLC_API elmlc_status elmlc_sweep_run(const elmlc_config* c,
                                       elmlc_sweep_result** out);
ELMLC_API elmlc_status elmlc_sweep_chosen(const elmlc_sweep_result* s,
                                          size_t* chosen_hidden);
ELMLC_API elmlc_status elmlc_sweep_render(const elmlc_sweep_result* s,
                                          elmlc_format f, char** text_out);
ELMLC_API void elmlc_sweep_free(elmlc_sweep_result* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ELMLC_H */
