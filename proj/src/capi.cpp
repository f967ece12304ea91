#include "elmlc.h"

#include <charconv>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "data.hpp"
#include "elm.hpp"
#include "errors.hpp"
#include "eval.hpp"
#include "experiment.hpp"
#include "grouping.hpp"
#include "model_io.hpp"

struct elmlc_matrix {
  elmlc::Matrix m;
};
struct elmlc_dataset {
  elmlc::Dataset d;
};
struct elmlc_partition {
  elmlc::GroupPartition p;
};
struct elmlc_model {
  elmlc::ElmModel m;
};
struct elmlc_norm_params {
  elmlc::NormalizationParams p;
};
struct elmlc_config {
  elmlc::ExperimentConfig c;
};
struct elmlc_report {
  elmlc::ExperimentReport r;
};
struct elmlc_sweep_result {
  elmlc::SweepResult s;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

elmlc_status fail(elmlc_status code, const std::string& msg) {
  set_error(msg);
  return code;
}

// Runs `fn`, translating the C++ error taxonomy into status codes.
template <typename Fn>
elmlc_status guarded(Fn&& fn) {
  try {
    fn();
    return ELMLC_OK;
  } catch (const elmlc::ConfigError& e) {
    return fail(ELMLC_ERROR_CONFIG, e.what());
  } catch (const elmlc::DataError& e) {
    return fail(ELMLC_ERROR_DATA, e.what());
  } catch (const elmlc::StateError& e) {
    return fail(ELMLC_ERROR_STATE, e.what());
  } catch (const elmlc::NumericError& e) {  // includes ShapeError
    return fail(ELMLC_ERROR_NUMERIC, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ELMLC_ERROR_NUMERIC, "out of memory");
  } catch (const std::exception& e) {
    return fail(ELMLC_ERROR_NUMERIC, e.what());
  }
}

elmlc_status require(bool ok, const char* what) {
  return ok ? ELMLC_OK : fail(ELMLC_ERROR_CONFIG, what);
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

elmlc::TaskKind to_task(elmlc_task t) {
  return t == ELMLC_TASK_CLASSIFICATION ? elmlc::TaskKind::Classification
                                        : elmlc::TaskKind::Regression;
}

elmlc::ReportFormat to_format(elmlc_format f) {
  switch (f) {
    case ELMLC_FORMAT_CSV:
      return elmlc::ReportFormat::Csv;
    case ELMLC_FORMAT_JSONL:
      return elmlc::ReportFormat::JsonLines;
    default:
      return elmlc::ReportFormat::Table;
  }
}

}  // namespace

extern "C" {

const char* elmlc_version(void) { return "0.1.0"; }

const char* elmlc_last_error(void) { return g_last_error.c_str(); }

void elmlc_string_free(char* s) { delete[] s; }

/* ---- matrices ---- */

elmlc_status elmlc_matrix_create(size_t rows, size_t cols, const double* data,
                                 elmlc_matrix** out) {
  if (auto bad = require(out && data, "matrix_create: null argument")) return bad;
  return guarded([&] {
    elmlc::Matrix m(rows, cols);
    std::memcpy(m.data(), data, rows * cols * sizeof(double));
    *out = new elmlc_matrix{std::move(m)};
  });
}

void elmlc_matrix_free(elmlc_matrix* m) { delete m; }

size_t elmlc_matrix_rows(const elmlc_matrix* m) { return m ? m->m.rows() : 0; }

size_t elmlc_matrix_cols(const elmlc_matrix* m) { return m ? m->m.cols() : 0; }

const double* elmlc_matrix_data(const elmlc_matrix* m) {
  return m ? m->m.data() : nullptr;
}

/* ---- partitions ---- */

elmlc_status elmlc_partition_create(size_t inputs, size_t hidden, size_t groups,
                                    elmlc_partition** out) {
  if (auto bad = require(out != nullptr, "partition_create: null out")) return bad;
  return guarded([&] {
    *out = new elmlc_partition{elmlc::make_partition(inputs, hidden, groups)};
  });
}

elmlc_status elmlc_partition_create_explicit(const size_t* input_sizes,
                                             const size_t* hidden_sizes,
                                             size_t groups, elmlc_partition** out) {
  if (auto bad = require(out && input_sizes && hidden_sizes && groups > 0,
                         "partition_create_explicit: null or empty argument")) {
    return bad;
  }
  return guarded([&] {
    std::vector<std::size_t> in(input_sizes, input_sizes + groups);
    std::vector<std::size_t> hid(hidden_sizes, hidden_sizes + groups);
    *out = new elmlc_partition{elmlc::make_explicit_partition(in, hid)};
  });
}

void elmlc_partition_free(elmlc_partition* p) { delete p; }

size_t elmlc_partition_group_count(const elmlc_partition* p) {
  return p ? p->p.group_count() : 0;
}

size_t elmlc_partition_weight_count(const elmlc_partition* p) {
  return p ? p->p.weight_count() : 0;
}

elmlc_status elmlc_partition_validate(const elmlc_partition* p, size_t inputs,
                                      size_t hidden, int* is_valid,
                                      char** report_out) {
  if (auto bad = require(p && is_valid, "partition_validate: null argument")) {
    return bad;
  }
  return guarded([&] {
    const auto violations = elmlc::validate(p->p, inputs, hidden);
    *is_valid = violations.empty() ? 1 : 0;
    if (report_out) {
      std::string text;
      for (const auto& v : violations) {
        if (!text.empty()) text += '\n';
        if (v.group != elmlc::PartitionViolation::kWholePartition) {
          text += "group " + std::to_string(v.group) + ": ";
        }
        text += v.detail;
      }
      *report_out = copy_string(text);
    }
  });
}

elmlc_status elmlc_count_weights(size_t inputs, size_t hidden, size_t groups,
                                 size_t* local_count, size_t* full_count) {
  if (auto bad = require(local_count && full_count, "count_weights: null out")) {
    return bad;
  }
  return guarded([&] {
    *local_count = elmlc::make_partition(inputs, hidden, groups).weight_count();
    *full_count = inputs * hidden;
  });
}

/* ---- datasets ---- */

elmlc_status elmlc_dataset_synthetic(int function, size_t count, double sigma,
                                     uint64_t seed, elmlc_dataset** out) {
  if (auto bad = require(out != nullptr, "dataset_synthetic: null out")) return bad;
  if (auto bad = require(function == 1 || function == 2,
                         "dataset_synthetic: function must be 1 or 2")) {
    return bad;
  }
  return guarded([&] {
    const auto which =
        function == 1 ? elmlc::SyntheticFunction::I : elmlc::SyntheticFunction::II;
    *out = new elmlc_dataset{elmlc::generate_synthetic(which, count, sigma, seed)};
  });
}

elmlc_status elmlc_dataset_from_csv(const char* path, const char* target_column,
                                    int target_is_index, elmlc_task task,
                                    char delimiter, int has_header,
                                    elmlc_dataset** out) {
  if (auto bad = require(out && path && target_column,
                         "dataset_from_csv: null argument")) {
    return bad;
  }
  return guarded([&] {
    elmlc::CsvSchema schema;
    if (target_is_index) {
      std::size_t idx = 0;
      const char* end = target_column + std::strlen(target_column);
      auto [ptr, ec] = std::from_chars(target_column, end, idx);
      if (ec != std::errc() || ptr != end) {
        throw elmlc::ConfigError(std::string("target column index '") +
                                 target_column + "' is not a number");
      }
      schema.target_column = idx;
    } else {
      schema.target_column = std::string(target_column);
    }
    schema.task = to_task(task);
    schema.delimiter = delimiter;
    schema.header = has_header != 0;
    *out = new elmlc_dataset{elmlc::load_csv(path, schema)};
  });
}

elmlc_status elmlc_dataset_from_arrays(const elmlc_matrix* features,
                                       const elmlc_matrix* targets, elmlc_task task,
                                       elmlc_dataset** out) {
  if (auto bad = require(out && features && targets,
                         "dataset_from_arrays: null argument")) {
    return bad;
  }
  return guarded([&] {
    if (features->m.rows() != targets->m.rows()) {
      throw elmlc::ShapeError("dataset_from_arrays: feature and target row counts "
                              "differ");
    }
    if (!features->m.all_finite() || !targets->m.all_finite()) {
      throw elmlc::DataError("dataset_from_arrays: non-finite entries");
    }
    elmlc::Dataset d;
    d.features = features->m;
    d.targets = targets->m;
    d.task = to_task(task);
    if (d.task == elmlc::TaskKind::Classification) {
      for (std::size_t c = 0; c < d.targets.cols(); ++c) {
        d.class_labels.push_back("class" + std::to_string(c));
      }
    }
    *out = new elmlc_dataset{std::move(d)};
  });
}

elmlc_status elmlc_dataset_split(const elmlc_dataset* d, size_t train_count,
                                 uint64_t seed, elmlc_dataset** train_out,
                                 elmlc_dataset** test_out) {
  if (auto bad = require(d && train_out && test_out, "dataset_split: null argument")) {
    return bad;
  }
  return guarded([&] {
    auto [train, test] = elmlc::split(d->d, train_count, seed);
    auto train_handle = std::make_unique<elmlc_dataset>(elmlc_dataset{std::move(train)});
    auto test_handle = std::make_unique<elmlc_dataset>(elmlc_dataset{std::move(test)});
    *train_out = train_handle.release();
    *test_out = test_handle.release();
  });
}

elmlc_status elmlc_dataset_to_csv(const elmlc_dataset* d, const char* path) {
  if (auto bad = require(d && path, "dataset_to_csv: null argument")) return bad;
  return guarded([&] { elmlc::save_csv(d->d, path); });
}

void elmlc_dataset_free(elmlc_dataset* d) { delete d; }

size_t elmlc_dataset_rows(const elmlc_dataset* d) { return d ? d->d.rows() : 0; }

size_t elmlc_dataset_feature_count(const elmlc_dataset* d) {
  return d ? d->d.feature_count() : 0;
}

size_t elmlc_dataset_output_count(const elmlc_dataset* d) {
  return d ? d->d.output_count() : 0;
}

elmlc_status elmlc_dataset_features(const elmlc_dataset* d, elmlc_matrix** out) {
  if (auto bad = require(d && out, "dataset_features: null argument")) return bad;
  return guarded([&] { *out = new elmlc_matrix{d->d.features}; });
}

elmlc_status elmlc_dataset_targets(const elmlc_dataset* d, elmlc_matrix** out) {
  if (auto bad = require(d && out, "dataset_targets: null argument")) return bad;
  return guarded([&] { *out = new elmlc_matrix{d->d.targets}; });
}

/* ---- normalization ---- */

elmlc_status elmlc_norm_fit(const elmlc_dataset* train, elmlc_norm_params** out) {
  if (auto bad = require(train && out, "norm_fit: null argument")) return bad;
  return guarded([&] {
    *out = new elmlc_norm_params{elmlc::normalize_features(train->d, {}).params};
  });
}

elmlc_status elmlc_norm_apply(const elmlc_norm_params* p, const elmlc_dataset* in,
                              elmlc_dataset** out) {
  if (auto bad = require(p && in && out, "norm_apply: null argument")) return bad;
  return guarded([&] {
    elmlc::Dataset mapped = in->d;
    mapped.features = p->p.apply(in->d.features);
    *out = new elmlc_dataset{std::move(mapped)};
  });
}

elmlc_status elmlc_norm_save(const elmlc_norm_params* p, const char* path) {
  if (auto bad = require(p && path, "norm_save: null argument")) return bad;
  return guarded([&] { elmlc::save_normalization(p->p, path); });
}

elmlc_status elmlc_norm_load(const char* path, elmlc_norm_params** out) {
  if (auto bad = require(path && out, "norm_load: null argument")) return bad;
  return guarded([&] {
    *out = new elmlc_norm_params{elmlc::load_normalization(path)};
  });
}

void elmlc_norm_free(elmlc_norm_params* p) { delete p; }

/* ---- models ---- */

elmlc_status elmlc_model_random_init(size_t inputs, size_t hidden,
                                     const elmlc_partition* partition,
                                     uint64_t seed, elmlc_distribution distribution,
                                     elmlc_model** out) {
  if (auto bad = require(out != nullptr, "model_random_init: null out")) return bad;
  return guarded([&] {
    std::optional<elmlc::GroupPartition> part;
    if (partition) part = partition->p;
    const auto dist = distribution == ELMLC_WEIGHTS_GAUSSIAN
                          ? elmlc::WeightDistribution::Gaussian
                          : elmlc::WeightDistribution::Uniform;
    *out = new elmlc_model{
        elmlc::random_init(inputs, hidden, std::move(part), seed, dist)};
  });
}

elmlc_status elmlc_model_fit(const elmlc_model* m, const elmlc_dataset* train,
                             elmlc_model** fitted_out) {
  if (auto bad = require(m && train && fitted_out, "model_fit: null argument")) {
    return bad;
  }
  return guarded([&] { *fitted_out = new elmlc_model{elmlc::fit(m->m, train->d)}; });
}

elmlc_status elmlc_model_predict(const elmlc_model* m, const elmlc_matrix* features,
                                 elmlc_matrix** out) {
  if (auto bad = require(m && features && out, "model_predict: null argument")) {
    return bad;
  }
  return guarded([&] {
    *out = new elmlc_matrix{elmlc::predict(m->m, features->m)};
  });
}

elmlc_status elmlc_model_weight_count(const elmlc_model* m, size_t* out) {
  if (auto bad = require(m && out, "model_weight_count: null argument")) return bad;
  *out = elmlc::count_input_hidden_weights(m->m);
  return ELMLC_OK;
}

size_t elmlc_model_inputs(const elmlc_model* m) { return m ? m->m.input_count : 0; }

size_t elmlc_model_hidden(const elmlc_model* m) { return m ? m->m.hidden_count : 0; }

size_t elmlc_model_outputs(const elmlc_model* m) { return m ? m->m.output_count : 0; }

elmlc_status elmlc_model_save(const elmlc_model* m, const char* path) {
  if (auto bad = require(m && path, "model_save: null argument")) return bad;
  return guarded([&] { elmlc::save_model(m->m, path); });
}

elmlc_status elmlc_model_load(const char* path, elmlc_model** out) {
  if (auto bad = require(path && out, "model_load: null argument")) return bad;
  return guarded([&] { *out = new elmlc_model{elmlc::load_model(path)}; });
}

void elmlc_model_free(elmlc_model* m) { delete m; }

/* ---- experiments ---- */

elmlc_status elmlc_config_from_file(const char* path, elmlc_config** out) {
  if (auto bad = require(path && out, "config_from_file: null argument")) return bad;
  return guarded([&] { *out = new elmlc_config{elmlc::load_config(path)}; });
}

elmlc_status elmlc_config_from_string(const char* json_text, elmlc_config** out) {
  if (auto bad = require(json_text && out, "config_from_string: null argument")) {
    return bad;
  }
  return guarded([&] {
    *out = new elmlc_config{elmlc::config_from_json_text(json_text)};
  });
}

void elmlc_config_free(elmlc_config* c) { delete c; }

elmlc_status elmlc_run_experiment(const elmlc_config* c, elmlc_report** out) {
  if (auto bad = require(c && out, "run_experiment: null argument")) return bad;
  return guarded([&] { *out = new elmlc_report{elmlc::run_experiment(c->c)}; });
}

elmlc_status elmlc_report_render(const elmlc_report* r, elmlc_format f,
                                 char** text_out) {
  if (auto bad = require(r && text_out, "report_render: null argument")) return bad;
  return guarded([&] {
    *text_out = copy_string(elmlc::render_report(r->r, to_format(f)));
  });
}

void elmlc_report_free(elmlc_report* r) { delete r; }

elmlc_status elmlc_sweep_run(const elmlc_config* c, elmlc_sweep_result** out) {
  if (auto bad = require(c && out, "sweep_run: null argument")) return bad;
  return guarded([&] {
    *out = new elmlc_sweep_result{elmlc::sweep_hidden_nodes(c->c)};
  });
}

elmlc_status elmlc_sweep_chosen(const elmlc_sweep_result* s, size_t* chosen_hidden) {
  if (auto bad = require(s && chosen_hidden, "sweep_chosen: null argument")) {
    return bad;
  }
  *chosen_hidden = s->s.chosen_hidden_nodes;
  return ELMLC_OK;
}

elmlc_status elmlc_sweep_render(const elmlc_sweep_result* s, elmlc_format f,
                                char** text_out) {
  if (auto bad = require(s && text_out, "sweep_render: null argument")) return bad;
  return guarded([&] {
    *text_out = copy_string(elmlc::render_sweep(s->s, to_format(f)));
  });
}

void elmlc_sweep_free(elmlc_sweep_result* s) { delete s; }

} /* extern "C" */
