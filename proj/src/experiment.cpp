#include "experiment.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "errors.hpp"
#include "rng.hpp"

namespace elmlc {

namespace {

// Rethrows module errors with the experiment name prepended, preserving the
// error class (and thereby the exit code).
template <typename Fn>
auto with_context(const std::string& name, Fn&& fn) {
  const std::string prefix = "experiment '" + name + "': ";
  try {
    return fn();
  } catch (const ShapeError& e) {
    throw ShapeError(prefix + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(prefix + e.what());
  } catch (const DataError& e) {
    throw DataError(prefix + e.what());
  } catch (const NumericError& e) {
    throw NumericError(prefix + e.what());
  } catch (const StateError& e) {
    throw StateError(prefix + e.what());
  }
}

struct ResolvedConfig {
  ExperimentConfig cfg;  // with name filled in
  bool normalize = false;
  bool resplit_per_trial = false;
};

std::string default_name(const ExperimentConfig& cfg) {
  if (const auto* syn = std::get_if<SyntheticSpec>(&cfg.dataset)) {
    return syn->function == SyntheticFunction::I ? "synthetic-I" : "synthetic-II";
  }
  const auto& path = std::get<CsvSpec>(cfg.dataset).path;
  const auto slash = path.find_last_of("/\\");
  std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = stem.find_last_of('.');
  if (dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
  return stem.empty() ? "csv" : stem;
}

ResolvedConfig resolve(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
  if (cfg.hidden_nodes < 1) throw ConfigError("hidden_nodes must be at least 1");
  const bool is_csv = std::holds_alternative<CsvSpec>(cfg.dataset);
  ResolvedConfig r;
  r.cfg = cfg;
  if (r.cfg.name.empty()) r.cfg.name = default_name(cfg);
  r.normalize = cfg.normalize.value_or(is_csv);
  r.resplit_per_trial = cfg.resplit_per_trial.value_or(!is_csv);
  if (is_csv) {
    const auto& spec = std::get<CsvSpec>(cfg.dataset);
    if (!spec.train_count && !spec.test_path) {
      throw ConfigError("csv dataset needs either train_count (to split) or "
                        "test_path (a separate test file)");
    }
    if (spec.train_count && spec.test_path) {
      throw ConfigError("csv dataset: give train_count or test_path, not both");
    }
  }
  return r;
}

// Re-encode a dataset's one-hot targets against a reference label list, so
// train and test files loaded separately agree on column meaning.
void align_labels(Dataset& d, const std::vector<std::string>& reference) {
  if (d.task != TaskKind::Classification || d.class_labels == reference) return;
  Matrix targets(d.rows(), reference.size(), 0.0);
  for (std::size_t r = 0; r < d.rows(); ++r) {
    std::size_t own = 0;
    for (std::size_t c = 1; c < d.output_count(); ++c) {
      if (d.targets(r, c) > d.targets(r, own)) own = c;
    }
    const std::string& label = d.class_labels[own];
    const auto it = std::find(reference.begin(), reference.end(), label);
    if (it == reference.end()) {
      throw DataError("test set contains class '" + label +
                      "' absent from the training set");
    }
    targets(r, static_cast<std::size_t>(it - reference.begin())) = 1.0;
  }
  d.targets = std::move(targets);
  d.class_labels = reference;
}

class TrialDataSource {
 public:
  explicit TrialDataSource(const ResolvedConfig& rc) : rc_(rc) {
    if (const auto* spec = std::get_if<CsvSpec>(&rc.cfg.dataset)) {
      full_ = load_csv(spec->path, spec->schema);
      if (spec->test_path) {
        fixed_test_ = load_csv(*spec->test_path, spec->schema);
        if (fixed_test_->feature_count() != full_->feature_count()) {
          throw DataError("train and test files disagree on feature count");
        }
        align_labels(*fixed_test_, full_->class_labels);
      }
    }
  }

  std::size_t input_count() const {
    if (const auto* syn = std::get_if<SyntheticSpec>(&rc_.cfg.dataset)) {
      return syn->function == SyntheticFunction::I ? 12 : 15;
    }
    return full_->feature_count();
  }

  // Train/test pair for one trial, normalization applied.
  std::pair<Dataset, Dataset> build(const TrialSeeds& seeds) {
    if (!rc_.resplit_per_trial && cached_) return *cached_;
    const std::uint64_t data_seed =
        rc_.resplit_per_trial ? seeds.train_data_seed
                              : derive_seed(rc_.cfg.base_seed, 0);
    const std::uint64_t second_seed =
        rc_.resplit_per_trial ? seeds.test_or_split_seed
                              : derive_seed(rc_.cfg.base_seed, 1);

    Dataset train, test;
    if (const auto* syn = std::get_if<SyntheticSpec>(&rc_.cfg.dataset)) {
      train = generate_synthetic(syn->function, syn->train_count, syn->sigma,
                                 data_seed);
      test = generate_synthetic(syn->function, syn->test_count, syn->sigma,
                                second_seed);
    } else {
      const auto& spec = std::get<CsvSpec>(rc_.cfg.dataset);
      if (spec.test_path) {
        train = *full_;
        test = *fixed_test_;
      } else {
        std::tie(train, test) = split(*full_, *spec.train_count, second_seed);
      }
    }
    if (rc_.normalize) {
      NormalizedData norm = normalize_features(train, {test});
      train = std::move(norm.train);
      test = std::move(norm.others[0]);
    }
    auto pair = std::make_pair(std::move(train), std::move(test));
    if (!rc_.resplit_per_trial) {
      cached_ = pair;
      return *cached_;
    }
    return pair;
  }

 private:
  const ResolvedConfig& rc_;
  std::optional<Dataset> full_;
  std::optional<Dataset> fixed_test_;
  std::optional<std::pair<Dataset, Dataset>> cached_;
};

GroupPartition resolve_partition(const ResolvedConfig& rc, std::size_t n) {
  GroupPartition p;
  if (rc.cfg.groups.explicit_sizes) {
    p = make_explicit_partition(rc.cfg.groups.explicit_sizes->first,
                                rc.cfg.groups.explicit_sizes->second);
    if (p.input_count() != n || p.hidden_count() != rc.cfg.hidden_nodes) {
      throw ConfigError("explicit group sizes sum to " +
                        std::to_string(p.input_count()) + " inputs / " +
                        std::to_string(p.hidden_count()) +
                        " hidden nodes, expected " + std::to_string(n) + " / " +
                        std::to_string(rc.cfg.hidden_nodes));
    }
  } else {
    p = make_partition(n, rc.cfg.hidden_nodes, rc.cfg.groups.k);
  }
  if (rc.cfg.feature_shuffle_seed) {
    // Sensitivity knob: assign features to groups by a seeded permutation
    // instead of natural column order.
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    Rng rng(*rc.cfg.feature_shuffle_seed);
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    for (auto& group : p.input_groups) {
      for (auto& idx : group) idx = perm[idx];
    }
  }
  return p;
}

struct TrialMetrics {
  std::vector<double> values;  // matches the metric layout for the task
};

std::vector<std::pair<std::string, std::string>> metric_layout(
    TaskKind task, RegressionMetric primary) {
  if (task == TaskKind::Classification) {
    return {{"train", "accuracy"}, {"test", "accuracy"}};
  }
  const std::string first = primary == RegressionMetric::Rmse ? "rmse" : "mse";
  const std::string second = primary == RegressionMetric::Rmse ? "mse" : "rmse";
  return {{"train", first}, {"train", second}, {"test", first}, {"test", second}};
}

TrialMetrics evaluate_model(const ElmModel& fitted, const Dataset& train,
                            const Dataset& test, RegressionMetric primary) {
  const Matrix train_pred = predict(fitted, train.features);
  const Matrix test_pred = predict(fitted, test.features);
  TrialMetrics out;
  if (train.task == TaskKind::Classification) {
    out.values.push_back(classification_accuracy(train_pred, train.targets));
    out.values.push_back(classification_accuracy(test_pred, test.targets));
  } else {
    const double train_mse =
        regression_error(train_pred, train.targets, RegressionMetric::Mse);
    const double test_mse =
        regression_error(test_pred, test.targets, RegressionMetric::Mse);
    const double a = primary == RegressionMetric::Rmse ? std::sqrt(train_mse) : train_mse;
    const double b = primary == RegressionMetric::Rmse ? train_mse : std::sqrt(train_mse);
    const double c = primary == RegressionMetric::Rmse ? std::sqrt(test_mse) : test_mse;
    const double d = primary == RegressionMetric::Rmse ? test_mse : std::sqrt(test_mse);
    out.values = {a, b, c, d};
  }
  return out;
}

}  // namespace

TrialSeeds derive_trial_seeds(std::uint64_t base_seed, std::size_t trial) {
  TrialSeeds s;
  s.trial_seed = base_seed + static_cast<std::uint64_t>(trial);
  s.train_data_seed = derive_seed(s.trial_seed, 0);
  s.test_or_split_seed = derive_seed(s.trial_seed, 1);
  s.elm_seed = derive_seed(s.trial_seed, 2);
  s.elm_lc_seed = derive_seed(s.trial_seed, 3);
  return s;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  const ResolvedConfig rc = resolve(cfg);
  return with_context(rc.cfg.name, [&] {
    TrialDataSource source(rc);
    const std::size_t n = source.input_count();
    const GroupPartition partition = resolve_partition(rc, n);

    ExperimentReport report;
    report.name = rc.cfg.name;
    report.trials = rc.cfg.trials;
    report.base_seed = rc.cfg.base_seed;
    report.hidden_nodes = rc.cfg.hidden_nodes;
    report.input_count = n;
    report.partition = partition;
    report.config_echo = config_echo_json(rc.cfg);

    std::vector<std::vector<double>> lc_values, elm_values;
    std::size_t lc_weights = 0, elm_weights = 0;

    for (std::size_t t = 1; t <= rc.cfg.trials; ++t) {
      const TrialSeeds seeds = derive_trial_seeds(rc.cfg.base_seed, t);
      report.seeds.push_back(seeds);

      const auto [train, test] = source.build(seeds);
      if (t == 1) {
        report.task = train.task;
        report.output_count = train.output_count();
        report.train_rows = train.rows();
        report.test_rows = test.rows();
        lc_values.resize(metric_layout(train.task, rc.cfg.metric).size());
        elm_values.resize(lc_values.size());
      }

      const ElmModel elm_lc =
          fit(random_init(n, rc.cfg.hidden_nodes, partition, seeds.elm_lc_seed,
                          rc.cfg.weight_distribution),
              train, rc.cfg.svd_rtol);
      const ElmModel elm_full =
          fit(random_init(n, rc.cfg.hidden_nodes, std::nullopt, seeds.elm_seed,
                          rc.cfg.weight_distribution),
              train, rc.cfg.svd_rtol);
      lc_weights = count_input_hidden_weights(elm_lc);
      elm_weights = count_input_hidden_weights(elm_full);

      const TrialMetrics lc = evaluate_model(elm_lc, train, test, rc.cfg.metric);
      const TrialMetrics full = evaluate_model(elm_full, train, test, rc.cfg.metric);
      for (std::size_t i = 0; i < lc.values.size(); ++i) {
        lc_values[i].push_back(lc.values[i]);
        elm_values[i].push_back(full.values[i]);
      }
    }

    const auto layout = metric_layout(report.task, rc.cfg.metric);
    AlgorithmResult lc_result{"ELM-LC", lc_weights, {}};
    AlgorithmResult elm_result{"ELM", elm_weights, {}};
    for (std::size_t i = 0; i < layout.size(); ++i) {
      lc_result.metrics.push_back(
          {layout[i].first, layout[i].second, aggregate(lc_values[i])});
      elm_result.metrics.push_back(
          {layout[i].first, layout[i].second, aggregate(elm_values[i])});
    }
    report.algorithms = {std::move(lc_result), std::move(elm_result)};
    return report;
  });
}

SweepResult sweep_hidden_nodes(const ExperimentConfig& cfg) {
  const ResolvedConfig rc = resolve(cfg);
  return with_context(rc.cfg.name, [&] {
    if (rc.cfg.sweep.empty()) {
      throw ConfigError("sweep requires a nonempty candidate list");
    }
    TrialDataSource source(rc);
    const std::size_t n = source.input_count();

    SweepResult result;
    result.name = rc.cfg.name;
    result.trials = rc.cfg.trials;
    result.config_echo = config_echo_json(rc.cfg);

    bool have_best = false;
    double best_err = 0.0;
    for (const std::size_t candidate : rc.cfg.sweep) {
      if (candidate < 1) throw ConfigError("sweep candidates must be at least 1");
      std::vector<double> per_trial;
      for (std::size_t t = 1; t <= rc.cfg.trials; ++t) {
        const TrialSeeds seeds = derive_trial_seeds(rc.cfg.base_seed, t);
        const Dataset train = source.build(seeds).first;
        if (result.metric_label.empty()) {
          result.metric_label =
              train.task == TaskKind::Classification
                  ? "error%"
                  : (rc.cfg.metric == RegressionMetric::Rmse ? "rmse" : "mse");
        }
        const ElmModel fitted =
            fit(random_init(n, candidate, std::nullopt, seeds.elm_seed,
                            rc.cfg.weight_distribution),
                train, rc.cfg.svd_rtol);
        const Matrix pred = predict(fitted, train.features);
        const double err =
            train.task == TaskKind::Classification
                ? 100.0 - classification_accuracy(pred, train.targets)
                : regression_error(pred, train.targets, rc.cfg.metric);
        per_trial.push_back(err);
      }
      const double mean_err = aggregate(per_trial).mean;
      result.candidates.emplace_back(candidate, mean_err);

      if (!have_best || mean_err < best_err ||
          (mean_err == best_err && candidate < result.chosen_hidden_nodes)) {
        result.chosen_hidden_nodes = candidate;
        best_err = mean_err;
        have_best = true;
      }
    }
    return result;
  });
}

}  // namespace elmlc
