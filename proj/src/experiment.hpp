#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "data.hpp"
#include "elm.hpp"
#include "eval.hpp"
#include "grouping.hpp"

namespace elmlc {

struct SyntheticSpec {
  SyntheticFunction function = SyntheticFunction::I;
  std::size_t train_count = 800;
  std::size_t test_count = 200;
  double sigma = 0.5;
};

struct CsvSpec {
  std::string path;
  CsvSchema schema;
  std::optional<std::size_t> train_count;  // split one file...
  std::optional<std::string> test_path;    // ...or load a separate test file
};

// Either a group count for the default contiguous scheme or explicit sizes.
struct GroupSpec {
  std::size_t k = 1;
  std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
      explicit_sizes;  // (input sizes, hidden sizes)
};

struct ExperimentConfig {
  std::string name;  // derived from the dataset when empty
  std::variant<SyntheticSpec, CsvSpec> dataset;
  std::size_t hidden_nodes = 0;
  GroupSpec groups;
  std::size_t trials = 10;
  std::uint64_t base_seed = 1;
  RegressionMetric metric = RegressionMetric::Rmse;
  std::optional<bool> normalize;          // default: csv yes, synthetic no
  std::optional<bool> resplit_per_trial;  // default: synthetic yes, csv no
  WeightDistribution weight_distribution = WeightDistribution::Uniform;
  double svd_rtol = kDefaultSvdRtol;
  std::optional<std::uint64_t> feature_shuffle_seed;
  std::vector<std::size_t> sweep;  // candidate hidden-node counts, empty = none
};

// Seed plumbing: trial t uses trial_seed = base_seed + t, and every consumer
// within a trial gets its own stream derived from that, so enabling one
// consumer never shifts another's draws.
struct TrialSeeds {
  std::uint64_t trial_seed = 0;
  std::uint64_t train_data_seed = 0;
  std::uint64_t test_or_split_seed = 0;
  std::uint64_t elm_seed = 0;
  std::uint64_t elm_lc_seed = 0;
};

TrialSeeds derive_trial_seeds(std::uint64_t base_seed, std::size_t trial);

struct MetricStats {
  std::string split;   // "train" | "test"
  std::string metric;  // "rmse" | "mse" | "accuracy"
  TrialStats stats;
};

struct AlgorithmResult {
  std::string name;  // "ELM-LC" | "ELM"
  std::size_t weight_count = 0;
  std::vector<MetricStats> metrics;
};

struct ExperimentReport {
  std::string name;
  TaskKind task = TaskKind::Regression;
  std::size_t trials = 0;
  std::uint64_t base_seed = 0;
  std::size_t input_count = 0;
  std::size_t output_count = 0;
  std::size_t hidden_nodes = 0;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
  GroupPartition partition;
  std::vector<AlgorithmResult> algorithms;  // ELM-LC first, then ELM
  std::vector<TrialSeeds> seeds;            // one per trial, in trial order
  std::string config_echo;                  // canonical JSON, defaults resolved
};

// Runs `trials` train/evaluate cycles of the fully connected model and the
// locally connected one on identical data, then aggregates mean/max/min.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

struct SweepResult {
  std::size_t chosen_hidden_nodes = 0;
  std::vector<std::pair<std::size_t, double>> candidates;  // (L, mean train error)
  std::string metric_label;  // "rmse" | "mse" | "error%"
  std::string name;
  std::size_t trials = 0;
  std::string config_echo;
};

// Trains the fully connected model at each candidate hidden-node count on
// identical trial seeds and picks the smallest mean training error, ties
// toward fewer nodes.
SweepResult sweep_hidden_nodes(const ExperimentConfig& cfg);

// --- config file handling (JSON; see README for the schema) ---

ExperimentConfig config_from_json_text(const std::string& text);

// Reads a config file; relative csv paths resolve against its directory.
ExperimentConfig load_config(const std::string& path);

// Canonical JSON echo with every default resolved; byte-stable for equal
// configs.
std::string config_echo_json(const ExperimentConfig& cfg);

// --- rendering ---

enum class ReportFormat { Table, Csv, JsonLines };

std::string render_report(const ExperimentReport& r, ReportFormat format);
std::string render_sweep(const SweepResult& s, ReportFormat format);

}  // namespace elmlc
