#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "experiment.hpp"

using elmlc::ExperimentConfig;
using elmlc::ExperimentReport;
using elmlc::ReportFormat;

namespace {

const std::string kFixtures = ELMLC_FIXTURE_DIR;

ExperimentConfig small_synthetic_config(const char* function, std::size_t hidden,
                                        std::size_t k, std::size_t trials = 3) {
  std::ostringstream json;
  json << R"({
    "dataset": {"type": "synthetic", "function": ")" << function << R"(",
                "train_count": 60, "test_count": 20, "sigma": 0.5},
    "model": {"hidden_nodes": )" << hidden << R"(, "groups": )" << k << R"(},
    "experiment": {"trials": )" << trials << R"(, "base_seed": 42}
  })";
  return elmlc::config_from_json_text(json.str());
}

int count_rows_starting(const std::string& text, const std::string& prefix) {
  int count = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind(prefix, 0) == 0) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("run_experiment reports both algorithms with the advertised weight counts") {
  const ExperimentReport r = elmlc::run_experiment(small_synthetic_config("I", 32, 4));
  REQUIRE(r.algorithms.size() == 2);
  CHECK(r.algorithms[0].name == "ELM-LC");
  CHECK(r.algorithms[1].name == "ELM");
  CHECK(r.algorithms[0].weight_count == 96);
  CHECK(r.algorithms[1].weight_count == 384);
  CHECK(r.algorithms[0].weight_count == r.partition.weight_count());
  CHECK(r.task == elmlc::TaskKind::Regression);
  CHECK(r.input_count == 12);
  CHECK(r.train_rows == 60);
  CHECK(r.test_rows == 20);
  // regression reports both rmse and mse for both splits
  REQUIRE(r.algorithms[0].metrics.size() == 4);
  CHECK(r.algorithms[0].metrics[0].metric == "rmse");
  CHECK(r.algorithms[0].metrics[0].stats.per_trial.size() == 3);
}

TEST_CASE("function II configuration carries the 450 vs 90 weight counts") {
  const ExperimentReport r = elmlc::run_experiment(small_synthetic_config("II", 30, 5));
  CHECK(r.algorithms[0].weight_count == 90);
  CHECK(r.algorithms[1].weight_count == 450);
  CHECK(r.input_count == 15);
}

TEST_CASE("a single trial collapses mean, max and min") {
  const ExperimentReport r =
      elmlc::run_experiment(small_synthetic_config("I", 20, 2, 1));
  for (const auto& algo : r.algorithms) {
    for (const auto& m : algo.metrics) {
      CHECK(m.stats.mean == m.stats.max);
      CHECK(m.stats.mean == m.stats.min);
      CHECK(m.stats.per_trial.size() == 1);
    }
  }
}

TEST_CASE("identical configs render byte-identical reports") {
  const ExperimentConfig cfg = small_synthetic_config("I", 24, 3);
  const ExperimentReport a = elmlc::run_experiment(cfg);
  const ExperimentReport b = elmlc::run_experiment(cfg);
  for (auto format : {ReportFormat::Table, ReportFormat::Csv, ReportFormat::JsonLines}) {
    CHECK(elmlc::render_report(a, format) == elmlc::render_report(b, format));
  }
}

TEST_CASE("changing the grouping never disturbs the fully connected results") {
  const ExperimentReport with_k4 =
      elmlc::run_experiment(small_synthetic_config("I", 32, 4));
  const ExperimentReport with_k2 =
      elmlc::run_experiment(small_synthetic_config("I", 32, 2));
  for (std::size_t m = 0; m < with_k4.algorithms[1].metrics.size(); ++m) {
    CHECK(with_k4.algorithms[1].metrics[m].stats.per_trial ==
          with_k2.algorithms[1].metrics[m].stats.per_trial);
  }
  // and the grouped results did change
  CHECK(with_k4.algorithms[0].metrics[0].stats.per_trial !=
        with_k2.algorithms[0].metrics[0].stats.per_trial);
}

TEST_CASE("table format has exactly one row per algorithm per block") {
  const ExperimentReport r = elmlc::run_experiment(small_synthetic_config("I", 16, 2));
  const std::string table = elmlc::render_report(r, ReportFormat::Table);
  CHECK(count_rows_starting(table, "  ELM-LC") == 5);  // 4 metric blocks + weights
  CHECK(count_rows_starting(table, "  ELM ") == 5);
}

TEST_CASE("csv report re-parses to the exact stat values") {
  const ExperimentReport r = elmlc::run_experiment(small_synthetic_config("I", 16, 2));
  const std::string csv = elmlc::render_report(r, ReportFormat::Csv);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "algorithm,split,metric,mean,max,min");
  std::size_t algo_index = 0, metric_index = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    REQUIRE(cells.size() == 6);
    if (cells[1] == "model") continue;  // weight rows
    const auto& algo = r.algorithms[algo_index];
    const auto& m = algo.metrics[metric_index];
    CHECK(cells[0] == algo.name);
    auto parse = [](const std::string& s) {
      double v = 0.0;
      std::from_chars(s.data(), s.data() + s.size(), v);
      return v;
    };
    CHECK(parse(cells[3]) == m.stats.mean);
    CHECK(parse(cells[4]) == m.stats.max);
    CHECK(parse(cells[5]) == m.stats.min);
    if (++metric_index == algo.metrics.size()) {
      metric_index = 0;
      ++algo_index;
    }
  }
  CHECK(algo_index == 2);
}

TEST_CASE("csv fixture pipeline reaches perfect training accuracy at L >= N") {
  std::ostringstream json;
  json << R"({
    "dataset": {"type": "csv", "path": ")" << kFixtures << R"(/forest_types.csv",
                "target_column": "class", "task": "classification",
                "train_count": 12},
    "model": {"hidden_nodes": 36, "groups": 9},
    "experiment": {"trials": 2, "base_seed": 7}
  })";
  const ExperimentReport r =
      elmlc::run_experiment(elmlc::config_from_json_text(json.str()));
  CHECK(r.task == elmlc::TaskKind::Classification);
  CHECK(r.input_count == 27);
  CHECK(r.output_count == 4);
  CHECK(r.algorithms[0].weight_count == 108);
  CHECK(r.algorithms[1].weight_count == 972);
  for (const auto& algo : r.algorithms) {
    CHECK(algo.metrics[0].split == "train");
    CHECK(algo.metrics[0].metric == "accuracy");
    CHECK(algo.metrics[0].stats.min == 100.0);
  }
}

TEST_CASE("sweep picks the interpolating candidate and reports its error") {
  ExperimentConfig cfg = small_synthetic_config("I", 16, 1, 2);
  std::ostringstream json;
  json << R"({
    "dataset": {"type": "synthetic", "function": "I",
                "train_count": 20, "test_count": 10, "sigma": 0.5},
    "model": {"hidden_nodes": 16},
    "experiment": {"trials": 2, "base_seed": 5, "sweep": [5, 20]}
  })";
  cfg = elmlc::config_from_json_text(json.str());
  const elmlc::SweepResult s = elmlc::sweep_hidden_nodes(cfg);
  REQUIRE(s.candidates.size() == 2);
  CHECK(s.chosen_hidden_nodes == 20);  // hidden == sample count interpolates
  CHECK(s.candidates[1].second < 1e-6);
  CHECK(s.candidates[0].second > s.candidates[1].second);
}

TEST_CASE("sweep duplicate candidates settle on that candidate") {
  std::ostringstream json;
  json << R"({
    "dataset": {"type": "synthetic", "function": "I",
                "train_count": 20, "test_count": 10, "sigma": 0.5},
    "model": {"hidden_nodes": 16},
    "experiment": {"trials": 1, "base_seed": 5, "sweep": [12, 12]}
  })";
  const elmlc::SweepResult s =
      elmlc::sweep_hidden_nodes(elmlc::config_from_json_text(json.str()));
  CHECK(s.chosen_hidden_nodes == 12);
  CHECK(s.candidates[0].second == s.candidates[1].second);
}

TEST_CASE("sweep with a single candidate returns it unconditionally") {
  std::ostringstream json;
  json << R"({
    "dataset": {"type": "synthetic", "function": "II",
                "train_count": 25, "test_count": 10, "sigma": 0.5},
    "model": {"hidden_nodes": 16},
    "experiment": {"trials": 1, "base_seed": 5, "sweep": [7]}
  })";
  const elmlc::SweepResult s =
      elmlc::sweep_hidden_nodes(elmlc::config_from_json_text(json.str()));
  CHECK(s.chosen_hidden_nodes == 7);
}

TEST_CASE("sweep without a candidate list is a configuration error") {
  CHECK_THROWS_AS(elmlc::sweep_hidden_nodes(small_synthetic_config("I", 16, 1)),
                  elmlc::ConfigError);
}

TEST_CASE("sweep rendering round-trips all formats") {
  std::ostringstream json;
  json << R"({
    "dataset": {"type": "synthetic", "function": "I",
                "train_count": 20, "test_count": 10, "sigma": 0.5},
    "model": {"hidden_nodes": 16},
    "experiment": {"trials": 1, "base_seed": 5, "sweep": [8, 14]}
  })";
  const elmlc::SweepResult s =
      elmlc::sweep_hidden_nodes(elmlc::config_from_json_text(json.str()));
  const std::string table = elmlc::render_sweep(s, ReportFormat::Table);
  CHECK(table.find("Chosen hidden nodes:") != std::string::npos);
  const std::string csv = elmlc::render_sweep(s, ReportFormat::Csv);
  CHECK(count_rows_starting(csv, "candidate,") == 2);
  CHECK(count_rows_starting(csv, "chosen,") == 1);
  const std::string jsonl = elmlc::render_sweep(s, ReportFormat::JsonLines);
  int candidate_lines = 0;
  std::istringstream stream(jsonl);
  for (std::string line; std::getline(stream, line);) {
    if (line.find("\"kind\":\"sweep-candidate\"") != std::string::npos) {
      ++candidate_lines;
    }
  }
  CHECK(candidate_lines == 2);
}

TEST_CASE("mse as primary metric reorders the blocks and squares consistently") {
  std::ostringstream json;
  json << R"({
    "dataset": {"type": "synthetic", "function": "I",
                "train_count": 40, "test_count": 15, "sigma": 0.5},
    "model": {"hidden_nodes": 16, "groups": 2},
    "experiment": {"trials": 2, "base_seed": 13, "metric": "mse"}
  })";
  const ExperimentReport r =
      elmlc::run_experiment(elmlc::config_from_json_text(json.str()));
  REQUIRE(r.algorithms[0].metrics.size() == 4);
  CHECK(r.algorithms[0].metrics[0].metric == "mse");
  CHECK(r.algorithms[0].metrics[1].metric == "rmse");
  for (const auto& algo : r.algorithms) {
    for (std::size_t t = 0; t < 2; ++t) {
      const double mse = algo.metrics[0].stats.per_trial[t];
      const double rmse = algo.metrics[1].stats.per_trial[t];
      CHECK(rmse * rmse == doctest::Approx(mse).epsilon(1e-12));
    }
  }
}

TEST_CASE("a shorter run is a prefix of a longer one under the same seed") {
  ExperimentConfig two = small_synthetic_config("I", 16, 2, 2);
  ExperimentConfig five = small_synthetic_config("I", 16, 2, 5);
  const ExperimentReport a = elmlc::run_experiment(two);
  const ExperimentReport b = elmlc::run_experiment(five);
  for (std::size_t algo = 0; algo < 2; ++algo) {
    for (std::size_t m = 0; m < a.algorithms[algo].metrics.size(); ++m) {
      const auto& short_run = a.algorithms[algo].metrics[m].stats.per_trial;
      const auto& long_run = b.algorithms[algo].metrics[m].stats.per_trial;
      REQUIRE(long_run.size() == 5);
      CHECK(short_run[0] == long_run[0]);
      CHECK(short_run[1] == long_run[1]);
    }
  }
}

TEST_CASE("gaussian weight distribution is accepted and changes the draws") {
  auto config_with = [](const char* dist) {
    std::ostringstream json;
    json << R"({
      "dataset": {"type": "synthetic", "function": "I",
                  "train_count": 40, "test_count": 10, "sigma": 0.5},
      "model": {"hidden_nodes": 16, "groups": 2, "weight_distribution": ")"
         << dist << R"("},
      "experiment": {"trials": 2, "base_seed": 6}
    })";
    return elmlc::config_from_json_text(json.str());
  };
  const ExperimentReport gauss = elmlc::run_experiment(config_with("gaussian"));
  const ExperimentReport uniform = elmlc::run_experiment(config_with("uniform"));
  CHECK(gauss.algorithms[1].metrics[0].stats.per_trial !=
        uniform.algorithms[1].metrics[0].stats.per_trial);

  const ExperimentReport again = elmlc::run_experiment(config_with("gaussian"));
  CHECK(gauss.algorithms[0].metrics[0].stats.per_trial ==
        again.algorithms[0].metrics[0].stats.per_trial);
}

TEST_CASE("feature shuffle reassigns inputs to groups without touching ELM") {
  std::ostringstream json;
  json << R"({
    "dataset": {"type": "synthetic", "function": "I",
                "train_count": 60, "test_count": 20, "sigma": 0.5},
    "model": {"hidden_nodes": 32, "groups": 4},
    "experiment": {"trials": 3, "base_seed": 42, "feature_shuffle_seed": 99}
  })";
  const ExperimentReport shuffled =
      elmlc::run_experiment(elmlc::config_from_json_text(json.str()));
  const ExperimentReport natural = elmlc::run_experiment(small_synthetic_config("I", 32, 4));

  // every input index appears exactly once, but not in natural order
  std::vector<std::size_t> seen;
  for (const auto& g : shuffled.partition.input_groups) {
    seen.insert(seen.end(), g.begin(), g.end());
  }
  std::vector<std::size_t> sorted = seen;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> want(12);
  for (std::size_t i = 0; i < 12; ++i) want[i] = i;
  CHECK(sorted == want);
  CHECK(seen != want);
  CHECK(shuffled.partition.weight_count() == 96);

  // the fully connected baseline is unaffected by the grouping knob
  CHECK(shuffled.algorithms[1].metrics[0].stats.per_trial ==
        natural.algorithms[1].metrics[0].stats.per_trial);
  CHECK(shuffled.algorithms[0].metrics[0].stats.per_trial !=
        natural.algorithms[0].metrics[0].stats.per_trial);
}

TEST_CASE("explicit group sizes flow through the config") {
  std::ostringstream json;
  json << R"({
    "dataset": {"type": "synthetic", "function": "I",
                "train_count": 40, "test_count": 10, "sigma": 0.5},
    "model": {"hidden_nodes": 32,
              "groups": {"input_sizes": [4, 4, 4], "hidden_sizes": [6, 6, 20]}},
    "experiment": {"trials": 1, "base_seed": 3}
  })";
  const ExperimentReport r =
      elmlc::run_experiment(elmlc::config_from_json_text(json.str()));
  CHECK(r.partition.group_count() == 3);
  CHECK(r.algorithms[0].weight_count == 4 * 6 + 4 * 6 + 4 * 20);

  // sizes that do not match the dataset are rejected
  std::ostringstream bad;
  bad << R"({
    "dataset": {"type": "synthetic", "function": "I",
                "train_count": 40, "test_count": 10, "sigma": 0.5},
    "model": {"hidden_nodes": 32,
              "groups": {"input_sizes": [4, 4], "hidden_sizes": [16, 16]}},
    "experiment": {"trials": 1, "base_seed": 3}
  })";
  CHECK_THROWS_AS(elmlc::run_experiment(elmlc::config_from_json_text(bad.str())),
                  elmlc::ConfigError);
}

TEST_CASE("separate test file: labels re-encode against the training order") {
  // Same six rows in both files, but the test file starts with the other
  // class, so its first-appearance label order differs. Exact interpolation
  // (hidden >= samples) then forces 100% on both splits only when the test
  // one-hot columns were re-aligned to the training encoding.
  const auto dir = std::filesystem::temp_directory_path() / "elmlc_testpath";
  std::filesystem::create_directories(dir);
  const char* rows[] = {"0.1,0.9,p", "0.8,0.2,q", "0.4,0.6,p",
                        "0.7,0.3,q", "0.2,0.5,p", "0.9,0.1,q"};
  {
    std::ofstream train(dir / "train.csv");
    for (const char* row : rows) train << row << '\n';  // first label: p
    std::ofstream test(dir / "test.csv");
    for (int i = 5; i >= 0; --i) test << rows[i] << '\n';  // first label: q
  }
  std::ostringstream json;
  json << R"({
    "dataset": {"type": "csv", "path": ")" << (dir / "train.csv").string()
       << R"(", "test_path": ")" << (dir / "test.csv").string() << R"(",
                "target_column": 2, "task": "classification", "header": false},
    "model": {"hidden_nodes": 8, "groups": 2},
    "experiment": {"trials": 2, "base_seed": 8}
  })";
  const ExperimentReport r =
      elmlc::run_experiment(elmlc::config_from_json_text(json.str()));
  CHECK(r.output_count == 2);
  CHECK(r.train_rows == 6);
  CHECK(r.test_rows == 6);
  for (const auto& algo : r.algorithms) {
    for (const auto& m : algo.metrics) {
      CHECK(m.stats.min == 100.0);
    }
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("separate test file with an unseen class is a data error") {
  const auto dir = std::filesystem::temp_directory_path() / "elmlc_testpath2";
  std::filesystem::create_directories(dir);
  {
    std::ofstream train(dir / "train.csv");
    train << "0.1,p\n0.8,q\n0.3,p\n0.9,q\n";
    std::ofstream test(dir / "test.csv");
    test << "0.5,r\n";
  }
  std::ostringstream json;
  json << R"({
    "dataset": {"type": "csv", "path": ")" << (dir / "train.csv").string()
       << R"(", "test_path": ")" << (dir / "test.csv").string() << R"(",
                "target_column": 1, "task": "classification", "header": false},
    "model": {"hidden_nodes": 4, "groups": 1},
    "experiment": {"trials": 1, "base_seed": 8}
  })";
  CHECK_THROWS_AS(elmlc::run_experiment(elmlc::config_from_json_text(json.str())),
                  elmlc::DataError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("config parsing rejects unknown keys and bad values") {
  CHECK_THROWS_AS(elmlc::config_from_json_text("{not json"), elmlc::ConfigError);
  CHECK_THROWS_AS(elmlc::config_from_json_text(R"({"dataset": {}, "model": {}})"),
                  elmlc::ConfigError);
  CHECK_THROWS_AS(elmlc::config_from_json_text(R"({
    "dataset": {"type": "synthetic", "function": "III"},
    "model": {"hidden_nodes": 4}
  })"),
                  elmlc::ConfigError);
  CHECK_THROWS_AS(elmlc::config_from_json_text(R"({
    "dataset": {"type": "synthetic", "function": "I", "bogus": 1},
    "model": {"hidden_nodes": 4}
  })"),
                  elmlc::ConfigError);
  CHECK_THROWS_AS(elmlc::config_from_json_text(R"({
    "dataset": {"type": "csv", "path": "x.csv", "target_column": "y",
                "task": "regression"},
    "model": {"hidden_nodes": 4}
  })"),
                  elmlc::ConfigError);  // csv needs train_count or test_path
  CHECK_THROWS_AS(elmlc::config_from_json_text(R"({
    "dataset": {"type": "synthetic", "function": "I"},
    "model": {"hidden_nodes": -5}
  })"),
                  elmlc::ConfigError);  // negative counts must not wrap
  CHECK_THROWS_AS(elmlc::config_from_json_text(R"({
    "dataset": {"type": "synthetic", "function": "I"},
    "model": {"hidden_nodes": 8},
    "experiment": {"trials": -1}
  })"),
                  elmlc::ConfigError);
}

TEST_CASE("config echo resolves kind-dependent defaults") {
  const ExperimentConfig synthetic = small_synthetic_config("I", 8, 1);
  const std::string echo = elmlc::config_echo_json(synthetic);
  CHECK(echo.find("\"normalize\":false") != std::string::npos);
  CHECK(echo.find("\"resplit_per_trial\":true") != std::string::npos);

  std::ostringstream json;
  json << R"({
    "dataset": {"type": "csv", "path": ")" << kFixtures << R"(/ionosphere.csv",
                "target_column": 34, "task": "classification", "header": false,
                "train_count": 12},
    "model": {"hidden_nodes": 51, "groups": 17}
  })";
  const std::string csv_echo =
      elmlc::config_echo_json(elmlc::config_from_json_text(json.str()));
  CHECK(csv_echo.find("\"normalize\":true") != std::string::npos);
  CHECK(csv_echo.find("\"resplit_per_trial\":false") != std::string::npos);
}

TEST_CASE("load_config resolves csv paths relative to the config file") {
  const auto dir = std::filesystem::temp_directory_path() / "elmlc_cfg_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / "tiny.csv");
    csv << "a,b,y\n1,2,3\n4,5,6\n7,8,9\n";
  }
  {
    std::ofstream cfg(dir / "cfg.json");
    cfg << R"({
      "dataset": {"type": "csv", "path": "tiny.csv", "target_column": "y",
                  "task": "regression", "train_count": 2},
      "model": {"hidden_nodes": 4}
    })";
  }
  const ExperimentConfig cfg = elmlc::load_config((dir / "cfg.json").string());
  const auto& spec = std::get<elmlc::CsvSpec>(cfg.dataset);
  CHECK(std::filesystem::path(spec.path).is_absolute());
  CHECK(std::filesystem::exists(spec.path));
  std::filesystem::remove_all(dir);
}
