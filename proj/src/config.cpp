#include <filesystem>
#include <fstream>
#include <sstream>
#include <type_traits>

#include <json.hpp>

#include "errors.hpp"
#include "experiment.hpp"

namespace elmlc {

namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
}

void reject_unknown_keys(const json& j, const std::string& where,
                         std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T get_as(const json& j, const std::string& where, const char* key) {
  // Unsigned fields must be nonnegative integers; nlohmann would otherwise
  // wrap negative values silently.
  if constexpr (std::is_unsigned_v<T> && !std::is_same_v<T, bool>) {
    if (!j.at(key).is_number_unsigned()) {
      throw ConfigError("'" + std::string(key) + "' in " + where +
                        " must be a nonnegative integer");
    }
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("bad value for '" + std::string(key) + "' in " + where + ": " +
                      e.what());
  }
}

template <typename T>
T get_or(const json& j, const std::string& where, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return get_as<T>(j, where, key);
}

std::vector<std::size_t> size_list(const json& j, const std::string& where,
                                   const char* key) {
  if (!j.at(key).is_array()) {
    throw ConfigError("'" + std::string(key) + "' in " + where +
                      " must be an array of positive integers");
  }
  std::vector<std::size_t> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
      throw ConfigError("'" + std::string(key) + "' in " + where +
                        " must contain positive integers");
    }
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

std::variant<SyntheticSpec, CsvSpec> parse_dataset(const json& j) {
  require_object(j, "dataset");
  const std::string type = get_as<std::string>(j, "dataset", "type");
  if (type == "synthetic") {
    reject_unknown_keys(j, "dataset",
                        {"type", "function", "train_count", "test_count", "sigma"});
    SyntheticSpec s;
    const std::string fn = get_as<std::string>(j, "dataset", "function");
    if (fn == "I") {
      s.function = SyntheticFunction::I;
    } else if (fn == "II") {
      s.function = SyntheticFunction::II;
    } else {
      throw ConfigError("dataset.function must be \"I\" or \"II\", got \"" + fn + "\"");
    }
    s.train_count = get_or<std::size_t>(j, "dataset", "train_count", s.train_count);
    s.test_count = get_or<std::size_t>(j, "dataset", "test_count", s.test_count);
    s.sigma = get_or<double>(j, "dataset", "sigma", s.sigma);
    return s;
  }
  if (type == "csv") {
    reject_unknown_keys(j, "dataset",
                        {"type", "path", "target_column", "task", "delimiter",
                         "header", "train_count", "test_path"});
    CsvSpec s;
    s.path = get_as<std::string>(j, "dataset", "path");
    const json& target = j.at("target_column");
    if (target.is_string()) {
      s.schema.target_column = target.get<std::string>();
    } else if (target.is_number_unsigned()) {
      s.schema.target_column = target.get<std::size_t>();
    } else {
      throw ConfigError("dataset.target_column must be a column name or 0-based index");
    }
    const std::string task = get_as<std::string>(j, "dataset", "task");
    if (task == "regression") {
      s.schema.task = TaskKind::Regression;
    } else if (task == "classification") {
      s.schema.task = TaskKind::Classification;
    } else {
      throw ConfigError("dataset.task must be \"regression\" or \"classification\"");
    }
    const std::string delim = get_or<std::string>(j, "dataset", "delimiter", ",");
    if (delim.size() != 1) {
      throw ConfigError("dataset.delimiter must be a single character");
    }
    s.schema.delimiter = delim[0];
    s.schema.header = get_or<bool>(j, "dataset", "header", true);
    if (j.contains("train_count") && !j.at("train_count").is_null()) {
      s.train_count = get_as<std::size_t>(j, "dataset", "train_count");
    }
    if (j.contains("test_path") && !j.at("test_path").is_null()) {
      s.test_path = get_as<std::string>(j, "dataset", "test_path");
    }
    if (!s.train_count && !s.test_path) {
      throw ConfigError("csv dataset needs either train_count (to split) or "
                        "test_path (a separate test file)");
    }
    if (s.train_count && s.test_path) {
      throw ConfigError("csv dataset: give train_count or test_path, not both");
    }
    return s;
  }
  throw ConfigError("dataset.type must be \"synthetic\" or \"csv\", got \"" + type +
                    "\"");
}

GroupSpec parse_groups(const json& j) {
  GroupSpec g;
  if (j.is_number_unsigned()) {
    g.k = j.get<std::size_t>();
    if (g.k < 1) throw ConfigError("model.groups must be at least 1");
    return g;
  }
  if (j.is_object()) {
    reject_unknown_keys(j, "model.groups", {"input_sizes", "hidden_sizes"});
    auto input_sizes = size_list(j, "model.groups", "input_sizes");
    auto hidden_sizes = size_list(j, "model.groups", "hidden_sizes");
    g.k = input_sizes.size();
    g.explicit_sizes = {std::move(input_sizes), std::move(hidden_sizes)};
    return g;
  }
  throw ConfigError("model.groups must be an integer group count or an object "
                    "with input_sizes/hidden_sizes");
}

}  // namespace

ExperimentConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require_object(j, "config");
  reject_unknown_keys(j, "config", {"name", "dataset", "model", "experiment"});
  if (!j.contains("dataset")) throw ConfigError("config needs a 'dataset' section");
  if (!j.contains("model")) throw ConfigError("config needs a 'model' section");

  ExperimentConfig cfg;
  cfg.name = get_or<std::string>(j, "config", "name", "");
  cfg.dataset = parse_dataset(j.at("dataset"));

  const json& model = j.at("model");
  require_object(model, "model");
  reject_unknown_keys(model, "model",
                      {"hidden_nodes", "groups", "weight_distribution", "svd_rtol"});
  cfg.hidden_nodes = get_as<std::size_t>(model, "model", "hidden_nodes");
  if (model.contains("groups")) cfg.groups = parse_groups(model.at("groups"));
  const std::string dist =
      get_or<std::string>(model, "model", "weight_distribution", "uniform");
  if (dist == "uniform") {
    cfg.weight_distribution = WeightDistribution::Uniform;
  } else if (dist == "gaussian") {
    cfg.weight_distribution = WeightDistribution::Gaussian;
  } else {
    throw ConfigError("model.weight_distribution must be \"uniform\" or \"gaussian\"");
  }
  cfg.svd_rtol = get_or<double>(model, "model", "svd_rtol", kDefaultSvdRtol);
  if (!(cfg.svd_rtol >= 0.0)) throw ConfigError("model.svd_rtol must be >= 0");

  if (j.contains("experiment")) {
    const json& exp = j.at("experiment");
    require_object(exp, "experiment");
    reject_unknown_keys(exp, "experiment",
                        {"trials", "base_seed", "metric", "normalize",
                         "resplit_per_trial", "feature_shuffle_seed", "sweep"});
    cfg.trials = get_or<std::size_t>(exp, "experiment", "trials", cfg.trials);
    cfg.base_seed = get_or<std::uint64_t>(exp, "experiment", "base_seed", cfg.base_seed);
    const std::string metric = get_or<std::string>(exp, "experiment", "metric", "rmse");
    if (metric == "rmse") {
      cfg.metric = RegressionMetric::Rmse;
    } else if (metric == "mse") {
      cfg.metric = RegressionMetric::Mse;
    } else {
      throw ConfigError("experiment.metric must be \"rmse\" or \"mse\"");
    }
    if (exp.contains("normalize") && !exp.at("normalize").is_null()) {
      cfg.normalize = get_as<bool>(exp, "experiment", "normalize");
    }
    if (exp.contains("resplit_per_trial") && !exp.at("resplit_per_trial").is_null()) {
      cfg.resplit_per_trial = get_as<bool>(exp, "experiment", "resplit_per_trial");
    }
    if (exp.contains("feature_shuffle_seed") &&
        !exp.at("feature_shuffle_seed").is_null()) {
      cfg.feature_shuffle_seed =
          get_as<std::uint64_t>(exp, "experiment", "feature_shuffle_seed");
    }
    if (exp.contains("sweep") && !exp.at("sweep").is_null()) {
      cfg.sweep = size_list(exp, "experiment", "sweep");
      if (cfg.sweep.empty()) {
        throw ConfigError("experiment.sweep must be a nonempty list when present");
      }
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  ExperimentConfig cfg = config_from_json_text(buf.str());

  // Relative dataset paths are resolved against the config file's directory.
  if (auto* csv = std::get_if<CsvSpec>(&cfg.dataset)) {
    const auto base = std::filesystem::path(path).parent_path();
    auto resolve = [&](std::string& p) {
      if (!p.empty() && std::filesystem::path(p).is_relative()) {
        p = (base / p).string();
      }
    };
    resolve(csv->path);
    if (csv->test_path) resolve(*csv->test_path);
  }
  return cfg;
}

std::string config_echo_json(const ExperimentConfig& cfg) {
  json j;
  j["name"] = cfg.name;
  json& d = j["dataset"];
  if (const auto* syn = std::get_if<SyntheticSpec>(&cfg.dataset)) {
    d["type"] = "synthetic";
    d["function"] = syn->function == SyntheticFunction::I ? "I" : "II";
    d["train_count"] = syn->train_count;
    d["test_count"] = syn->test_count;
    d["sigma"] = syn->sigma;
  } else {
    const auto& csv = std::get<CsvSpec>(cfg.dataset);
    d["type"] = "csv";
    d["path"] = csv.path;
    if (const auto* name = std::get_if<std::string>(&csv.schema.target_column)) {
      d["target_column"] = *name;
    } else {
      d["target_column"] = std::get<std::size_t>(csv.schema.target_column);
    }
    d["task"] =
        csv.schema.task == TaskKind::Regression ? "regression" : "classification";
    d["delimiter"] = std::string(1, csv.schema.delimiter);
    d["header"] = csv.schema.header;
    if (csv.train_count) d["train_count"] = *csv.train_count;
    if (csv.test_path) d["test_path"] = *csv.test_path;
  }
  json& m = j["model"];
  m["hidden_nodes"] = cfg.hidden_nodes;
  if (cfg.groups.explicit_sizes) {
    m["groups"]["input_sizes"] = cfg.groups.explicit_sizes->first;
    m["groups"]["hidden_sizes"] = cfg.groups.explicit_sizes->second;
  } else {
    m["groups"] = cfg.groups.k;
  }
  m["weight_distribution"] =
      cfg.weight_distribution == WeightDistribution::Uniform ? "uniform" : "gaussian";
  m["svd_rtol"] = cfg.svd_rtol;
  json& e = j["experiment"];
  e["trials"] = cfg.trials;
  e["base_seed"] = cfg.base_seed;
  e["metric"] = cfg.metric == RegressionMetric::Rmse ? "rmse" : "mse";
  const bool is_csv = std::holds_alternative<CsvSpec>(cfg.dataset);
  e["normalize"] = cfg.normalize.value_or(is_csv);
  e["resplit_per_trial"] = cfg.resplit_per_trial.value_or(!is_csv);
  if (cfg.feature_shuffle_seed) e["feature_shuffle_seed"] = *cfg.feature_shuffle_seed;
  if (!cfg.sweep.empty()) e["sweep"] = cfg.sweep;
  return j.dump();
}

}  // namespace elmlc
