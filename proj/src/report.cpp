#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "experiment.hpp"

namespace elmlc {

namespace {

using nlohmann::json;

// Exact round-trip decimal form for machine-readable output.
std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Display form for tables: errors with four decimals, accuracies with two.
std::string display(double v, const std::string& metric) {
  char buf[32];
  std::snprintf(buf, sizeof buf, metric == "accuracy" ? "%.2f" : "%.4f", v);
  return buf;
}

std::string padded(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string block_title(const std::string& split, const std::string& metric,
                        TaskKind task) {
  const std::string where = split == "train" ? "Training" : "Test";
  if (task == TaskKind::Classification) return where + " accuracy (%)";
  return where + " error (" + metric + ")";
}

std::string join_sizes(const std::vector<std::vector<std::size_t>>& groups) {
  std::string out = "[";
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (g) out += ",";
    out += std::to_string(groups[g].size());
  }
  return out + "]";
}

std::string table_report(const ExperimentReport& r) {
  std::ostringstream out;
  out << "Experiment: " << r.name << '\n';
  out << "Task: "
      << (r.task == TaskKind::Classification ? "classification" : "regression")
      << " | Trials: " << r.trials << " | Base seed: " << r.base_seed << '\n';
  out << "Data: " << r.train_rows << " train / " << r.test_rows
      << " test rows | Inputs: " << r.input_count << " | Outputs: " << r.output_count
      << '\n';
  out << "Hidden nodes: " << r.hidden_nodes << " | Groups: "
      << r.partition.group_count() << " (inputs " << join_sizes(r.partition.input_groups)
      << ", hidden " << join_sizes(r.partition.hidden_groups) << ")\n";

  const auto& layout = r.algorithms.front().metrics;
  for (std::size_t m = 0; m < layout.size(); ++m) {
    out << '\n' << block_title(layout[m].split, layout[m].metric, r.task) << '\n';
    out << "  " << padded("Algorithm", 12) << padded("Mean", 12) << padded("Max", 12)
        << "Min\n";
    for (const AlgorithmResult& algo : r.algorithms) {
      const TrialStats& s = algo.metrics[m].stats;
      out << "  " << padded(algo.name, 12)
          << padded(display(s.mean, layout[m].metric), 12)
          << padded(display(s.max, layout[m].metric), 12)
          << display(s.min, layout[m].metric) << '\n';
    }
  }

  out << "\nInput-hidden weights\n";
  for (const AlgorithmResult& algo : r.algorithms) {
    out << "  " << padded(algo.name, 12) << algo.weight_count << '\n';
  }

  out << "\nTrial seeds:";
  for (const TrialSeeds& s : r.seeds) out << ' ' << s.trial_seed;
  out << '\n';
  return out.str();
}

std::string csv_report(const ExperimentReport& r) {
  std::ostringstream out;
  out << "algorithm,split,metric,mean,max,min\n";
  for (const AlgorithmResult& algo : r.algorithms) {
    for (const MetricStats& m : algo.metrics) {
      out << algo.name << ',' << m.split << ',' << m.metric << ','
          << exact(m.stats.mean) << ',' << exact(m.stats.max) << ','
          << exact(m.stats.min) << '\n';
    }
  }
  for (const AlgorithmResult& algo : r.algorithms) {
    out << algo.name << ",model,weights," << algo.weight_count << ','
        << algo.weight_count << ',' << algo.weight_count << '\n';
  }
  return out.str();
}

std::string jsonl_report(const ExperimentReport& r) {
  std::ostringstream out;
  json head;
  head["kind"] = "run";
  head["name"] = r.name;
  head["task"] = r.task == TaskKind::Classification ? "classification" : "regression";
  head["trials"] = r.trials;
  head["base_seed"] = r.base_seed;
  head["hidden_nodes"] = r.hidden_nodes;
  head["inputs"] = r.input_count;
  head["outputs"] = r.output_count;
  head["train_rows"] = r.train_rows;
  head["test_rows"] = r.test_rows;
  head["config"] = json::parse(r.config_echo);
  out << head.dump() << '\n';

  json part;
  part["kind"] = "partition";
  part["groups"] = r.partition.group_count();
  part["input_groups"] = r.partition.input_groups;
  part["hidden_groups"] = r.partition.hidden_groups;
  out << part.dump() << '\n';

  for (std::size_t t = 0; t < r.seeds.size(); ++t) {
    json s;
    s["kind"] = "seeds";
    s["trial"] = t + 1;
    s["trial_seed"] = r.seeds[t].trial_seed;
    s["train_data_seed"] = r.seeds[t].train_data_seed;
    s["test_or_split_seed"] = r.seeds[t].test_or_split_seed;
    s["elm_seed"] = r.seeds[t].elm_seed;
    s["elm_lc_seed"] = r.seeds[t].elm_lc_seed;
    out << s.dump() << '\n';
  }

  for (const AlgorithmResult& algo : r.algorithms) {
    for (const MetricStats& m : algo.metrics) {
      json stat;
      stat["kind"] = "stat";
      stat["algorithm"] = algo.name;
      stat["split"] = m.split;
      stat["metric"] = m.metric;
      stat["mean"] = m.stats.mean;
      stat["max"] = m.stats.max;
      stat["min"] = m.stats.min;
      stat["per_trial"] = m.stats.per_trial;
      out << stat.dump() << '\n';
    }
  }
  for (const AlgorithmResult& algo : r.algorithms) {
    json w;
    w["kind"] = "weights";
    w["algorithm"] = algo.name;
    w["count"] = algo.weight_count;
    out << w.dump() << '\n';
  }
  return out.str();
}

}  // namespace

std::string render_report(const ExperimentReport& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::Table:
      return table_report(r);
    case ReportFormat::Csv:
      return csv_report(r);
    case ReportFormat::JsonLines:
      return jsonl_report(r);
  }
  return {};
}

std::string render_sweep(const SweepResult& s, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::Table: {
      out << "Hidden-node sweep: " << s.name << " (mean train " << s.metric_label
          << " over " << s.trials << " trials)\n";
      out << "  " << padded("Hidden", 10) << "Mean train error\n";
      for (const auto& [l, err] : s.candidates) {
        out << "  " << padded(std::to_string(l), 10) << display(err, "error") << '\n';
      }
      out << "Chosen hidden nodes: " << s.chosen_hidden_nodes << '\n';
      break;
    }
    case ReportFormat::Csv: {
      out << "kind,hidden_nodes,mean_train_error\n";
      for (const auto& [l, err] : s.candidates) {
        out << "candidate," << l << ',' << exact(err) << '\n';
      }
      out << "chosen," << s.chosen_hidden_nodes << ",\n";
      break;
    }
    case ReportFormat::JsonLines: {
      json head;
      head["kind"] = "sweep";
      head["name"] = s.name;
      head["trials"] = s.trials;
      head["metric"] = s.metric_label;
      head["config"] = json::parse(s.config_echo);
      out << head.dump() << '\n';
      for (const auto& [l, err] : s.candidates) {
        json c;
        c["kind"] = "sweep-candidate";
        c["hidden_nodes"] = l;
        c["mean_train_error"] = err;
        out << c.dump() << '\n';
      }
      json chosen;
      chosen["kind"] = "sweep-chosen";
      chosen["hidden_nodes"] = s.chosen_hidden_nodes;
      out << chosen.dump() << '\n';
      break;
    }
  }
  return out.str();
}

}  // namespace elmlc
