#include "data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "rng.hpp"

namespace elmlc {

namespace {

constexpr std::size_t kFunctionIDim = 12;
constexpr std::size_t kFunctionIIDim = 15;
constexpr double kZeroGuard = 1e-12;  // function II resampling threshold

void check_dim(std::span<const double> x, std::size_t want, const char* name) {
  if (x.size() != want) {
    throw ShapeError(std::string(name) + " expects " + std::to_string(want) +
                     " components, got " + std::to_string(x.size()));
  }
}

std::string trimmed(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, delimiter)) cells.push_back(trimmed(cell));
  if (!line.empty() && line.back() == delimiter) cells.push_back("");
  return cells;
}

double parse_double(const std::string& cell, std::size_t row, std::size_t col) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (begin != end && *begin == '+') ++begin;  // from_chars rejects a leading '+'
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || cell.empty()) {
    throw DataError("non-numeric cell '" + cell + "' at row " + std::to_string(row) +
                    ", column " + std::to_string(col));
  }
  if (!std::isfinite(value)) {
    throw DataError("non-finite value at row " + std::to_string(row) + ", column " +
                    std::to_string(col));
  }
  return value;
}

// Exact round-trip decimal form (shortest repr via %.17g is guaranteed to
// parse back to the same double).
std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double function_i(std::span<const double> x) {
  check_dim(x, kFunctionIDim, "function I");
  double sum = 0.0;
  for (double xi : x) sum += xi * std::sin(xi * xi);
  return sum;
}

double function_ii(std::span<const double> x) {
  check_dim(x, kFunctionIIDim, "function II");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      throw DataError("function II undefined: component " + std::to_string(i + 1) +
                      " is zero (ln(0))");
    }
    const double sign = (i + 1) % 2 == 0 ? 1.0 : -1.0;  // (-1)^i with i 1-based
    sum += x[i] + sign * std::log(x[i] * x[i]);
  }
  return sum;
}

Dataset generate_synthetic(SyntheticFunction which, std::size_t count, double sigma,
                           std::uint64_t seed) {
  if (count < 1) throw ConfigError("synthetic sample count must be at least 1");
  if (sigma < 0.0) throw ConfigError("noise level sigma must be nonnegative");
  const std::size_t dim =
      which == SyntheticFunction::I ? kFunctionIDim : kFunctionIIDim;

  Rng rng(seed);
  Matrix features(count, dim);
  Matrix targets(count, 1);
  std::vector<double> row(dim);
  for (std::size_t j = 0; j < count; ++j) {
    for (std::size_t i = 0; i < dim; ++i) {
      double v = rng.uniform(-2.0, 2.0);
      if (which == SyntheticFunction::II) {
        while (std::abs(v) < kZeroGuard) v = rng.uniform(-2.0, 2.0);
      }
      row[i] = v;
      features(j, i) = v;
    }
    const double clean =
        which == SyntheticFunction::I ? function_i(row) : function_ii(row);
    targets(j, 0) = clean + sigma * rng.gaussian();
  }

  Dataset d;
  d.features = std::move(features);
  d.targets = std::move(targets);
  d.task = TaskKind::Regression;
  d.feature_names.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) d.feature_names.push_back("x" + std::to_string(i + 1));
  return d;
}

Dataset load_csv(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  std::vector<std::pair<std::string, std::size_t>> lines;  // text, 1-based file line
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trimmed(line).empty()) continue;
    lines.emplace_back(line, line_no);
  }

  std::size_t first_data = 0;
  std::vector<std::string> header;
  if (schema.header) {
    if (lines.empty()) throw DataError("'" + path + "' has no rows at all");
    header = split_line(lines[0].first, schema.delimiter);
    first_data = 1;
  }
  if (lines.size() <= first_data) {
    throw DataError("'" + path + "' has no data rows");
  }

  const std::size_t width = split_line(lines[first_data].first, schema.delimiter).size();
  if (width < 2) {
    throw DataError("'" + path + "' rows need at least one feature and one target");
  }
  if (schema.header && header.size() != width) {
    throw DataError("'" + path + "' header has " + std::to_string(header.size()) +
                    " columns but row " + std::to_string(lines[first_data].second) +
                    " has " + std::to_string(width));
  }

  std::size_t target_col;
  if (const auto* name = std::get_if<std::string>(&schema.target_column)) {
    if (!schema.header) {
      throw ConfigError("target column '" + *name +
                        "' given by name but the file has no header");
    }
    const auto it = std::find(header.begin(), header.end(), *name);
    if (it == header.end()) {
      throw DataError("target column '" + *name + "' not found in header of '" +
                      path + "'");
    }
    target_col = static_cast<std::size_t>(it - header.begin());
  } else {
    target_col = std::get<std::size_t>(schema.target_column);
    if (target_col >= width) {
      throw DataError("target column index " + std::to_string(target_col) +
                      " out of range for " + std::to_string(width) + "-column file");
    }
  }

  const std::size_t n_rows = lines.size() - first_data;
  const std::size_t n_features = width - 1;
  Matrix features(n_rows, n_features);
  std::vector<std::string> labels;          // per row, classification
  std::vector<double> numeric_targets;      // per row, regression
  std::vector<std::string> class_labels;    // distinct, first appearance

  for (std::size_t r = 0; r < n_rows; ++r) {
    const std::size_t file_row = lines[first_data + r].second;  // 1-based
    const auto cells = split_line(lines[first_data + r].first, schema.delimiter);
    if (cells.size() != width) {
      throw DataError("ragged row " + std::to_string(file_row) + ": expected " +
                      std::to_string(width) + " cells, got " +
                      std::to_string(cells.size()));
    }
    std::size_t f = 0;
    for (std::size_t c = 0; c < width; ++c) {
      if (c == target_col) continue;
      features(r, f++) = parse_double(cells[c], file_row, c + 1);
    }
    if (schema.task == TaskKind::Classification) {
      const std::string& label = cells[target_col];
      if (label.empty()) {
        throw DataError("empty class label at row " + std::to_string(file_row));
      }
      if (std::find(class_labels.begin(), class_labels.end(), label) ==
          class_labels.end()) {
        class_labels.push_back(label);
      }
      labels.push_back(label);
    } else {
      numeric_targets.push_back(parse_double(cells[target_col], file_row, target_col + 1));
    }
  }

  Dataset d;
  d.features = std::move(features);
  d.task = schema.task;
  if (schema.task == TaskKind::Classification) {
    Matrix targets(n_rows, class_labels.size(), 0.0);
    for (std::size_t r = 0; r < n_rows; ++r) {
      const auto it = std::find(class_labels.begin(), class_labels.end(), labels[r]);
      targets(r, static_cast<std::size_t>(it - class_labels.begin())) = 1.0;
    }
    d.targets = std::move(targets);
    d.class_labels = std::move(class_labels);
  } else {
    Matrix targets(n_rows, 1);
    for (std::size_t r = 0; r < n_rows; ++r) targets(r, 0) = numeric_targets[r];
    d.targets = std::move(targets);
  }
  if (schema.header) {
    for (std::size_t c = 0; c < width; ++c) {
      if (c != target_col) d.feature_names.push_back(header[c]);
    }
  }
  return d;
}

void save_csv(const Dataset& d, const std::string& path) {
  if (d.task == TaskKind::Regression && d.output_count() != 1) {
    throw DataError("save_csv supports single-target regression datasets only");
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");

  for (std::size_t c = 0; c < d.feature_count(); ++c) {
    out << (c < d.feature_names.size() ? d.feature_names[c]
                                       : "x" + std::to_string(c + 1))
        << ',';
  }
  out << (d.task == TaskKind::Regression ? "target" : "label") << '\n';

  for (std::size_t r = 0; r < d.rows(); ++r) {
    for (std::size_t c = 0; c < d.feature_count(); ++c) {
      out << format_double(d.features(r, c)) << ',';
    }
    if (d.task == TaskKind::Regression) {
      out << format_double(d.targets(r, 0));
    } else {
      std::size_t best = 0;
      for (std::size_t c = 1; c < d.output_count(); ++c) {
        if (d.targets(r, c) > d.targets(r, best)) best = c;
      }
      out << d.class_labels.at(best);
    }
    out << '\n';
  }
  if (!out) throw DataError("write to '" + path + "' failed");
}

Matrix NormalizationParams::apply(const Matrix& features) const {
  if (features.cols() != col_min.size()) {
    throw ShapeError("normalization fitted for " + std::to_string(col_min.size()) +
                     " features, dataset has " + std::to_string(features.cols()));
  }
  Matrix out(features.rows(), features.cols());
  for (std::size_t c = 0; c < features.cols(); ++c) {
    const double range = col_max[c] - col_min[c];
    for (std::size_t r = 0; r < features.rows(); ++r) {
      out(r, c) = range == 0.0
                      ? 0.0
                      : 2.0 * (features(r, c) - col_min[c]) / range - 1.0;
    }
  }
  return out;
}

Matrix NormalizationParams::invert(const Matrix& normalized) const {
  if (normalized.cols() != col_min.size()) {
    throw ShapeError("normalization fitted for " + std::to_string(col_min.size()) +
                     " features, dataset has " + std::to_string(normalized.cols()));
  }
  Matrix out(normalized.rows(), normalized.cols());
  for (std::size_t c = 0; c < normalized.cols(); ++c) {
    const double range = col_max[c] - col_min[c];
    for (std::size_t r = 0; r < normalized.rows(); ++r) {
      out(r, c) = col_min[c] + (normalized(r, c) + 1.0) * range / 2.0;
    }
  }
  return out;
}

NormalizedData normalize_features(const Dataset& train,
                                  const std::vector<Dataset>& others) {
  for (const Dataset& o : others) {
    if (o.feature_count() != train.feature_count()) {
      throw ShapeError("normalize_features: datasets disagree on feature count");
    }
  }
  NormalizationParams params;
  params.col_min.resize(train.feature_count());
  params.col_max.resize(train.feature_count());
  for (std::size_t c = 0; c < train.feature_count(); ++c) {
    double lo = train.features(0, c), hi = train.features(0, c);
    for (std::size_t r = 1; r < train.rows(); ++r) {
      lo = std::min(lo, train.features(r, c));
      hi = std::max(hi, train.features(r, c));
    }
    params.col_min[c] = lo;
    params.col_max[c] = hi;
  }

  NormalizedData out;
  out.train = train;
  out.train.features = params.apply(train.features);
  for (const Dataset& o : others) {
    Dataset mapped = o;
    mapped.features = params.apply(o.features);
    out.others.push_back(std::move(mapped));
  }
  out.params = std::move(params);
  return out;
}

void save_normalization(const NormalizationParams& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << "elmlc-normalization 1\n" << p.col_min.size() << '\n';
  for (std::size_t c = 0; c < p.col_min.size(); ++c) {
    out << format_double(p.col_min[c]) << ' ' << format_double(p.col_max[c]) << '\n';
  }
  if (!out) throw DataError("write to '" + path + "' failed");
}

NormalizationParams load_normalization(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::string magic;
  int version = 0;
  std::size_t count = 0;
  in >> magic >> version >> count;
  if (!in || magic != "elmlc-normalization" || version != 1) {
    throw DataError("'" + path + "' is not a normalization parameter file");
  }
  NormalizationParams p;
  p.col_min.resize(count);
  p.col_max.resize(count);
  for (std::size_t c = 0; c < count; ++c) in >> p.col_min[c] >> p.col_max[c];
  if (!in) throw DataError("'" + path + "' is truncated");
  return p;
}

std::pair<Dataset, Dataset> split(const Dataset& d, std::size_t train_count,
                                  std::uint64_t seed) {
  if (train_count < 1 || train_count >= d.rows()) {
    throw ConfigError("train_count " + std::to_string(train_count) +
                      " out of range for " + std::to_string(d.rows()) + " rows");
  }
  std::vector<std::size_t> order(d.rows());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    std::swap(order[i], order[rng.below(i + 1)]);
  }

  auto take = [&](std::size_t begin, std::size_t count) {
    Dataset part;
    part.task = d.task;
    part.class_labels = d.class_labels;
    part.feature_names = d.feature_names;
    part.features = Matrix(count, d.feature_count());
    part.targets = Matrix(count, d.output_count());
    for (std::size_t r = 0; r < count; ++r) {
      const std::size_t src = order[begin + r];
      for (std::size_t c = 0; c < d.feature_count(); ++c) {
        part.features(r, c) = d.features(src, c);
      }
      for (std::size_t c = 0; c < d.output_count(); ++c) {
        part.targets(r, c) = d.targets(src, c);
      }
    }
    return part;
  };
  return {take(0, train_count), take(train_count, d.rows() - train_count)};
}

}  // namespace elmlc
