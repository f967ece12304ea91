#include "eval.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace elmlc {

namespace {

void check_same_shape(const Matrix& pred, const Matrix& target, const char* what) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols()) {
    throw ShapeError(std::string(what) + ": predictions are " +
                     std::to_string(pred.rows()) + "x" + std::to_string(pred.cols()) +
                     " but targets are " + std::to_string(target.rows()) + "x" +
                     std::to_string(target.cols()));
  }
}

std::size_t argmax_row(const Matrix& m, std::size_t row) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < m.cols(); ++c) {
    if (m(row, c) > m(row, best)) best = c;
  }
  return best;
}

}  // namespace

double regression_error(const Matrix& pred, const Matrix& target,
                        RegressionMetric metric) {
  check_same_shape(pred, target, "regression_error");
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred.data()[i] - target.data()[i];
    sum += d * d;
  }
  const double mse = sum / static_cast<double>(pred.size());
  return metric == RegressionMetric::Mse ? mse : std::sqrt(mse);
}

double classification_accuracy(const Matrix& pred, const Matrix& target) {
  check_same_shape(pred, target, "classification_accuracy");
  std::size_t correct = 0;
  for (std::size_t r = 0; r < pred.rows(); ++r) {
    if (argmax_row(pred, r) == argmax_row(target, r)) ++correct;
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(pred.rows());
}

TrialStats aggregate(const std::vector<double>& per_trial) {
  if (per_trial.empty()) {
    throw ConfigError("aggregate needs at least one trial value");
  }
  TrialStats stats;
  stats.per_trial = per_trial;
  stats.max = *std::max_element(per_trial.begin(), per_trial.end());
  stats.min = *std::min_element(per_trial.begin(), per_trial.end());
  double sum = 0.0;
  for (double v : per_trial) sum += v;
  stats.mean = sum / static_cast<double>(per_trial.size());
  return stats;
}

}  // namespace elmlc
