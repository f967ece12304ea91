#pragma once

#include <vector>

#include "matrix.hpp"

namespace elmlc {

enum class RegressionMetric { Rmse, Mse };

// MSE over all entries of the prediction/target difference; RMSE is its
// square root. Throws ShapeError on shape mismatch.
double regression_error(const Matrix& pred, const Matrix& target,
                        RegressionMetric metric = RegressionMetric::Rmse);

// Percentage (0..100) of rows whose prediction argmax matches the one-hot
// target argmax; ties resolve to the lowest index.
double classification_accuracy(const Matrix& pred, const Matrix& target);

// Mean/max/min summary of one metric over repeated trials.
struct TrialStats {
  double mean = 0.0;
  double max = 0.0;
  double min = 0.0;
  std::vector<double> per_trial;
};

TrialStats aggregate(const std::vector<double>& per_trial);

}  // namespace elmlc
