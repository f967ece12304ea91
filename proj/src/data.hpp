#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "matrix.hpp"

namespace elmlc {

enum class TaskKind { Regression, Classification };

// Sample set: N feature rows paired with N target rows. Classification
// targets are one-hot with class_labels giving the column meaning in
// first-appearance order.
struct Dataset {
  Matrix features;  // N x n
  Matrix targets;   // N x m
  TaskKind task = TaskKind::Regression;
  std::vector<std::string> class_labels;   // classification only
  std::vector<std::string> feature_names;  // optional, empty when unknown

  std::size_t rows() const { return features.rows(); }
  std::size_t feature_count() const { return features.cols(); }
  std::size_t output_count() const { return targets.cols(); }
};

enum class SyntheticFunction { I, II };

// f(x) = sum_i x_i * sin(x_i^2) over 12 components.
double function_i(std::span<const double> x);

// f(x) = sum_i [x_i + (-1)^i * ln(x_i^2)] over 15 components, i counted
// from 1. Throws DataError when any component is zero (log singularity).
double function_ii(std::span<const double> x);

// N inputs i.i.d. uniform on [-2,2]^d with targets f(x) + sigma * eps,
// eps standard Gaussian. Coordinates within 1e-12 of zero are resampled
// for function II. Regression task, one output.
Dataset generate_synthetic(SyntheticFunction which, std::size_t count, double sigma,
                           std::uint64_t seed);

struct CsvSchema {
  std::variant<std::string, std::size_t> target_column;  // header name or 0-based index
  TaskKind task = TaskKind::Regression;
  char delimiter = ',';
  bool header = true;
};

// Parses numeric features and one target column; classification labels are
// collected in first-appearance order and one-hot encoded. Errors carry
// 1-based row and column numbers.
Dataset load_csv(const std::string& path, const CsvSchema& schema);

// Inverse of load_csv for generated data: features plus one trailing target
// column ("target" for regression, decoded "label" for classification).
void save_csv(const Dataset& d, const std::string& path);

// Affine per-feature map fitted on a training set: [min,max] -> [-1,1],
// constant features -> 0.
struct NormalizationParams {
  std::vector<double> col_min;
  std::vector<double> col_max;

  Matrix apply(const Matrix& features) const;
  Matrix invert(const Matrix& normalized) const;
};

struct NormalizedData {
  Dataset train;
  std::vector<Dataset> others;
  NormalizationParams params;
};

// Fits min/max on `train` only and applies the same map everywhere.
NormalizedData normalize_features(const Dataset& train,
                                  const std::vector<Dataset>& others);

void save_normalization(const NormalizationParams& p, const std::string& path);
NormalizationParams load_normalization(const std::string& path);

// Seeded uniform shuffle, then the first train_count rows become the first
// half. Both halves keep the task, labels and feature names.
std::pair<Dataset, Dataset> split(const Dataset& d, std::size_t train_count,
                                  std::uint64_t seed);

}  // namespace elmlc
