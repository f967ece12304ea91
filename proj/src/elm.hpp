#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "data.hpp"
#include "grouping.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace elmlc {

enum class Activation { Sigmoid };
enum class WeightDistribution { Uniform, Gaussian };

// Numerically stable logistic 1/(1+exp(-x)); never overflows for finite x.
double sigmoid(double x);

// One fully connected input-group / hidden-group pair. Weights are kept as
// the dense |inputs| x |hidden| sub-block; entries outside every block are
// structurally zero and never stored.
struct WeightBlock {
  std::vector<std::size_t> input_indices;
  std::vector<std::size_t> hidden_indices;
  Matrix weights;
};

// Random-feature network: fixed random input-hidden weights (optionally
// block-local), sigmoid hidden layer, least-squares output weights.
struct ElmModel {
  std::size_t input_count = 0;   // n
  std::size_t hidden_count = 0;  // L
  std::size_t output_count = 0;  // m, 0 until fitted
  std::vector<WeightBlock> blocks;
  std::vector<double> biases;          // length L
  std::optional<Matrix> beta;          // L x m, set by fit
  Activation activation = Activation::Sigmoid;
  std::optional<GroupPartition> partition;  // absent for fully connected
  std::uint64_t seed = 0;
};

// Draws weights and biases from the seeded stream: groups in order, within
// a group all weights hidden-major (all inputs for hidden node 0, then 1,
// ...), then that group's biases. A fully connected model is the single
// all-indices group, which makes a one-group partition reproduce it
// bit-for-bit from the same seed. Uniform draws are on [-1,1].
ElmModel random_init(std::size_t n, std::size_t L,
                     std::optional<GroupPartition> partition, std::uint64_t seed,
                     WeightDistribution distribution = WeightDistribution::Uniform);

// N x L hidden activations g(w_i . x_j + b_i).
Matrix hidden_matrix(const ElmModel& model, const Matrix& x);

// Returns a copy of the model with beta solved from the training set.
ElmModel fit(const ElmModel& model, const Dataset& train,
             double svd_rtol = kDefaultSvdRtol);

// N x m network outputs; requires a fitted model.
Matrix predict(const ElmModel& model, const Matrix& x);

// Structurally present input-hidden weights: n*L when fully connected,
// otherwise the partition's block sizes summed.
std::size_t count_input_hidden_weights(const ElmModel& model);

// n x L view with zeros at every absent connection.
Matrix dense_input_weights(const ElmModel& model);

}  // namespace elmlc
