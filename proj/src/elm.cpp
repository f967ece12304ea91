#include "elm.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "errors.hpp"
#include "rng.hpp"

namespace elmlc {

double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

namespace {

std::vector<std::size_t> full_range(std::size_t count) {
  std::vector<std::size_t> idx(count);
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

double draw(Rng& rng, WeightDistribution dist) {
  return dist == WeightDistribution::Uniform ? rng.uniform(-1.0, 1.0)
                                             : rng.gaussian();
}

}  // namespace

ElmModel random_init(std::size_t n, std::size_t L,
                     std::optional<GroupPartition> partition, std::uint64_t seed,
                     WeightDistribution distribution) {
  if (n < 1 || L < 1) {
    throw ConfigError("model needs at least one input and one hidden node");
  }
  if (partition) {
    const auto report = validate(*partition, n, L);
    if (!report.empty()) {
      throw ConfigError("partition does not fit a " + std::to_string(n) + "-input, " +
                        std::to_string(L) + "-hidden model: " + report.front().detail);
    }
  }

  ElmModel model;
  model.input_count = n;
  model.hidden_count = L;
  model.seed = seed;
  model.partition = std::move(partition);
  model.biases.assign(L, 0.0);

  // A fully connected model is drawn as one whole-range group so that the
  // k=1 partition walks the identical draw sequence.
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> groups;
  if (model.partition) {
    for (std::size_t g = 0; g < model.partition->group_count(); ++g) {
      groups.emplace_back(model.partition->input_groups[g],
                          model.partition->hidden_groups[g]);
    }
  } else {
    groups.emplace_back(full_range(n), full_range(L));
  }

  Rng rng(seed);
  for (auto& [inputs, hidden] : groups) {
    WeightBlock block;
    block.weights = Matrix(inputs.size(), hidden.size());
    for (std::size_t c = 0; c < hidden.size(); ++c) {
      for (std::size_t r = 0; r < inputs.size(); ++r) {
        block.weights(r, c) = draw(rng, distribution);
      }
    }
    for (std::size_t h : hidden) model.biases[h] = draw(rng, distribution);
    block.input_indices = std::move(inputs);
    block.hidden_indices = std::move(hidden);
    model.blocks.push_back(std::move(block));
  }
  return model;
}

Matrix hidden_matrix(const ElmModel& model, const Matrix& x) {
  if (x.cols() != model.input_count) {
    throw ShapeError("hidden_matrix: model has " + std::to_string(model.input_count) +
                     " inputs but data has " + std::to_string(x.cols()) + " features");
  }
  Matrix h(x.rows(), model.hidden_count);
  for (const WeightBlock& block : model.blocks) {
    for (std::size_t j = 0; j < x.rows(); ++j) {
      for (std::size_t c = 0; c < block.hidden_indices.size(); ++c) {
        double acc = 0.0;
        for (std::size_t r = 0; r < block.input_indices.size(); ++r) {
          acc += block.weights(r, c) * x(j, block.input_indices[r]);
        }
        const std::size_t i = block.hidden_indices[c];
        h(j, i) = sigmoid(acc + model.biases[i]);
      }
    }
  }
  return h;
}

ElmModel fit(const ElmModel& model, const Dataset& train, double svd_rtol) {
  if (train.features.rows() != train.targets.rows()) {
    throw ShapeError("fit: " + std::to_string(train.features.rows()) +
                     " feature rows vs " + std::to_string(train.targets.rows()) +
                     " target rows");
  }
  const Matrix h = hidden_matrix(model, train.features);
  ElmModel fitted = model;
  fitted.beta = least_squares_solve(h, train.targets, svd_rtol);
  fitted.output_count = train.targets.cols();
  return fitted;
}

Matrix predict(const ElmModel& model, const Matrix& x) {
  if (!model.beta) {
    throw StateError("predict called on an unfitted model (no output weights)");
  }
  return matmul(hidden_matrix(model, x), *model.beta);
}

std::size_t count_input_hidden_weights(const ElmModel& model) {
  if (!model.partition) return model.input_count * model.hidden_count;
  return model.partition->weight_count();
}

Matrix dense_input_weights(const ElmModel& model) {
  Matrix w(model.input_count, model.hidden_count, 0.0);
  for (const WeightBlock& block : model.blocks) {
    for (std::size_t r = 0; r < block.input_indices.size(); ++r) {
      for (std::size_t c = 0; c < block.hidden_indices.size(); ++c) {
        w(block.input_indices[r], block.hidden_indices[c]) = block.weights(r, c);
      }
    }
  }
  return w;
}

}  // namespace elmlc
