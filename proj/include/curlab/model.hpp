// Copyright 2026 The curlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "curlab/data.hpp"

namespace curlab {

/// Layer widths from input to output. Two entries is softmax regression;
/// every interior entry is a rectified hidden layer.
struct Architecture {
  std::vector<int> widths;

  static Architecture softmax_regression(int inputs, int classes);
  static Architecture mlp(int inputs, std::span<const int> hidden, int classes);

  int inputs() const { return widths.front(); }
  int classes() const { return widths.back(); }
  std::size_t num_layers() const { return widths.size() - 1; }
  // Throws InvalidArgument on fewer than two widths or a zero-width layer.
  void validate() const;

  friend bool operator==(const Architecture&, const Architecture&) = default;
};

/// Per-layer dense tensors. Weight l has shape fan_in × fan_out.
/// Used for parameters, gradients, velocities and SWA averages alike.
struct ParamSet {
  std::vector<Matrix> weights;
  std::vector<Vector> biases;

  static ParamSet zeros(const Architecture& arch);

  std::size_t num_scalars() const;
  bool all_finite() const;
  bool same_shape(const ParamSet& other) const;

  // this += a * x
  void axpy(double a, const ParamSet& x);
  void scale(double a);

  // Row-major flattening, weights then biases per layer.
  std::vector<double> flatten() const;
  // Scalar access through the flattened index order.
  double& at(std::size_t flat_index);
  double at(std::size_t flat_index) const;

  friend bool operator==(const ParamSet&, const ParamSet&) = default;
};

struct ModelParams {
  Architecture arch;
  ParamSet values;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// Glorot-uniform weights, zero biases.
ModelParams init_params(const Architecture& arch, std::uint64_t seed);
ModelParams zero_params(const Architecture& arch);

// Max-subtracted exponential normalization.
Vector softmax(const Vector& logits);

Vector forward_logits(const ModelParams& params, const Vector& x);
Vector forward_probs(const ModelParams& params, const Vector& x);
// Row i of the result is the class distribution for row i of `x`.
Matrix predict_probs(const ModelParams& params, const Matrix& x);

inline constexpr double kLogClamp = 1e-12;

double cross_entropy(const Vector& probs, int target);
double cross_entropy(const Vector& probs, const Vector& target);

Matrix one_hot(std::span<const int> labels, int classes);

struct LossAndGrad {
  double loss = 0.0;
  ParamSet grads;
};

// Mean cross-entropy of the batch and its exact gradient. `targets` has one
// (possibly soft) distribution per row.
LossAndGrad backward(const ModelParams& params, const Matrix& x, const Matrix& targets);
LossAndGrad backward(const ModelParams& params, const Matrix& x, std::span<const int> labels);

// Fraction of rows whose argmax class (lowest index on ties) differs from the label.
double error_rate(const ModelParams& params, const Dataset& data);

// Lowest index among maximal entries.
int argmax(const Vector& v);

}  // namespace curlab
