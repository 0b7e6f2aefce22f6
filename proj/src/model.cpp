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

#include "curlab/model.hpp"

#include <cmath>

#include "curlab/error.hpp"
#include "curlab/random.hpp"

namespace curlab {

Architecture Architecture::softmax_regression(int inputs, int classes) {
  Architecture a{{inputs, classes}};
  a.validate();
  return a;
}

Architecture Architecture::mlp(int inputs, std::span<const int> hidden, int classes) {
  Architecture a;
  a.widths.push_back(inputs);
  a.widths.insert(a.widths.end(), hidden.begin(), hidden.end());
  a.widths.push_back(classes);
  a.validate();
  return a;
}

void Architecture::validate() const {
  if (widths.size() < 2) throw InvalidArgument("architecture needs at least one layer");
  for (std::size_t i = 0; i < widths.size(); ++i)
    if (widths[i] < 1)
      throw InvalidArgument("architecture: layer " + std::to_string(i) + " has zero width");
}

ParamSet ParamSet::zeros(const Architecture& arch) {
  arch.validate();
  ParamSet p;
  for (std::size_t l = 0; l < arch.num_layers(); ++l) {
    p.weights.push_back(Matrix::Zero(arch.widths[l], arch.widths[l + 1]));
    p.biases.push_back(Vector::Zero(arch.widths[l + 1]));
  }
  return p;
}

std::size_t ParamSet::num_scalars() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < weights.size(); ++l)
    n += static_cast<std::size_t>(weights[l].size() + biases[l].size());
  return n;
}

bool ParamSet::all_finite() const {
  for (std::size_t l = 0; l < weights.size(); ++l)
    if (!weights[l].allFinite() || !biases[l].allFinite()) return false;
  return true;
}

bool ParamSet::same_shape(const ParamSet& other) const {
  if (weights.size() != other.weights.size() || biases.size() != other.biases.size())
    return false;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    if (weights[l].rows() != other.weights[l].rows() ||
        weights[l].cols() != other.weights[l].cols() ||
        biases[l].size() != other.biases[l].size())
      return false;
  }
  return true;
}

void ParamSet::axpy(double a, const ParamSet& x) {
  if (!same_shape(x)) throw InvalidArgument("parameter shapes disagree");
  for (std::size_t l = 0; l < weights.size(); ++l) {
    weights[l] += a * x.weights[l];
    biases[l] += a * x.biases[l];
  }
}

void ParamSet::scale(double a) {
  for (std::size_t l = 0; l < weights.size(); ++l) {
    weights[l] *= a;
    biases[l] *= a;
  }
}

std::vector<double> ParamSet::flatten() const {
  std::vector<double> out;
  out.reserve(num_scalars());
  for (std::size_t i = 0; i < num_scalars(); ++i) out.push_back(at(i));
  return out;
}

double& ParamSet::at(std::size_t i) {
  for (std::size_t l = 0; l < weights.size(); ++l) {
    auto& w = weights[l];
    auto nw = static_cast<std::size_t>(w.size());
    if (i < nw) {
      auto cols = static_cast<std::size_t>(w.cols());
      return w(static_cast<Eigen::Index>(i / cols), static_cast<Eigen::Index>(i % cols));
    }
    i -= nw;
    auto nb = static_cast<std::size_t>(biases[l].size());
    if (i < nb) return biases[l](static_cast<Eigen::Index>(i));
    i -= nb;
  }
  throw InvalidArgument("parameter index out of range");
}

double ParamSet::at(std::size_t i) const { return const_cast<ParamSet&>(*this).at(i); }

ModelParams init_params(const Architecture& arch, std::uint64_t seed) {
  ModelParams m{arch, ParamSet::zeros(arch)};
  Rng rng(seed);
  for (std::size_t l = 0; l < arch.num_layers(); ++l) {
    double limit = std::sqrt(6.0 / static_cast<double>(arch.widths[l] + arch.widths[l + 1]));
    std::uniform_real_distribution<double> u(-limit, limit);
    Matrix& w = m.values.weights[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = u(rng);
  }
  return m;
}

ModelParams zero_params(const Architecture& arch) { return {arch, ParamSet::zeros(arch)}; }

Vector softmax(const Vector& logits) {
  Vector e = (logits.array() - logits.maxCoeff()).exp();
  return e / e.sum();
}

namespace {

void check_input(const ModelParams& params, Eigen::Index cols) {
  if (cols != params.arch.inputs())
    throw InvalidArgument("input has " + std::to_string(cols) + " features, model expects " +
                          std::to_string(params.arch.inputs()));
}

// Pre-activations per layer for a batch; zs[l] is layer l's output before
// its nonlinearity. The last entry holds the logits.
std::vector<Matrix> forward_batch(const ModelParams& params, const Matrix& x) {
  check_input(params, x.cols());
  std::vector<Matrix> zs;
  zs.reserve(params.arch.num_layers());
  Matrix a = x;
  for (std::size_t l = 0; l < params.arch.num_layers(); ++l) {
    Matrix z = a * params.values.weights[l];
    z.rowwise() += params.values.biases[l].transpose();
    if (l + 1 < params.arch.num_layers()) a = z.cwiseMax(0.0);
    zs.push_back(std::move(z));
  }
  return zs;
}

void softmax_rows(Matrix& z) {
  for (Eigen::Index r = 0; r < z.rows(); ++r) {
    double m = z.row(r).maxCoeff();
    z.row(r) = (z.row(r).array() - m).exp();
    z.row(r) /= z.row(r).sum();
  }
}

}  // namespace

Vector forward_logits(const ModelParams& params, const Vector& x) {
  check_input(params, x.size());
  Vector a = x;
  for (std::size_t l = 0; l < params.arch.num_layers(); ++l) {
    Vector z = params.values.weights[l].transpose() * a + params.values.biases[l];
    a = (l + 1 < params.arch.num_layers()) ? Vector(z.cwiseMax(0.0)) : z;
  }
  return a;
}

Vector forward_probs(const ModelParams& params, const Vector& x) {
  return softmax(forward_logits(params, x));
}

Matrix predict_probs(const ModelParams& params, const Matrix& x) {
  auto zs = forward_batch(params, x);
  Matrix p = std::move(zs.back());
  softmax_rows(p);
  return p;
}

double cross_entropy(const Vector& probs, int target) {
  if (target < 0 || target >= probs.size())
    throw InvalidArgument("cross_entropy: target class out of range");
  return -std::log(std::max(probs(target), kLogClamp));
}

double cross_entropy(const Vector& probs, const Vector& target) {
  if (probs.size() != target.size())
    throw InvalidArgument("cross_entropy: target length does not match probabilities");
  double loss = 0.0;
  for (Eigen::Index k = 0; k < probs.size(); ++k)
    if (target(k) != 0.0) loss -= target(k) * std::log(std::max(probs(k), kLogClamp));
  return loss;
}

Matrix one_hot(std::span<const int> labels, int classes) {
  Matrix y = Matrix::Zero(static_cast<Eigen::Index>(labels.size()), classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= classes)
      throw InvalidArgument("one_hot: label out of range");
    y(static_cast<Eigen::Index>(i), labels[i]) = 1.0;
  }
  return y;
}

LossAndGrad backward(const ModelParams& params, const Matrix& x, const Matrix& targets) {
  if (x.rows() == 0) throw InvalidArgument("backward: empty batch");
  if (targets.rows() != x.rows() || targets.cols() != params.arch.classes())
    throw InvalidArgument("backward: target shape mismatch");
  const std::size_t layers = params.arch.num_layers();
  auto zs = forward_batch(params, x);
  Matrix probs = zs.back();
  softmax_rows(probs);

  const double n = static_cast<double>(x.rows());
  LossAndGrad out;
  for (Eigen::Index r = 0; r < probs.rows(); ++r)
    out.loss += cross_entropy(Vector(probs.row(r).transpose()), Vector(targets.row(r).transpose()));
  out.loss /= n;

  out.grads = ParamSet::zeros(params.arch);
  // The log clamp only engages at probabilities below 1e-12; the analytic
  // softmax/cross-entropy gradient is used unconditionally.
  Matrix delta = (probs - targets) / n;
  for (std::size_t li = layers; li-- > 0;) {
    if (li == 0) {
      out.grads.weights[li].noalias() = x.transpose() * delta;
    } else {
      out.grads.weights[li].noalias() = zs[li - 1].cwiseMax(0.0).transpose() * delta;
    }
    out.grads.biases[li] = delta.colwise().sum().transpose();
    if (li > 0) {
      Matrix upstream = delta * params.values.weights[li].transpose();
      delta = upstream.cwiseProduct((zs[li - 1].array() > 0.0).cast<double>().matrix());
    }
  }
  return out;
}

LossAndGrad backward(const ModelParams& params, const Matrix& x, std::span<const int> labels) {
  return backward(params, x, one_hot(labels, params.arch.classes()));
}

int argmax(const Vector& v) {
  int best = 0;
  for (Eigen::Index k = 1; k < v.size(); ++k)
    if (v(k) > v(best)) best = static_cast<int>(k);
  return best;
}

double error_rate(const ModelParams& params, const Dataset& data) {
  if (data.empty()) return 0.0;
  Matrix p = predict_probs(params, data.features());
  const auto& y = data.labels();
  std::size_t wrong = 0;
  for (Eigen::Index r = 0; r < p.rows(); ++r)
    if (argmax(Vector(p.row(r).transpose())) != y[static_cast<std::size_t>(r)]) ++wrong;
  return static_cast<double>(wrong) / static_cast<double>(data.size());
}

}  // namespace curlab
