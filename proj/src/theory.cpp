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

#include "curlab/theory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "curlab/error.hpp"
#include "curlab/pacing.hpp"
#include "curlab/random.hpp"

namespace curlab::theory {

double utility(double loss) { return std::exp(-loss); }

double unlabeled_loss(const Vector& current_probs, const Vector& previous_probs) {
  return cross_entropy(current_probs, previous_probs);
}

double unlabeled_loss(const ModelParams& current, const ModelParams& previous, const Vector& x) {
  return unlabeled_loss(forward_probs(current, x), forward_probs(previous, x));
}

double regularized_empirical_loss(std::span<const double> labeled_losses,
                                  std::span<const double> unlabeled_losses) {
  if (labeled_losses.empty() || unlabeled_losses.empty())
    throw InvalidArgument("regularized loss needs labeled and unlabeled terms");
  double a = std::accumulate(labeled_losses.begin(), labeled_losses.end(), 0.0);
  double b = std::accumulate(unlabeled_losses.begin(), unlabeled_losses.end(), 0.0);
  return a / static_cast<double>(labeled_losses.size()) +
         b / static_cast<double>(unlabeled_losses.size());
}

double mean(std::span<const double> v) {
  if (v.empty()) throw InvalidArgument("mean of an empty vector");
  if (std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); })) return v.front();
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double covariance(std::span<const double> u, std::span<const double> p) {
  if (u.size() != p.size()) throw InvalidArgument("covariance: length mismatch");
  const double mu = mean(u), mp = mean(p);
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) s += (u[j] - mu) * (p[j] - mp);
  return s;
}

std::vector<double> pacing_prior(std::span<const double> scores, double mu) {
  if (!(mu >= 0.0 && mu <= 100.0)) throw InvalidArgument("pacing prior: mu outside [0, 100]");
  const std::size_t m = scores.size();
  std::vector<double> prior(m, 0.0);
  if (m == 0) return prior;
  ConfidenceScores cs;
  cs.ids.resize(m);
  std::iota(cs.ids.begin(), cs.ids.end(), SampleId{0});
  cs.values.assign(scores.begin(), scores.end());
  const double w = 1.0 / static_cast<double>(m);
  for (std::size_t pos : select(cs, 100.0 - mu).positions) prior[pos] = w;
  return prior;
}

double IdentitySides::relative_residual() const {
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

IdentitySides covariance_identity(std::span<const double> u, std::span<const double> p) {
  if (u.size() != p.size() || u.empty())
    throw InvalidArgument("covariance identity: vectors must be nonempty and equal length");
  IdentitySides s;
  for (std::size_t j = 0; j < u.size(); ++j) s.lhs += u[j] * p[j];
  s.covariance = covariance(u, p);
  s.mean_term = static_cast<double>(u.size()) * mean(u) * mean(p);
  s.rhs = s.covariance + s.mean_term;
  return s;
}

UtilityGainReport utility_gain_check(std::span<const double> u, std::span<const double> scores,
                                     double mu) {
  if (u.size() != scores.size()) throw InvalidArgument("utility gain: length mismatch");
  auto prior = pacing_prior(scores, mu);
  UtilityGainReport r;
  r.mu = mu;
  r.covariance = covariance(u, prior);
  r.sign = (r.covariance > 0.0) - (r.covariance < 0.0);
  return r;
}

namespace {

std::vector<double> random_entries(std::size_t m, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> decade(-3, 3);
  const double scale = std::pow(10.0, decade(rng));
  std::vector<double> v(m);
  for (auto& x : v) x = unit(rng) < 0.1 ? 0.0 : scale * normal(rng);
  return v;
}

CheckResult identity_check(const CheckOptions& opt, Rng& rng) {
  CheckResult r{"covariance-identity", true, 0.0, kIdentityTolerance, ""};
  std::uniform_int_distribution<std::size_t> size(1, std::max<std::size_t>(1, opt.max_m));
  for (int d = 0; d < opt.draws; ++d) {
    std::size_t m = d == 0 ? std::max<std::size_t>(1, opt.max_m) : size(rng);
    auto u = random_entries(m, rng);
    auto p = random_entries(m, rng);
    IdentitySides s = covariance_identity(u, p);
    if (opt.inject_fault) s.rhs += 1e-3 * std::max(1.0, std::abs(s.lhs));
    r.residual = std::max(r.residual, s.relative_residual());
  }
  r.passed = r.residual <= r.tolerance;
  return r;
}

CheckResult constant_prior_check(const CheckOptions& opt, Rng& rng) {
  CheckResult r{"constant-prior-covariance", true, 0.0, 0.0, ""};
  std::uniform_int_distribution<std::size_t> size(1, std::max<std::size_t>(1, opt.max_m / 10));
  std::uniform_real_distribution<double> level(-1.0, 1.0);
  const int draws = std::max(1, opt.draws / 5);
  for (int d = 0; d < draws; ++d) {
    std::size_t m = size(rng);
    auto u = random_entries(m, rng);
    std::vector<double> p(m, level(rng));
    r.residual = std::max(r.residual, std::abs(covariance(u, p)));
    // The uniform top-100% prior is the constant 1/M.
    r.residual = std::max(r.residual, std::abs(utility_gain_check(u, u, 100.0).covariance));
  }
  r.passed = r.residual == 0.0;
  return r;
}

CheckResult compact_form_check(const CheckOptions& opt, Rng& rng) {
  // With the uniform prior (mean 1/M) the decomposition collapses to
  // sum u p = mean(u) + Cov.
  CheckResult r{"uniform-prior-compact-form", true, 0.0, kIdentityTolerance, ""};
  std::uniform_int_distribution<std::size_t> size(1, std::max<std::size_t>(1, opt.max_m / 10));
  const int draws = std::max(1, opt.draws / 5);
  for (int d = 0; d < draws; ++d) {
    std::size_t m = size(rng);
    auto u = random_entries(m, rng);
    auto prior = pacing_prior(u, 100.0);
    double lhs = 0.0;
    for (std::size_t j = 0; j < m; ++j) lhs += u[j] * prior[j];
    double rhs = mean(u) + covariance(u, prior);
    r.residual = std::max(r.residual, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  r.passed = r.residual <= r.tolerance;
  return r;
}

CheckResult gain_sign_check(const CheckOptions& opt, Rng& rng) {
  CheckResult r{"utility-gain-sign", true, 0.0, 0.0, ""};
  std::uniform_int_distribution<std::size_t> size(2, 500);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int draws = std::max(1, opt.draws / 10);
  int violations = 0;
  for (int d = 0; d < draws; ++d) {
    std::size_t m = size(rng);
    std::vector<double> u(m), neg(m);
    for (std::size_t j = 0; j < m; ++j) {
      u[j] = std::exp(-3.0 * unit(rng));  // utilities in (0, 1]
      neg[j] = -u[j];
    }
    for (int mu = 5; mu < 100; mu += 5) {
      // Prior on the top-mu by utility itself, then on the bottom-mu.
      double top = utility_gain_check(u, u, mu).covariance;
      double bottom = utility_gain_check(u, neg, mu).covariance;
      double slack = 1e-12;
      if (top < -slack) ++violations, r.residual = std::max(r.residual, -top);
      if (bottom > slack) ++violations, r.residual = std::max(r.residual, bottom);
    }
  }
  r.passed = violations == 0;
  r.detail = std::to_string(violations) + " sign violations";
  return r;
}

CheckResult prior_support_check(const CheckOptions& opt, Rng& rng) {
  CheckResult r{"prior-matches-selection", true, 0.0, 0.0, ""};
  std::uniform_int_distribution<std::size_t> size(1, 2000);
  std::uniform_int_distribution<int> level(1, 50);
  const int draws = std::max(1, opt.draws / 10);
  int mismatches = 0;
  for (int d = 0; d < draws; ++d) {
    std::size_t m = size(rng);
    ConfidenceScores cs;
    for (std::size_t j = 0; j < m; ++j) {
      cs.ids.push_back(j);
      cs.values.push_back(level(rng) / 50.0);  // coarse grid forces ties
    }
    for (double t_r : {80.0, 60.0, 40.0, 20.0, 0.0}) {
      auto prior = pacing_prior(cs.values, 100.0 - t_r);
      auto sel = select(cs, t_r);
      std::vector<std::size_t> support;
      for (std::size_t j = 0; j < m; ++j)
        if (prior[j] > 0.0) support.push_back(j);
      if (support != sel.positions) ++mismatches;
    }
  }
  r.passed = mismatches == 0;
  r.residual = mismatches;
  r.detail = std::to_string(mismatches) + " mismatched supports";
  return r;
}

CheckResult argmin_check(const CheckOptions& opt, Rng& rng) {
  CheckResult r{"argmin-loss-is-argmax-utility", true, 0.0, 0.0, ""};
  std::exponential_distribution<double> loss(1.0);
  const int draws = std::max(1, opt.draws / 10);
  int mismatches = 0;
  for (int d = 0; d < draws; ++d) {
    std::vector<double> objective;
    for (int c = 0; c < 16; ++c) {
      std::vector<double> a(8), b(8);
      for (auto& v : a) v = loss(rng);
      for (auto& v : b) v = loss(rng);
      objective.push_back(regularized_empirical_loss(a, b));
    }
    auto lo = std::min_element(objective.begin(), objective.end()) - objective.begin();
    std::vector<double> util;
    for (double o : objective) util.push_back(utility(o));
    auto hi = std::max_element(util.begin(), util.end()) - util.begin();
    if (lo != hi) ++mismatches;
  }
  r.passed = mismatches == 0;
  r.residual = mismatches;
  return r;
}

}  // namespace

std::vector<CheckResult> run_checks(const CheckOptions& options) {
  if (options.draws < 1) throw InvalidArgument("theory checks need at least one draw");
  Rng rng(derive_seed(options.seed, Stream::kTheory));
  std::vector<CheckResult> out;
  out.push_back(identity_check(options, rng));
  out.push_back(constant_prior_check(options, rng));
  out.push_back(compact_form_check(options, rng));
  out.push_back(gain_sign_check(options, rng));
  out.push_back(prior_support_check(options, rng));
  out.push_back(argmin_check(options, rng));
  return out;
}

namespace {

// Compact exponent form: 1e-9 rather than 1e-09.
std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  std::string s = buf;
  auto e = s.find('e');
  if (e == std::string::npos) return s;
  std::size_t digits = e + 2;
  while (digits + 1 < s.size() && s[digits] == '0') s.erase(digits, 1);
  if (s[e + 1] == '+') s.erase(e + 1, 1);
  return s;
}

}  // namespace

std::string format_report(const std::vector<CheckResult>& results) {
  std::string out;
  for (const auto& r : results) {
    out += r.name + ": " + (r.passed ? "PASS" : "FAIL") + " (max residual " +
           (r.passed ? "≤ " : "> ") + short_num(r.tolerance) + "; observed " +
           short_num(r.residual) + ")";
    if (!r.detail.empty()) out += " " + r.detail;
    out += '\n';
  }
  return out;
}

}  // namespace curlab::theory
