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

#include "curlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <numbers>
#include <random>
#include <thread>
#include <unordered_map>

#include "curlab/error.hpp"
#include "curlab/random.hpp"

namespace curlab {

Dataset gen_two_moons(const TwoMoonsSpec& spec) {
  if (spec.n_per_moon < 1) throw InvalidArgument("two moons: n_per_moon must be >= 1");
  if (spec.labeled_per_class < 1 || spec.labeled_per_class > spec.n_per_moon)
    throw InvalidArgument("two moons: labeled_per_class must lie in [1, n_per_moon]");
  if (!(spec.noise >= 0.0)) throw InvalidArgument("two moons: noise must be >= 0");

  Rng rng(derive_seed(spec.seed, Stream::kData));
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::normal_distribution<double> noise(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(spec.n_per_moon);
  Matrix x(2 * n, 2);
  std::vector<int> y(static_cast<std::size_t>(2 * n));
  for (int cls = 0; cls < 2; ++cls) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double t = angle(rng);
      const Eigen::Index row = cls * n + i;
      if (cls == 0) {
        x(row, 0) = std::cos(t);
        x(row, 1) = std::sin(t);
      } else {
        x(row, 0) = 1.0 - std::cos(t);
        x(row, 1) = 0.5 - std::sin(t);
      }
      y[static_cast<std::size_t>(row)] = cls;
    }
  }
  if (spec.noise > 0.0)
    for (Eigen::Index r = 0; r < x.rows(); ++r)
      for (Eigen::Index c = 0; c < 2; ++c) x(r, c) += spec.noise * noise(rng);
  return Dataset::from_rows(std::move(x), std::move(y), 2);
}

SslSplit make_two_moons_split(const TwoMoonsSpec& spec, std::size_t n_val, std::size_t n_test,
                              bool standardize_features) {
  SslSplit split =
      split_ssl(gen_two_moons(spec), 2 * spec.labeled_per_class, n_val, n_test, spec.seed);
  if (standardize_features) return standardize(split).split;
  return split;
}

void OverlapSpec::validate() const {
  if (id_classes < 2) throw InvalidArgument("overlap: id_classes must be >= 2");
  if (unlabeled_classes < 1 || unlabeled_classes > id_classes)
    throw InvalidArgument("overlap: unlabeled_classes must lie in [1, id_classes]");
  if (std::find(std::begin(kMismatchGrid), std::end(kMismatchGrid), mismatch_percent) ==
      std::end(kMismatchGrid))
    throw InvalidArgument("overlap: mismatch must be one of 0, 25, 50, 75, 100");
  if (labeled_per_class < 1 || unlabeled_per_class < 1 || val_per_class < 1 || test_per_class < 1)
    throw InvalidArgument("overlap: per-class counts must be >= 1");
  if (!(radius > 0.0) || !(spread > 0.0))
    throw InvalidArgument("overlap: radius and spread must be positive");
}

namespace {

int ood_source_classes(const OverlapSpec& spec) {
  return static_cast<int>(std::lround(spec.mismatch_percent / 100.0 * spec.unlabeled_classes));
}

// OOD blobs sit halfway between neighbouring in-distribution means, spread
// around the circle rather than clustered.
int ood_slot(int j, int id_classes) {
  const int evens = (id_classes + 1) / 2;
  return j < evens ? 2 * j : 2 * (j - evens) + 1;
}

void draw_blob(Matrix& x, Eigen::Index first, std::size_t count, double cx, double cy,
               double spread, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, spread);
  for (std::size_t i = 0; i < count; ++i) {
    const auto r = first + static_cast<Eigen::Index>(i);
    x(r, 0) = cx + normal(rng);
    x(r, 1) = cy + normal(rng);
  }
}

}  // namespace

SslSplit gen_overlap_pool(const OverlapSpec& spec) {
  spec.validate();
  const int k = spec.id_classes;
  const double step = 2.0 * std::numbers::pi / k;
  auto id_mean = [&](int c) {
    return std::pair{spec.radius * std::cos(step * c), spec.radius * std::sin(step * c)};
  };
  auto ood_mean = [&](int j) {
    const double a = step * (ood_slot(j, k) + 0.5);
    return std::pair{spec.radius * std::cos(a), spec.radius * std::sin(a)};
  };

  // Labeled, validation and test come from one stream per class, so they
  // are identical for every mismatch level of a seed.
  const std::size_t per_id = spec.labeled_per_class + spec.val_per_class + spec.test_per_class;
  Matrix id_x(static_cast<Eigen::Index>(per_id) * k, 2);
  for (int c = 0; c < k; ++c) {
    auto [cx, cy] = id_mean(c);
    draw_blob(id_x, static_cast<Eigen::Index>(per_id) * c, per_id, cx, cy, spec.spread,
              derive_seed(spec.seed, Stream::kData, {0, static_cast<std::uint64_t>(c)}));
  }

  const int n_ood = ood_source_classes(spec);
  const int n_id_pool = spec.unlabeled_classes - n_ood;
  const std::size_t pool_n = spec.unlabeled_per_class * static_cast<std::size_t>(spec.unlabeled_classes);
  Matrix pool_x(static_cast<Eigen::Index>(pool_n), 2);
  std::vector<int> oracle;
  oracle.reserve(pool_n);
  for (int s = 0; s < spec.unlabeled_classes; ++s) {
    const auto first = static_cast<Eigen::Index>(spec.unlabeled_per_class) * s;
    if (s < n_id_pool) {
      auto [cx, cy] = id_mean(s);
      draw_blob(pool_x, first, spec.unlabeled_per_class, cx, cy, spec.spread,
                derive_seed(spec.seed, Stream::kData, {1, static_cast<std::uint64_t>(s)}));
      oracle.insert(oracle.end(), spec.unlabeled_per_class, s);
    } else {
      const int j = s - n_id_pool;
      auto [cx, cy] = ood_mean(j);
      draw_blob(pool_x, first, spec.unlabeled_per_class, cx, cy, spec.spread,
                derive_seed(spec.seed, Stream::kData, {2, static_cast<std::uint64_t>(j)}));
      oracle.insert(oracle.end(), spec.unlabeled_per_class, -1);
    }
  }

  auto take = [&](std::size_t offset, std::size_t count, SampleId& next_id) {
    Matrix x(static_cast<Eigen::Index>(count) * k, 2);
    std::vector<int> y;
    std::vector<SampleId> ids;
    for (int c = 0; c < k; ++c) {
      x.middleRows(static_cast<Eigen::Index>(count) * c, static_cast<Eigen::Index>(count)) =
          id_x.middleRows(static_cast<Eigen::Index>(per_id * c + offset),
                          static_cast<Eigen::Index>(count));
      y.insert(y.end(), count, c);
    }
    for (Eigen::Index r = 0; r < x.rows(); ++r) ids.push_back(next_id++);
    return Dataset(std::move(x), std::move(ids), std::move(y), k);
  };
  SampleId next = 0;
  Dataset labeled = take(0, spec.labeled_per_class, next);
  Dataset val = take(spec.labeled_per_class, spec.val_per_class, next);
  Dataset test = take(spec.labeled_per_class + spec.val_per_class, spec.test_per_class, next);
  std::vector<SampleId> pool_ids(pool_n);
  for (auto& id : pool_ids) id = next++;
  Dataset pool(std::move(pool_x), std::move(pool_ids), std::nullopt, k);
  return SslSplit(std::move(labeled), std::move(pool), std::move(oracle), std::move(val),
                  std::move(test));
}

std::uint64_t repetition_seed(std::uint64_t study_seed, int repetition) {
  return derive_seed(study_seed, Stream::kRepetition, {static_cast<std::uint64_t>(repetition)});
}

std::string to_string(Method m) {
  switch (m) {
    case Method::kCurriculum: return "curriculum";
    case Method::kVanillaPl: return "vanilla-pl";
    case Method::kSupervised: return "supervised";
  }
  return "?";
}

const Series& StudyOutput::find(const std::string& method, double param, int round) const {
  for (const auto& s : series)
    if (s.method == method && s.param == param && s.round == round) return s;
  throw InvalidArgument("no series for method " + method);
}

namespace {

// Runs fn(i) for i in [0, n) on up to `jobs` threads. The exception of the
// lowest failing index is rethrown.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  auto guarded = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) guarded(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, n); ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) guarded(i);
      });
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void check_options(const StudyOptions& options) {
  if (options.repetitions < 1) throw InvalidArgument("study needs at least one repetition");
  if (options.vanilla_rounds < 1) throw InvalidArgument("vanilla_rounds must be >= 1");
  options.config.validate();
}

CurriculumConfig config_for(const StudyOptions& options, int repetition) {
  CurriculumConfig cfg = options.config;
  cfg.pacing.mode = PacingMode::kPercentile;
  cfg.seed = repetition_seed(options.config.seed, repetition);
  return cfg;
}

CurriculumResult run_method(Method m, const SslSplit& split, const CurriculumConfig& cfg,
                            double tau, int vanilla_rounds) {
  switch (m) {
    case Method::kCurriculum: return run_curriculum(split, cfg);
    case Method::kVanillaPl: return run_vanilla_pl(split, cfg, tau, vanilla_rounds);
    case Method::kSupervised: return run_supervised(split, cfg);
  }
  throw InvalidArgument("unknown method");
}

struct CellResult {
  std::vector<RoundRecord> rounds;
  double final_error = 0.0;
};

CellResult summarize(const CurriculumResult& r) { return {r.rounds, r.final_test_error}; }

void append_trace(StudyOutput& out, const CellResult& cell, const Context& context) {
  for (const auto& rec : cell.rounds) out.trace.push_back(round_to_json(rec, context));
}

}  // namespace

StudyOutput run_overlap_study(const OverlapSpec& base, std::span<const double> mismatch_grid,
                              std::span<const Method> methods, const StudyOptions& options) {
  check_options(options);
  if (mismatch_grid.empty() || methods.empty())
    throw InvalidArgument("overlap study needs a mismatch grid and at least one method");
  for (double m : mismatch_grid) {
    OverlapSpec s = base;
    s.mismatch_percent = m;
    s.validate();
  }
  const std::size_t n_grid = mismatch_grid.size(), n_methods = methods.size();
  const auto reps = static_cast<std::size_t>(options.repetitions);
  std::vector<CellResult> cells(n_grid * n_methods * reps);
  auto index = [&](std::size_t g, std::size_t m, std::size_t r) {
    return (g * n_methods + m) * reps + r;
  };
  parallel_for(n_grid * reps, options.jobs, [&](std::size_t job) {
    const std::size_t g = job / reps, r = job % reps;
    OverlapSpec spec = base;
    spec.mismatch_percent = mismatch_grid[g];
    spec.seed = repetition_seed(base.seed, static_cast<int>(r));
    const SslSplit split = gen_overlap_pool(spec);
    const CurriculumConfig cfg = config_for(options, static_cast<int>(r));
    for (std::size_t m = 0; m < n_methods; ++m)
      cells[index(g, m, r)] = summarize(
          run_method(methods[m], split, cfg, options.vanilla_tau, options.vanilla_rounds));
  });

  StudyOutput out;
  out.table.title = "overlap";
  out.table.columns = {"method", "mismatch_pct", "test_error_mean", "test_error_std", "n"};
  for (std::size_t m = 0; m < n_methods; ++m) {
    for (std::size_t g = 0; g < n_grid; ++g) {
      Series s{to_string(methods[m]), mismatch_grid[g], -1, {}};
      for (std::size_t r = 0; r < reps; ++r) s.errors.push_back(cells[index(g, m, r)].final_error);
      out.table.add_row({s.method, mismatch_grid[g], mean_of(s.errors), stdev_of(s.errors),
                         static_cast<std::int64_t>(reps)});
      out.series.push_back(std::move(s));
    }
  }
  for (std::size_t g = 0; g < n_grid; ++g)
    for (std::size_t m = 0; m < n_methods; ++m)
      for (std::size_t r = 0; r < reps; ++r)
        append_trace(out, cells[index(g, m, r)],
                     {{"study", std::string("overlap")},
                      {"method", to_string(methods[m])},
                      {"mismatch_pct", mismatch_grid[g]},
                      {"repetition", static_cast<std::int64_t>(r)}});
  return out;
}

StudyOutput run_label_sweep(const TwoMoonsSpec& base, const SweepSpec& sweep, std::size_t n_val,
                            std::size_t n_test, bool standardize_features,
                            const StudyOptions& options) {
  check_options(options);
  if (sweep.labeled_per_class.empty()) throw InvalidArgument("label sweep needs sizes");
  for (std::size_t i = 0; i < sweep.labeled_per_class.size(); ++i) {
    if (sweep.labeled_per_class[i] < 1) throw InvalidArgument("label sweep sizes must be >= 1");
    if (i && sweep.labeled_per_class[i] <= sweep.labeled_per_class[i - 1])
      throw InvalidArgument("label sweep sizes must be increasing");
  }
  const Method methods[] = {Method::kCurriculum, Method::kSupervised};
  const std::size_t n_sizes = sweep.labeled_per_class.size();
  const auto reps = static_cast<std::size_t>(options.repetitions);
  std::vector<CellResult> cells(n_sizes * 2 * reps);
  auto index = [&](std::size_t s, std::size_t m, std::size_t r) { return (s * 2 + m) * reps + r; };
  parallel_for(n_sizes * reps, options.jobs, [&](std::size_t job) {
    const std::size_t s = job / reps, r = job % reps;
    TwoMoonsSpec spec = base;
    spec.labeled_per_class = sweep.labeled_per_class[s];
    spec.seed = repetition_seed(base.seed, static_cast<int>(r));
    const SslSplit split = make_two_moons_split(spec, n_val, n_test, standardize_features);
    const CurriculumConfig cfg = config_for(options, static_cast<int>(r));
    for (std::size_t m = 0; m < 2; ++m)
      cells[index(s, m, r)] = summarize(run_method(methods[m], split, cfg, 0.0, 1));
  });

  StudyOutput out;
  out.table.title = "label-sweep";
  out.table.columns = {"labeled_per_class", "method", "test_error_mean", "test_error_std", "n"};
  for (std::size_t s = 0; s < n_sizes; ++s) {
    for (std::size_t m = 0; m < 2; ++m) {
      const auto size = static_cast<double>(sweep.labeled_per_class[s]);
      Series series{to_string(methods[m]), size, -1, {}};
      for (std::size_t r = 0; r < reps; ++r)
        series.errors.push_back(cells[index(s, m, r)].final_error);
      out.table.add_row({static_cast<std::int64_t>(sweep.labeled_per_class[s]), series.method,
                         mean_of(series.errors), stdev_of(series.errors),
                         static_cast<std::int64_t>(reps)});
      out.series.push_back(std::move(series));
      for (std::size_t r = 0; r < reps; ++r)
        append_trace(out, cells[index(s, m, r)],
                     {{"study", std::string("label-sweep")},
                      {"method", to_string(methods[m])},
                      {"labeled_per_class", static_cast<std::int64_t>(sweep.labeled_per_class[s])},
                      {"repetition", static_cast<std::int64_t>(r)}});
    }
  }
  return out;
}

StudyOutput run_threshold_ablation(const SplitFactory& make_split, std::span<const double> taus,
                                   const StudyOptions& options) {
  check_options(options);
  if (taus.empty()) throw InvalidArgument("threshold ablation needs at least one tau");
  for (double tau : taus)
    if (!(tau >= 0.0 && tau < 1.0)) throw InvalidArgument("tau must lie in [0, 1)");
  // Column n_taus is the curriculum run.
  const std::size_t n_rows = taus.size() + 1;
  const auto reps = static_cast<std::size_t>(options.repetitions);
  std::vector<CellResult> cells(n_rows * reps);
  parallel_for(reps, options.jobs, [&](std::size_t r) {
    const SslSplit split = make_split(static_cast<int>(r));
    const CurriculumConfig cfg = config_for(options, static_cast<int>(r));
    for (std::size_t i = 0; i < taus.size(); ++i)
      cells[i * reps + r] = summarize(
          run_method(Method::kVanillaPl, split, cfg, taus[i], options.vanilla_rounds));
    cells[taus.size() * reps + r] =
        summarize(run_method(Method::kCurriculum, split, cfg, 0.0, 1));
  });

  StudyOutput out;
  out.table.title = "threshold-ablation";
  out.table.columns = {"method", "tau", "test_error_mean", "test_error_std", "n"};
  for (std::size_t i = 0; i < n_rows; ++i) {
    const bool cl = i == taus.size();
    const Method m = cl ? Method::kCurriculum : Method::kVanillaPl;
    const double tau = cl ? 0.0 : taus[i];
    Series s{to_string(m), tau, -1, {}};
    for (std::size_t r = 0; r < reps; ++r) s.errors.push_back(cells[i * reps + r].final_error);
    Cell tau_cell = cl ? Cell{} : Cell{tau};
    out.table.add_row({s.method, tau_cell, mean_of(s.errors), stdev_of(s.errors),
                       static_cast<std::int64_t>(reps)});
    out.series.push_back(std::move(s));
    for (std::size_t r = 0; r < reps; ++r)
      append_trace(out, cells[i * reps + r],
                   {{"study", std::string("threshold-ablation")},
                    {"method", to_string(m)},
                    {"tau", tau_cell},
                    {"repetition", static_cast<std::int64_t>(r)}});
  }
  return out;
}

StudyOutput run_reinit_ablation(const SplitFactory& make_split, const StudyOptions& options) {
  check_options(options);
  const ReinitPolicy policies[] = {ReinitPolicy::kReinit, ReinitPolicy::kFinetune};
  const auto reps = static_cast<std::size_t>(options.repetitions);
  std::vector<CellResult> cells(2 * reps);
  parallel_for(reps, options.jobs, [&](std::size_t r) {
    const SslSplit split = make_split(static_cast<int>(r));
    for (std::size_t p = 0; p < 2; ++p) {
      CurriculumConfig cfg = config_for(options, static_cast<int>(r));
      cfg.reinit = policies[p];
      cells[p * reps + r] = summarize(run_curriculum(split, cfg));
    }
  });

  StudyOutput out;
  out.table.title = "reinit-ablation";
  out.table.columns = {"round", "T_r", "reinit_mean", "reinit_std", "finetune_mean",
                       "finetune_std"};
  const std::size_t n_rounds = cells[0].rounds.size();
  for (std::size_t t = 0; t < n_rounds; ++t) {
    std::vector<Cell> row{static_cast<std::int64_t>(t)};
    const auto& pct = cells[0].rounds[t].percentile;
    row.push_back(pct ? Cell{*pct} : Cell{});
    for (std::size_t p = 0; p < 2; ++p) {
      Series s{to_string(policies[p]), 0.0, static_cast<int>(t), {}};
      for (std::size_t r = 0; r < reps; ++r)
        s.errors.push_back(cells[p * reps + r].rounds[t].test_error);
      row.push_back(mean_of(s.errors));
      row.push_back(stdev_of(s.errors));
      out.series.push_back(std::move(s));
    }
    out.table.add_row(std::move(row));
  }
  for (std::size_t p = 0; p < 2; ++p) {
    Series s{to_string(policies[p]), 0.0, -1, {}};
    for (std::size_t r = 0; r < reps; ++r) s.errors.push_back(cells[p * reps + r].final_error);
    out.series.push_back(std::move(s));
    for (std::size_t r = 0; r < reps; ++r)
      append_trace(out, cells[p * reps + r],
                   {{"study", std::string("reinit-ablation")},
                    {"policy", to_string(policies[p])},
                    {"repetition", static_cast<std::int64_t>(r)}});
  }
  return out;
}

Bounds bounds_of(std::span<const Matrix* const> parts, double margin) {
  Bounds b;
  bool any = false;
  for (const Matrix* m : parts) {
    if (!m || m->rows() == 0) continue;
    if (m->cols() != 2) throw InvalidArgument("plot bounds need two-feature data");
    const double x0 = m->col(0).minCoeff(), x1 = m->col(0).maxCoeff();
    const double y0 = m->col(1).minCoeff(), y1 = m->col(1).maxCoeff();
    if (!any) {
      b = {x0, x1, y0, y1};
      any = true;
    } else {
      b = {std::min(b.x_min, x0), std::max(b.x_max, x1), std::min(b.y_min, y0),
           std::max(b.y_max, y1)};
    }
  }
  if (!any) return Bounds{};
  return {b.x_min - margin, b.x_max + margin, b.y_min - margin, b.y_max + margin};
}

std::pair<double, double> BoundaryGrid::cell_center(int row, int col) const {
  const double dx = (bounds.x_max - bounds.x_min) / resolution;
  const double dy = (bounds.y_max - bounds.y_min) / resolution;
  return {bounds.x_min + (col + 0.5) * dx, bounds.y_max - (row + 0.5) * dy};
}

namespace {

void check_plot_args(const ModelParams& model, const Bounds& bounds, int resolution) {
  if (model.arch.inputs() != 2)
    throw InvalidArgument("decision boundary plots need a two-feature model, got " +
                          std::to_string(model.arch.inputs()));
  if (resolution < 1) throw InvalidArgument("plot resolution must be >= 1");
  if (!(bounds.x_max > bounds.x_min) || !(bounds.y_max > bounds.y_min))
    throw InvalidArgument("plot bounds are empty");
}

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

const char* color(int cls) { return kPalette[static_cast<std::size_t>(cls) % 10]; }

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

}  // namespace

BoundaryGrid boundary_grid(const ModelParams& model, const Bounds& bounds, int resolution) {
  check_plot_args(model, bounds, resolution);
  BoundaryGrid g{bounds, resolution, {}};
  g.cls.resize(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));
  Vector x(2);
  for (int row = 0; row < resolution; ++row)
    for (int col = 0; col < resolution; ++col) {
      auto [cx, cy] = g.cell_center(row, col);
      x << cx, cy;
      g.cls[static_cast<std::size_t>(row) * resolution + col] = pseudo_label(model, x).predicted_class;
    }
  return g;
}

std::string export_boundary_svg(const ModelParams& model, const Bounds& bounds, int resolution,
                                const BoundaryAnnotations& ann) {
  const BoundaryGrid grid = boundary_grid(model, bounds, resolution);
  const double size = 600.0;
  const double cell = size / resolution;
  auto px = [&](double x) { return (x - bounds.x_min) / (bounds.x_max - bounds.x_min) * size; };
  auto py = [&](double y) { return (bounds.y_max - y) / (bounds.y_max - bounds.y_min) * size; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += fmt("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
             "viewBox=\"0 0 %.0f %.0f\">\n",
             size, size + 24, size, size + 24);
  svg += "<title>" + escape_xml(ann.title) + "</title>\n";
  svg += "<g id=\"regions\" opacity=\"0.25\" shape-rendering=\"crispEdges\">\n";
  for (int row = 0; row < resolution; ++row) {
    int col = 0;
    while (col < resolution) {
      const int cls = grid.cls[static_cast<std::size_t>(row) * resolution + col];
      int end = col + 1;
      while (end < resolution && grid.cls[static_cast<std::size_t>(row) * resolution + end] == cls)
        ++end;
      svg += fmt("<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\"", col * cell,
                 row * cell, (end - col) * cell, cell);
      svg += " fill=\"" + std::string(color(cls)) + "\" data-class=\"" + std::to_string(cls) +
             "\"/>\n";
      col = end;
    }
  }
  svg += "</g>\n<g id=\"unlabeled\" fill=\"#9e9e9e\" opacity=\"0.6\">\n";
  for (const auto& p : ann.unlabeled)
    svg += fmt("<circle cx=\"%.3f\" cy=\"%.3f\" r=\"2\"/>\n", px(p.x), py(p.y));
  svg += "</g>\n<g id=\"pseudo-labeled\">\n";
  for (const auto& p : ann.pseudo_labeled)
    svg += fmt("<circle cx=\"%.3f\" cy=\"%.3f\" r=\"2.5\"", px(p.x), py(p.y)) + " fill=\"" +
           color(p.cls) + "\"/>\n";
  svg += "</g>\n<g id=\"labeled\" stroke=\"#000000\" stroke-width=\"1.2\">\n";
  for (const auto& p : ann.labeled) {
    const double x = px(p.x), y = py(p.y);
    const std::string fill = std::string(" fill=\"") + color(p.cls) + "\"/>\n";
    switch (p.cls % 3) {
      case 0: svg += fmt("<rect x=\"%.3f\" y=\"%.3f\" width=\"9\" height=\"9\"", x - 4.5, y - 4.5) + fill; break;
      case 1:
        svg += fmt("<polygon points=\"%.3f,%.3f %.3f,%.3f", x, y - 6, x + 5.5, y + 4.5) +
               fmt(" %.3f,%.3f\"", x - 5.5, y + 4.5) + fill;
        break;
      default:
        svg += fmt("<polygon points=\"%.3f,%.3f %.3f,%.3f", x, y - 6, x + 6, y) +
               fmt(" %.3f,%.3f %.3f,%.3f\"", x, y + 6, x - 6, y) + fill;
    }
  }
  svg += "</g>\n";
  svg += fmt("<text x=\"8\" y=\"%.0f\" font-family=\"sans-serif\" font-size=\"14\">", size + 17) +
         escape_xml(ann.title) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

BoundaryAnnotations annotate(const SslSplit& split, const RoundRecord& round) {
  if (split.num_features() != 2)
    throw InvalidArgument("annotate: plots need exactly two features, got " +
                          std::to_string(split.num_features()));
  BoundaryAnnotations a;
  const Matrix& lx = split.labeled().features();
  const auto& ly = split.labeled().labels();
  for (Eigen::Index r = 0; r < lx.rows(); ++r)
    a.labeled.push_back({lx(r, 0), lx(r, 1), ly[static_cast<std::size_t>(r)]});

  std::unordered_map<SampleId, int> pseudo;
  for (const auto& rec : round.pseudo_labels) pseudo.emplace(rec.sample_id, rec.predicted_class);
  const Dataset& pool = split.unlabeled();
  for (std::size_t r = 0; r < pool.size(); ++r) {
    const auto row = static_cast<Eigen::Index>(r);
    PlotPoint p{pool.features()(row, 0), pool.features()(row, 1), -1};
    if (auto it = pseudo.find(pool.ids()[r]); it != pseudo.end()) {
      p.cls = it->second;
      a.pseudo_labeled.push_back(p);
    } else {
      a.unlabeled.push_back(p);
    }
  }
  a.title = "round " + std::to_string(round.round);
  if (round.percentile) a.title += fmt(", T_r = %g", *round.percentile);
  a.title += fmt(", test error %.4f", round.test_error);
  return a;
}

}  // namespace curlab
