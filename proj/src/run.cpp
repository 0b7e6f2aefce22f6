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

#include "curlab/run.hpp"

#include <algorithm>
#include <fstream>

#include "curlab/checkpoint.hpp"
#include "curlab/error.hpp"

namespace curlab {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

fs::path prepare_dir(const RunConfig& config, const std::string& study) {
  fs::path dir = fs::path(config.output_dir) / study / config_hash(config);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  // Drop round artifacts of an earlier run with a different round count.
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.starts_with("round_") || name.starts_with("checkpoint_round_")) fs::remove(entry.path());
  }
  write_file(dir / "config.toml", canonical_text(config));
  return dir;
}

StudyOptions study_options(const RunConfig& config, int jobs) {
  StudyOptions o;
  o.config = config.curriculum;
  o.repetitions = config.study.repetitions;
  o.jobs = jobs;
  o.vanilla_rounds = config.vanilla_rounds;
  o.vanilla_tau = config.study.vanilla_tau;
  return o;
}

Table round_table(const std::vector<RoundRecord>& rounds) {
  Table t;
  t.title = "rounds";
  t.columns = {"round", "T_r", "threshold", "n_selected", "n_departed", "train_size",
               "val_error", "test_error", "pseudo_label_accuracy"};
  for (const auto& r : rounds) {
    auto opt = [](const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; };
    t.add_row({static_cast<std::int64_t>(r.round), opt(r.percentile), opt(r.threshold),
               static_cast<std::int64_t>(r.selected.size()),
               static_cast<std::int64_t>(r.n_departed), static_cast<std::int64_t>(r.train_size),
               r.val_error, r.test_error, opt(r.pseudo_label_accuracy)});
  }
  return t;
}

}  // namespace

SslSplit make_split(const RunConfig& config, std::uint64_t data_seed) {
  SslSplit split;
  switch (config.data.source) {
    case DataSource::kTwoMoons: {
      TwoMoonsSpec spec;
      spec.n_per_moon = config.data.n_per_moon;
      spec.noise = config.data.noise;
      spec.labeled_per_class = std::max<std::size_t>(1, config.split.n_labeled / 2);
      spec.seed = data_seed;
      split = split_ssl(gen_two_moons(spec), config.split.n_labeled, config.split.n_val,
                        config.split.n_test, data_seed);
      break;
    }
    case DataSource::kOverlap: {
      OverlapSpec spec = config.overlap;
      spec.seed = data_seed;
      split = gen_overlap_pool(spec);
      break;
    }
    case DataSource::kCsv: {
      CsvSchema schema{config.data.label_column, config.data.feature_columns, std::nullopt};
      CsvData csv = load_csv(config.data.csv_path, schema);
      if (!csv.dataset.has_labels())
        throw ConfigError("data.label_column", "csv data needs a label column");
      split = split_ssl(csv.dataset, config.split.n_labeled, config.split.n_val,
                        config.split.n_test, data_seed);
      break;
    }
  }
  if (config.data.standardize) return standardize(split).split;
  return split;
}

RunArtifacts run_train(const RunConfig& config) {
  config.validate();
  const SslSplit split = make_split(config, config.seed);
  RunArtifacts art;
  art.dir = prepare_dir(config, "train");
  const std::string hash = config_hash(config);

  const bool plots = config.output.boundary_plots && split.num_features() == 2;
  Bounds bounds;
  if (plots) {
    const Matrix* parts[] = {&split.labeled().features(), &split.unlabeled().features(),
                             &split.validation().features(), &split.test().features()};
    bounds = bounds_of(parts);
  }
  auto observer = [&](const RoundRecord& rec, const ModelParams& model) {
    const std::string t = std::to_string(rec.round);
    if (plots)
      write_file(art.dir / ("round_" + t + ".svg"),
                 export_boundary_svg(model, bounds, config.output.plot_resolution,
                                     annotate(split, rec)));
    if (config.curriculum.keep_checkpoints) {
      const auto& tc = config.curriculum.train;
      Checkpoint ckpt{model, 0, tc.swa_start, tc.swa_cycle, hash};
      if (tc.swa)
        ckpt.swa_snapshots =
            tc.epochs >= tc.swa_start ? (tc.epochs - tc.swa_start) / tc.swa_cycle + 1 : 0;
      save_checkpoint(art.dir / ("checkpoint_round_" + t + ".json"), ckpt);
    }
  };

  CurriculumConfig cfg = config.curriculum;
  cfg.seed = config.seed;
  const std::string method =
      cfg.pacing.mode == PacingMode::kPercentile ? "curriculum" : "vanilla-pl";
  CurriculumResult result =
      cfg.pacing.mode == PacingMode::kPercentile
          ? run_curriculum(split, cfg, observer)
          : run_vanilla_pl(split, cfg, cfg.pacing.tau, config.vanilla_rounds, observer);

  std::vector<std::string> trace;
  for (const auto& rec : result.rounds)
    trace.push_back(round_to_json(rec, {{"method", method}}));
  Table table = round_table(result.rounds);
  table.title = method + " rounds";
  art.table = table.to_text();
  art.warnings = result.warnings;
  write_file(art.dir / "trace.jsonl", join_lines(trace));
  write_file(art.dir / "table.txt", art.table);
  write_file(art.dir / "results.jsonl", join_lines(table.to_jsonl()));
  return art;
}

RunArtifacts run_study(const RunConfig& config, const std::string& study, int jobs) {
  const auto& names = study_names();
  if (std::find(names.begin(), names.end(), study) == names.end()) {
    std::string valid;
    for (const auto& n : names) valid += (valid.empty() ? "" : ", ") + n;
    throw InvalidArgument("unknown study \"" + study + "\"; valid studies: " + valid);
  }
  if (jobs < 1) throw InvalidArgument("jobs must be >= 1");
  config.validate();
  const StudyOptions options = study_options(config, jobs);
  auto factory = [&config](int r) { return make_split(config, repetition_seed(config.seed, r)); };

  StudyOutput out;
  if (study == "overlap") {
    OverlapSpec spec = config.overlap;
    spec.seed = config.seed;
    out = run_overlap_study(spec, config.study.mismatch_grid, config.study.methods, options);
  } else if (study == "label-sweep") {
    if (config.data.source != DataSource::kTwoMoons)
      throw ConfigError("data.source", "the label sweep runs on two-moons data");
    TwoMoonsSpec spec;
    spec.n_per_moon = config.data.n_per_moon;
    spec.noise = config.data.noise;
    spec.seed = config.seed;
    out = run_label_sweep(spec, {config.study.label_sizes}, config.split.n_val,
                          config.split.n_test, config.data.standardize, options);
  } else if (study == "threshold-ablation") {
    out = run_threshold_ablation(factory, config.study.tau_grid, options);
  } else {
    out = run_reinit_ablation(factory, options);
  }

  RunArtifacts art;
  art.dir = prepare_dir(config, study);
  art.table = out.table.to_text();
  write_file(art.dir / "trace.jsonl", join_lines(out.trace));
  write_file(art.dir / "table.txt", art.table);
  write_file(art.dir / "results.jsonl", join_lines(out.table.to_jsonl()));
  return art;
}

}  // namespace curlab
