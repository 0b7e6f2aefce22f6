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

#include "curlab/config.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "curlab/error.hpp"

namespace curlab {

std::string to_string(DataSource source) {
  switch (source) {
    case DataSource::kTwoMoons: return "two-moons";
    case DataSource::kOverlap: return "overlap";
    case DataSource::kCsv: return "csv";
  }
  return "?";
}

std::string to_string(ScoreKind kind) {
  switch (kind) {
    case ScoreKind::kMaxProbability: return "max-probability";
    case ScoreKind::kMargin: return "margin";
    case ScoreKind::kNegEntropy: return "neg-entropy";
  }
  return "?";
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError(field, what);
}

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) fail(field, what);
}

/// Typed reads from one TOML table that remember which keys were consumed,
/// so anything left over can be reported as unknown.
class Section {
 public:
  Section(const toml::table* table, std::string prefix) : table_(table), prefix_(std::move(prefix)) {}

  std::string path(const std::string& key) const { return prefix_.empty() ? key : prefix_ + "." + key; }

  const toml::node* find(const std::string& key) {
    seen_.insert(key);
    return table_ ? table_->get(key) : nullptr;
  }

  void read(const std::string& key, double& out) {
    if (auto* n = find(key)) {
      if (auto v = n->value_exact<double>()) out = *v;
      else if (auto i = n->value_exact<std::int64_t>()) out = static_cast<double>(*i);
      else fail(path(key), "expected a number");
    }
  }

  void read(const std::string& key, std::int64_t& out) {
    if (auto* n = find(key)) {
      auto v = n->value_exact<std::int64_t>();
      if (!v) fail(path(key), "expected an integer");
      out = *v;
    }
  }

  void read(const std::string& key, int& out) {
    std::int64_t v = out;
    read(key, v);
    require(v >= std::numeric_limits<int>::min() && v <= std::numeric_limits<int>::max(),
            path(key), "integer out of range");
    out = static_cast<int>(v);
  }

  void read(const std::string& key, std::size_t& out) {
    if (auto* n = find(key)) {
      auto v = n->value_exact<std::int64_t>();
      if (!v) fail(path(key), "expected an integer");
      require(*v >= 0, path(key), "must be >= 0");
      out = static_cast<std::size_t>(*v);
    }
  }

  void read_seed(const std::string& key, std::uint64_t& out) {
    std::size_t v = out;
    read(key, v);
    out = v;
  }

  void read(const std::string& key, bool& out) {
    if (auto* n = find(key)) {
      auto v = n->value_exact<bool>();
      if (!v) fail(path(key), "expected true or false");
      out = *v;
    }
  }

  void read(const std::string& key, std::string& out) {
    if (auto* n = find(key)) {
      auto v = n->value_exact<std::string>();
      if (!v) fail(path(key), "expected a string");
      out = *v;
    }
  }

  template <class T>
  void read_array(const std::string& key, std::vector<T>& out) {
    auto* n = find(key);
    if (!n) return;
    auto* arr = n->as_array();
    if (!arr) fail(path(key), "expected an array");
    std::vector<T> values;
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const toml::node& e = *arr->get(i);
      const std::string where = path(key) + "[" + std::to_string(i) + "]";
      if constexpr (std::is_same_v<T, std::string>) {
        auto v = e.value_exact<std::string>();
        if (!v) fail(where, "expected a string");
        values.push_back(*v);
      } else if constexpr (std::is_floating_point_v<T>) {
        if (auto v = e.value_exact<double>()) values.push_back(*v);
        else if (auto iv = e.value_exact<std::int64_t>()) values.push_back(static_cast<double>(*iv));
        else fail(where, "expected a number");
      } else {
        auto v = e.value_exact<std::int64_t>();
        if (!v) fail(where, "expected an integer");
        if constexpr (std::is_unsigned_v<T>) require(*v >= 0, where, "must be >= 0");
        values.push_back(static_cast<T>(*v));
      }
    }
    out = std::move(values);
  }

  void reject_unknown() const {
    if (!table_) return;
    for (const auto& [key, node] : *table_) {
      std::string k(key.str());
      if (!seen_.contains(k)) fail(path(k), "unknown key");
    }
  }

 private:
  const toml::table* table_;
  std::string prefix_;
  std::set<std::string> seen_;
};

template <class Enum, class Parse>
Enum read_enum(Section& s, const std::string& key, Enum current, Parse parse,
               const std::string& allowed) {
  std::string text;
  if (!s.find(key)) return current;
  s.read(key, text);
  if (auto v = parse(text)) return *v;
  fail(s.path(key), "must be one of " + allowed + ", got \"" + text + "\"");
}

std::optional<DataSource> parse_source(const std::string& s) {
  if (s == "two-moons") return DataSource::kTwoMoons;
  if (s == "overlap") return DataSource::kOverlap;
  if (s == "csv") return DataSource::kCsv;
  return std::nullopt;
}

std::optional<AugmentMode> parse_mode(const std::string& s) {
  try {
    return parse_augment_mode(s);
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
}

std::optional<PacingMode> parse_pacing(const std::string& s) {
  if (s == "percentile") return PacingMode::kPercentile;
  if (s == "fixed") return PacingMode::kFixed;
  return std::nullopt;
}

std::optional<ReinitPolicy> parse_reinit(const std::string& s) {
  if (s == "reinit") return ReinitPolicy::kReinit;
  if (s == "finetune") return ReinitPolicy::kFinetune;
  return std::nullopt;
}

std::optional<ScoreKind> parse_score(const std::string& s) {
  for (ScoreKind k : {ScoreKind::kMaxProbability, ScoreKind::kMargin, ScoreKind::kNegEntropy})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

std::optional<Method> parse_method(const std::string& s) {
  for (Method m : {Method::kCurriculum, Method::kVanillaPl, Method::kSupervised})
    if (s == to_string(m)) return m;
  return std::nullopt;
}

const toml::table* subtable(const toml::table& root, const std::string& name) {
  const toml::node* n = root.get(name);
  if (!n) return nullptr;
  if (!n->is_table()) fail(name, "expected a table");
  return n->as_table();
}

}  // namespace

void RunConfig::validate() const {
  require(seed <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()), "seed",
          "must be below 2^63");
  require(!output_dir.empty(), "output_dir", "must not be empty");

  require(data.n_per_moon >= 1, "data.n_per_moon", "must be >= 1");
  require(data.noise >= 0.0, "data.noise", "must be >= 0");
  if (data.source == DataSource::kCsv) require(!data.csv_path.empty(), "data.csv_path", "required for csv data");

  require(split.n_labeled >= 1, "split.n_labeled", "must be >= 1");
  if (data.source == DataSource::kTwoMoons) {
    require(split.n_labeled >= 2, "split.n_labeled", "must cover both classes");
    require(split.n_labeled + split.n_val + split.n_test <= 2 * data.n_per_moon, "split",
            "n_labeled + n_val + n_test exceeds the dataset");
  }

  for (std::size_t i = 0; i < curriculum.hidden.size(); ++i)
    require(curriculum.hidden[i] >= 1, "model.hidden[" + std::to_string(i) + "]", "must be >= 1");

  const TrainConfig& t = curriculum.train;
  require(t.epochs >= 1, "train.epochs", "must be >= 1");
  require(t.batch_size >= 1, "train.batch_size", "must be >= 1");
  require(t.lr > 0.0, "train.lr", "must be > 0");
  require(t.lr_min >= 0.0 && t.lr_min <= t.lr, "train.lr_min", "must lie in [0, train.lr]");
  require(t.momentum >= 0.0 && t.momentum < 1.0, "train.momentum", "must lie in [0, 1)");
  require(t.weight_decay >= 0.0, "train.weight_decay", "must be >= 0");
  require(t.swa_start >= 1, "train.swa_start", "must be >= 1");
  require(t.swa_cycle >= 1, "train.swa_cycle", "must be >= 1");
  require(t.augment.jitter_sigma >= 0.0, "augment.jitter_sigma", "must be >= 0");
  require(t.augment.mixup_alpha > 0.0, "augment.mixup_alpha", "must be > 0");
  require(t.augment.seed <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()),
          "augment.seed", "must be below 2^63");

  const PacingSchedule& p = curriculum.pacing;
  require(p.delta > 0.0 && p.delta <= 100.0, "pacing.delta", "must lie in (0, 100]");
  require(p.tau >= 0.0 && p.tau < 1.0, "pacing.tau", "must lie in [0, 1)");
  require(vanilla_rounds >= 1, "pacing.rounds", "must be >= 1");

  require(output.plot_resolution >= 1 && output.plot_resolution <= 2000, "output.plot_resolution",
          "must lie in [1, 2000]");

  require(study.repetitions >= 1, "study.repetitions", "must be >= 1");
  require(!study.tau_grid.empty(), "study.tau_grid", "must not be empty");
  for (double tau : study.tau_grid) require(tau >= 0.0 && tau < 1.0, "study.tau_grid", "entries must lie in [0, 1)");
  require(study.label_sizes.size() >= 1, "study.label_sizes", "must not be empty");
  for (std::size_t i = 0; i < study.label_sizes.size(); ++i) {
    require(study.label_sizes[i] >= 1, "study.label_sizes", "entries must be >= 1");
    if (i) require(study.label_sizes[i] > study.label_sizes[i - 1], "study.label_sizes", "must be increasing");
  }
  require(!study.mismatch_grid.empty(), "study.mismatch_grid", "must not be empty");
  for (double m : study.mismatch_grid)
    require(std::find(std::begin(kMismatchGrid), std::end(kMismatchGrid), m) != std::end(kMismatchGrid),
            "study.mismatch_grid", "entries must be 0, 25, 50, 75 or 100");
  require(!study.methods.empty(), "study.methods", "must not be empty");
  require(study.vanilla_tau >= 0.0 && study.vanilla_tau < 1.0, "study.vanilla_tau", "must lie in [0, 1)");

  try {
    overlap.validate();
  } catch (const InvalidArgument& e) {
    fail("overlap", e.what());
  }
}

RunConfig parse_config(const std::string& text) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    fail("<syntax>", "line " + std::to_string(e.source().begin.line) + ": " +
                         std::string(e.description()));
  }

  RunConfig c;
  Section top(&root, "");
  top.read_seed("seed", c.seed);
  top.read("output_dir", c.output_dir);

  Section data(subtable(root, "data"), "data");
  top.find("data");
  c.data.source = read_enum(data, "source", c.data.source, parse_source, "two-moons, overlap, csv");
  data.read("n_per_moon", c.data.n_per_moon);
  data.read("noise", c.data.noise);
  data.read("csv_path", c.data.csv_path);
  data.read("label_column", c.data.label_column);
  data.read_array("feature_columns", c.data.feature_columns);
  data.read("standardize", c.data.standardize);

  Section split(subtable(root, "split"), "split");
  top.find("split");
  split.read("n_labeled", c.split.n_labeled);
  split.read("n_val", c.split.n_val);
  split.read("n_test", c.split.n_test);

  Section model(subtable(root, "model"), "model");
  top.find("model");
  model.read_array("hidden", c.curriculum.hidden);

  Section augment(subtable(root, "augment"), "augment");
  top.find("augment");
  AugmentConfig& a = c.curriculum.train.augment;
  a.mode = read_enum(augment, "mode", a.mode, parse_mode, "none, moderate, mixup, moderate+mixup, heavy");
  augment.read("jitter_sigma", a.jitter_sigma);
  augment.read("mixup_alpha", a.mixup_alpha);
  augment.read_seed("seed", a.seed);

  Section train(subtable(root, "train"), "train");
  top.find("train");
  TrainConfig& t = c.curriculum.train;
  // Heavy augmentation favours large batches; the default follows the tier.
  if (a.mode == AugmentMode::kModerateMixup) t.batch_size = 512;
  train.read("epochs", t.epochs);
  train.read("batch_size", t.batch_size);
  train.read("lr", t.lr);
  train.read("lr_min", t.lr_min);
  train.read("momentum", t.momentum);
  train.read("weight_decay", t.weight_decay);
  train.read("swa", t.swa);
  train.read("swa_start", t.swa_start);
  train.read("swa_cycle", t.swa_cycle);

  Section pacing(subtable(root, "pacing"), "pacing");
  top.find("pacing");
  PacingSchedule& p = c.curriculum.pacing;
  p.mode = read_enum(pacing, "mode", p.mode, parse_pacing, "percentile, fixed");
  pacing.read("delta", p.delta);
  pacing.read("tau", p.tau);
  pacing.read("rounds", c.vanilla_rounds);

  Section cur(subtable(root, "curriculum"), "curriculum");
  top.find("curriculum");
  c.curriculum.reinit = read_enum(cur, "reinit", c.curriculum.reinit, parse_reinit, "reinit, finetune");
  c.curriculum.score = read_enum(cur, "score", c.curriculum.score, parse_score,
                                 "max-probability, margin, neg-entropy");
  cur.read("keep_checkpoints", c.curriculum.keep_checkpoints);

  Section out(subtable(root, "output"), "output");
  top.find("output");
  out.read("boundary_plots", c.output.boundary_plots);
  out.read("plot_resolution", c.output.plot_resolution);

  Section study(subtable(root, "study"), "study");
  top.find("study");
  study.read("repetitions", c.study.repetitions);
  study.read_array("tau_grid", c.study.tau_grid);
  study.read_array("label_sizes", c.study.label_sizes);
  study.read_array("mismatch_grid", c.study.mismatch_grid);
  if (study.find("methods")) {
    std::vector<std::string> names;
    study.read_array("methods", names);
    c.study.methods.clear();
    for (const auto& n : names) {
      auto m = parse_method(n);
      if (!m) fail("study.methods", "unknown method \"" + n + "\"");
      c.study.methods.push_back(*m);
    }
  }
  study.read("vanilla_tau", c.study.vanilla_tau);

  Section ov(subtable(root, "overlap"), "overlap");
  top.find("overlap");
  ov.read("id_classes", c.overlap.id_classes);
  ov.read("unlabeled_classes", c.overlap.unlabeled_classes);
  ov.read("mismatch", c.overlap.mismatch_percent);
  ov.read("labeled_per_class", c.overlap.labeled_per_class);
  ov.read("unlabeled_per_class", c.overlap.unlabeled_per_class);
  ov.read("val_per_class", c.overlap.val_per_class);
  ov.read("test_per_class", c.overlap.test_per_class);
  ov.read("radius", c.overlap.radius);
  ov.read("spread", c.overlap.spread);

  for (const Section* s : {&top, &data, &split, &model, &augment, &train, &pacing, &cur, &out,
                           &study, &ov})
    s->reject_unknown();

  c.curriculum.seed = c.seed;
  c.overlap.seed = c.seed;
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

std::string num(double v) {
  std::string s = format_shortest(v);
  // Keep floats recognisable as floats in TOML.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

template <class T, class Fn>
std::string list(const std::vector<T>& v, Fn fn) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fn(v[i]);
  return out + "]";
}

std::string b(bool v) { return v ? "true" : "false"; }

std::string render(const RunConfig& c, bool with_output_dir) {
  std::ostringstream o;
  const auto& t = c.curriculum.train;
  const auto& a = t.augment;
  const auto& p = c.curriculum.pacing;
  o << "seed = " << c.seed << "\n";
  if (with_output_dir) o << "output_dir = " << quote(c.output_dir) << "\n";
  o << "\n[data]\n"
    << "source = " << quote(to_string(c.data.source)) << "\n"
    << "n_per_moon = " << c.data.n_per_moon << "\n"
    << "noise = " << num(c.data.noise) << "\n"
    << "csv_path = " << quote(c.data.csv_path) << "\n"
    << "label_column = " << quote(c.data.label_column) << "\n"
    << "feature_columns = " << list(c.data.feature_columns, quote) << "\n"
    << "standardize = " << b(c.data.standardize) << "\n";
  o << "\n[split]\n"
    << "n_labeled = " << c.split.n_labeled << "\n"
    << "n_val = " << c.split.n_val << "\n"
    << "n_test = " << c.split.n_test << "\n";
  o << "\n[model]\n"
    << "hidden = " << list(c.curriculum.hidden, [](int w) { return std::to_string(w); }) << "\n";
  o << "\n[train]\n"
    << "epochs = " << t.epochs << "\n"
    << "batch_size = " << t.batch_size << "\n"
    << "lr = " << num(t.lr) << "\n"
    << "lr_min = " << num(t.lr_min) << "\n"
    << "momentum = " << num(t.momentum) << "\n"
    << "weight_decay = " << num(t.weight_decay) << "\n"
    << "swa = " << b(t.swa) << "\n"
    << "swa_start = " << t.swa_start << "\n"
    << "swa_cycle = " << t.swa_cycle << "\n";
  o << "\n[augment]\n"
    << "mode = " << quote(to_string(a.mode)) << "\n"
    << "jitter_sigma = " << num(a.jitter_sigma) << "\n"
    << "mixup_alpha = " << num(a.mixup_alpha) << "\n"
    << "seed = " << a.seed << "\n";
  o << "\n[pacing]\n"
    << "mode = " << quote(p.mode == PacingMode::kPercentile ? "percentile" : "fixed") << "\n"
    << "delta = " << num(p.delta) << "\n"
    << "tau = " << num(p.tau) << "\n"
    << "rounds = " << c.vanilla_rounds << "\n";
  o << "\n[curriculum]\n"
    << "reinit = " << quote(to_string(c.curriculum.reinit)) << "\n"
    << "score = " << quote(to_string(c.curriculum.score)) << "\n"
    << "keep_checkpoints = " << b(c.curriculum.keep_checkpoints) << "\n";
  o << "\n[output]\n"
    << "boundary_plots = " << b(c.output.boundary_plots) << "\n"
    << "plot_resolution = " << c.output.plot_resolution << "\n";
  o << "\n[study]\n"
    << "repetitions = " << c.study.repetitions << "\n"
    << "tau_grid = " << list(c.study.tau_grid, num) << "\n"
    << "label_sizes = "
    << list(c.study.label_sizes, [](std::size_t v) { return std::to_string(v); }) << "\n"
    << "mismatch_grid = " << list(c.study.mismatch_grid, num) << "\n"
    << "methods = "
    << list(c.study.methods, [](Method m) { return quote(to_string(m)); }) << "\n"
    << "vanilla_tau = " << num(c.study.vanilla_tau) << "\n";
  o << "\n[overlap]\n"
    << "id_classes = " << c.overlap.id_classes << "\n"
    << "unlabeled_classes = " << c.overlap.unlabeled_classes << "\n"
    << "mismatch = " << num(c.overlap.mismatch_percent) << "\n"
    << "labeled_per_class = " << c.overlap.labeled_per_class << "\n"
    << "unlabeled_per_class = " << c.overlap.unlabeled_per_class << "\n"
    << "val_per_class = " << c.overlap.val_per_class << "\n"
    << "test_per_class = " << c.overlap.test_per_class << "\n"
    << "radius = " << num(c.overlap.radius) << "\n"
    << "spread = " << num(c.overlap.spread) << "\n";
  return o.str();
}

}  // namespace

std::string canonical_text(const RunConfig& config) { return render(config, true); }

std::string config_hash(const RunConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : render(config, false)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace curlab
