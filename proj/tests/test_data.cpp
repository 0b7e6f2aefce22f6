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

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include <unistd.h>

#include "curlab/data.hpp"
#include "curlab/error.hpp"
#include "curlab/experiments.hpp"

namespace curlab {
namespace {

namespace fs = std::filesystem;

Dataset two_class(std::size_t n, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix x(static_cast<Eigen::Index>(n), 3);
  std::vector<int> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) x(static_cast<Eigen::Index>(i), c) = g(rng);
    y[i] = static_cast<int>(i % 2);
  }
  return Dataset::from_rows(std::move(x), std::move(y), 2);
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("curlab_test_" + std::to_string(::getpid()) + "_" + name);
}

TEST(Dataset, RejectsNonFiniteFeatures) {
  Matrix x(2, 1);
  x << 1.0, std::nan("");
  EXPECT_THROW(Dataset::from_rows(x, std::nullopt, 0), DataError);
}

TEST(Dataset, RejectsOutOfRangeLabels) {
  Matrix x = Matrix::Zero(2, 1);
  EXPECT_THROW(Dataset::from_rows(x, std::vector<int>{0, 2}, 2), DataError);
  EXPECT_THROW(Dataset::from_rows(x, std::vector<int>{-1, 0}, 2), DataError);
}

TEST(Dataset, RejectsDuplicateIds) {
  Matrix x = Matrix::Zero(2, 1);
  EXPECT_THROW(Dataset(x, {7, 7}, std::nullopt, 0), DataError);
}

TEST(Dataset, UnlabeledAccessThrows) {
  Dataset d = Dataset::from_rows(Matrix::Zero(1, 1), std::nullopt, 0);
  EXPECT_FALSE(d.has_labels());
  EXPECT_THROW(d.labels(), DataError);
}

TEST(SplitSsl, StratifiedCountsOnThousandRows) {
  SslSplit s = split_ssl(two_class(1000), 12, 100, 200, 3);
  EXPECT_EQ(s.labeled().size(), 12u);
  EXPECT_EQ(s.validation().size(), 100u);
  EXPECT_EQ(s.test().size(), 200u);
  EXPECT_EQ(s.unlabeled().size(), 688u);
  EXPECT_FALSE(s.unlabeled().has_labels());
  int counts[2] = {0, 0};
  for (int y : s.labeled().labels()) ++counts[y];
  EXPECT_EQ(counts[0], 6);
  EXPECT_EQ(counts[1], 6);
}

TEST(SplitSsl, DeterministicUnderSeed) {
  Dataset d = two_class(1000);
  SslSplit a = split_ssl(d, 12, 100, 200, 9);
  SslSplit b = split_ssl(d, 12, 100, 200, 9);
  EXPECT_EQ(a.labeled().ids(), b.labeled().ids());
  EXPECT_EQ(a.unlabeled().ids(), b.unlabeled().ids());
  EXPECT_EQ(a.validation().ids(), b.validation().ids());
  EXPECT_EQ(a.test().ids(), b.test().ids());
  SslSplit c = split_ssl(d, 12, 100, 200, 10);
  EXPECT_NE(a.unlabeled().ids(), c.unlabeled().ids());
}

TEST(SplitSsl, ZeroQuotaNamesTheClass) {
  try {
    split_ssl(two_class(20), 1, 2, 2, 0);
    FAIL() << "expected an error";
  } catch (const DataError& e) {
    EXPECT_STREQ(e.what(), "class 1 has zero labeled samples");
  }
}

TEST(SplitSsl, TooManyRequestedRows) {
  EXPECT_THROW(split_ssl(two_class(20), 10, 6, 6, 0), DataError);
}

TEST(SplitSsl, PropertiesOverRandomRequests) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 4);
    const std::size_t n = 40 + rng() % 200;
    Matrix x = Matrix::Random(static_cast<Eigen::Index>(n), 2);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = static_cast<int>(rng() % static_cast<unsigned>(k));
    for (int c = 0; c < k; ++c) y[static_cast<std::size_t>(c)] = c;  // every class present
    Dataset d = Dataset::from_rows(x, y, k);
    std::vector<int> class_size(static_cast<std::size_t>(k));
    for (int v : y) ++class_size[static_cast<std::size_t>(v)];
    const int min_class = *std::min_element(class_size.begin(), class_size.end());
    const std::size_t n_labeled = static_cast<std::size_t>(k) * (1 + rng() % static_cast<unsigned>(min_class));
    const std::size_t n_val = rng() % ((n - n_labeled) / 2 + 1);
    const std::size_t n_test = rng() % ((n - n_labeled - n_val) / 2 + 1);
    SslSplit s = split_ssl(d, n_labeled, n_val, n_test, rng());

    std::set<SampleId> all;
    std::size_t total = 0;
    for (const Dataset* part : {&s.labeled(), &s.unlabeled(), &s.validation(), &s.test()}) {
      all.insert(part->ids().begin(), part->ids().end());
      total += part->size();
    }
    EXPECT_EQ(all.size(), total);
    EXPECT_EQ(total, n_labeled + n_val + n_test + s.unlabeled().size());
    EXPECT_EQ(total, n);

    std::vector<int> lab(static_cast<std::size_t>(k));
    for (int v : s.labeled().labels()) ++lab[static_cast<std::size_t>(v)];
    auto [lo, hi] = std::minmax_element(lab.begin(), lab.end());
    EXPECT_LE(*hi - *lo, 1);

    // Oracle labels match the source rows.
    for (std::size_t i = 0; i < s.unlabeled().size(); ++i)
      EXPECT_EQ(s.oracle_labels()[i], y[s.unlabeled().ids()[i]]);
  }
}

TEST(Standardize, ConstantColumnBecomesZero) {
  Matrix x(4, 2);
  x << 3, 0, 3, 1, 3, 2, 3, 5;
  Dataset d = Dataset::from_rows(x, std::vector<int>{0, 1, 0, 1}, 2);
  SslSplit s = split_ssl(d, 2, 0, 0, 1);
  Standardized st = standardize(s);
  EXPECT_EQ(st.stats.scale(0), 1.0);
  for (const Dataset* part : {&st.split.labeled(), &st.split.unlabeled()})
    for (Eigen::Index r = 0; r < part->features().rows(); ++r)
      EXPECT_EQ(part->features()(r, 0), 0.0);
}

TEST(Standardize, TwoValueColumn) {
  Matrix x(2, 1);
  x << 0, 2;
  Dataset d = Dataset::from_rows(x, std::vector<int>{0, 1}, 2);
  SslSplit s = split_ssl(d, 2, 0, 0, 1);
  Standardized st = standardize(s);
  EXPECT_DOUBLE_EQ(st.stats.mean(0), 1.0);
  EXPECT_DOUBLE_EQ(st.stats.scale(0), 1.0);
  for (Eigen::Index r = 0; r < 2; ++r) {
    double v = st.split.labeled().features()(r, 0);
    EXPECT_DOUBLE_EQ(std::abs(v), 1.0);
  }
}

TEST(Standardize, HeldOutRowMatchesScalarOracle) {
  SslSplit s = split_ssl(two_class(300, 5), 10, 40, 50, 2);
  Standardized st = standardize(s);
  const Matrix& a = s.labeled().features();
  const Matrix& b = s.unlabeled().features();
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const Matrix* m : {&a, &b})
      for (Eigen::Index r = 0; r < m->rows(); ++r, ++n) sum += (*m)(r, c);
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (const Matrix* m : {&a, &b})
      for (Eigen::Index r = 0; r < m->rows(); ++r) ss += ((*m)(r, c) - mean) * ((*m)(r, c) - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n));
    for (Eigen::Index r = 0; r < s.test().features().rows(); ++r) {
      double expected = (s.test().features()(r, c) - mean) / sd;
      EXPECT_NEAR(st.split.test().features()(r, c), expected, 1e-12);
    }
  }
}

TEST(Standardize, ValidationAndTestDoNotInfluenceStats) {
  SslSplit s = split_ssl(two_class(300, 5), 10, 40, 50, 2);
  Standardized before = standardize(s);
  SslSplit shifted(s.labeled(), s.unlabeled(), s.oracle_labels(),
                   s.validation().with_features(s.validation().features().array() + 100.0),
                   s.test().with_features(s.test().features().array() * 3.0));
  Standardized after = standardize(shifted);
  EXPECT_TRUE(before.stats.mean == after.stats.mean);
  EXPECT_TRUE(before.stats.scale == after.stats.scale);
}

TEST(Csv, FirstSeenLabelMapping) {
  fs::path p = temp_file("labels.csv");
  std::ofstream(p) << "x1,x2,label\n1,2,a\n3,4,b\n5,6,a\n";
  CsvData d = load_csv(p, {"label", {}, std::nullopt});
  EXPECT_EQ(d.dataset.labels(), (std::vector<int>{0, 1, 0}));
  EXPECT_EQ(d.class_names, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(d.feature_names, (std::vector<std::string>{"x1", "x2"}));
  EXPECT_EQ(d.dataset.features()(2, 1), 6.0);
  EXPECT_EQ(d.dataset.ids(), (std::vector<SampleId>{0, 1, 2}));
  fs::remove(p);
}

TEST(Csv, NanCellReportsRowAndColumn) {
  fs::path p = temp_file("nan.csv");
  std::ofstream(p) << "x1,x2,label\n1,2,a\n3,NaN,b\n";
  try {
    load_csv(p, {"label", {}, std::nullopt});
    FAIL() << "expected an error";
  } catch (const DataError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("row 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("x2"), std::string::npos) << msg;
  }
  fs::remove(p);
}

TEST(Csv, NonNumericCellIsAnError) {
  fs::path p = temp_file("text.csv");
  std::ofstream(p) << "x1,label\nabc,a\n";
  EXPECT_THROW(load_csv(p, {"label", {}, std::nullopt}), DataError);
  fs::remove(p);
}

TEST(Csv, UnknownLabelWithFixedMap) {
  fs::path p = temp_file("fixed.csv");
  std::ofstream(p) << "x1,label\n1,a\n2,c\n";
  EXPECT_THROW(load_csv(p, {"label", {}, std::vector<std::string>{"a", "b"}}), DataError);
  fs::remove(p);
}

TEST(Csv, InconsistentArity) {
  fs::path p = temp_file("arity.csv");
  std::ofstream(p) << "x1,x2,label\n1,2,a\n3,b\n";
  EXPECT_THROW(load_csv(p, {"label", {}, std::nullopt}), DataError);
  fs::remove(p);
}

TEST(Csv, MissingFile) {
  EXPECT_THROW(load_csv(temp_file("absent.csv"), {"label", {}, std::nullopt}), IoError);
}

TEST(Csv, RoundTripIsBitIdentical) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  std::uniform_int_distribution<int> e(-300, 300);
  Matrix x(64, 4);
  for (Eigen::Index r = 0; r < x.rows(); ++r)
    for (Eigen::Index c = 0; c < x.cols(); ++c)
      x(r, c) = c == 3 ? std::ldexp(u(rng), e(rng)) : u(rng);
  std::vector<int> y(64);
  for (auto& v : y) v = static_cast<int>(rng() % 3);
  y[0] = 0, y[1] = 1, y[2] = 2;
  Dataset d = Dataset::from_rows(x, y, 3);
  std::vector<std::string> names = {"a", "b", "c", "d"}, classes = {"p", "q", "r"};
  fs::path p = temp_file("roundtrip.csv");
  export_csv(p, d, names, classes);
  CsvData back = load_csv(p, {"label", {}, classes});
  for (Eigen::Index r = 0; r < x.rows(); ++r)
    for (Eigen::Index c = 0; c < x.cols(); ++c)
      EXPECT_EQ(std::bit_cast<std::uint64_t>(back.dataset.features()(r, c)),
                std::bit_cast<std::uint64_t>(x(r, c)));
  EXPECT_EQ(back.dataset.labels(), y);
  fs::remove(p);
}

TEST(Csv, ShortestFormatting) {
  EXPECT_EQ(format_shortest(0.1), "0.1");
  EXPECT_EQ(format_shortest(2.0), "2");
  EXPECT_EQ(std::stod(format_shortest(1.0 / 3.0)), 1.0 / 3.0);
}

}  // namespace
}  // namespace curlab
