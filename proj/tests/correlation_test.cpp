/*
 * Copyright 2026 The moralfair Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "moralfair/correlation.hpp"

namespace mfair {
namespace {

// Textbook form 1 - 6 sum d^2 / (n (n^2 - 1)), valid without ties.
double spearman_untied(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  double d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  const double n = static_cast<double>(x.size());
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

// Exact p by listing all n! orderings of y's ranks.
double brute_force_p(const std::vector<double>& x, const std::vector<double>& y) {
  const double rho = *spearman(x, y);
  std::vector<double> perm = y;
  std::sort(perm.begin(), perm.end());
  std::size_t hits = 0, total = 0;
  do {
    ++total;
    hits += std::abs(spearman_untied(x, perm)) >= std::abs(rho) - 1e-12;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(hits) / static_cast<double>(total);
}

const std::vector<double> kMfc = {0.7781, 0.9556, 0.9499, 0.9666, 0.9205};

TEST(RanksTest, AverageTies) {
  EXPECT_EQ(average_ranks(std::vector<double>{10, 20, 20, 30}),
            (std::vector<double>{1, 2.5, 2.5, 4}));
  EXPECT_EQ(average_ranks(std::vector<double>{3, 1, 2}), (std::vector<double>{3, 1, 2}));
  EXPECT_EQ(average_ranks(std::vector<double>{5, 5, 5}), (std::vector<double>{2, 2, 2}));
}

TEST(SpearmanTest, ReferenceValues) {
  // Reference values from an established statistics package.
  const std::vector<double> v1{17, 86, 60, 77, 47, 3, 70, 87, 88, 92};
  const std::vector<double> v2{70, 29, 85, 61, 80, 34, 60, 31, 73, 66};
  const auto rho = spearman(v1, v2);
  ASSERT_TRUE(rho);
  EXPECT_NEAR(*rho, -0.16363636363636364, 1e-12);
  EXPECT_NEAR(spearman_p(*rho, 10, PValueMode::kAsymptotic), 0.6514773427962428, 1e-9);

  const std::vector<double> t1{17, 86, 60, 77, 47, 3, 70, 47, 88, 92};
  EXPECT_NEAR(*spearman(t1, v2), 0.024316221747202587, 1e-12);
}

TEST(SpearmanTest, PublishedEoAgainstPublishedMfc) {
  const std::vector<double> eo = {0.40, 0.26, 0.22, 0.20, 0.34};
  EXPECT_NEAR(*spearman(kMfc, eo), -0.9, 1e-3);
  EXPECT_NEAR(*spearman(kMfc, eo), spearman_untied(kMfc, eo), 1e-12);
  EXPECT_NEAR(spearman_p_exact(kMfc, eo), 10.0 / 120.0, 1e-15);
}

TEST(SpearmanTest, PerfectNegativeWithDp) {
  const std::vector<double> dp = {0.22, 0.04, 0.05, 0.03, 0.08};
  EXPECT_DOUBLE_EQ(*spearman(kMfc, dp), -1.0);
  EXPECT_DOUBLE_EQ(spearman_p_exact(kMfc, dp), 2.0 / 120.0);
  EXPECT_DOUBLE_EQ(spearman_p(-1.0, 5, PValueMode::kExact), 2.0 / 120.0);
  EXPECT_EQ(spearman_p(-1.0, 5, PValueMode::kAsymptotic), 0.0);
}

TEST(SpearmanTest, ExactPSmallN) {
  EXPECT_DOUBLE_EQ(spearman_p(1.0, 3, PValueMode::kExact), 2.0 / 6.0);
  EXPECT_DOUBLE_EQ(spearman_p(0.0, 3, PValueMode::kExact), 1.0);
  EXPECT_THROW(spearman_p(0.5, 11, PValueMode::kExact), ValidationError);
  EXPECT_DOUBLE_EQ(spearman_p(0.0, 12, PValueMode::kAsymptotic), 1.0);
}

TEST(SpearmanTest, ExactPMatchesBruteForce) {
  std::mt19937 eng(4);
  std::uniform_real_distribution<double> u(0, 1);
  for (std::size_t n : {4, 5, 6, 7}) {
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<double> x(n), y(n);
      for (auto& v : x) v = u(eng);
      for (auto& v : y) v = u(eng);
      EXPECT_NEAR(spearman_p_exact(x, y), brute_force_p(x, y), 1e-12);
      EXPECT_NEAR(spearman_p(*spearman(x, y), n, PValueMode::kExact), brute_force_p(x, y), 1e-12);
    }
  }
}

TEST(SpearmanTest, InvariantUnderMonotoneTransforms) {
  std::mt19937 eng(9);
  std::normal_distribution<double> d;
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> x(15), y(15);
    for (auto& v : x) v = d(eng);
    for (auto& v : y) v = d(eng);
    const double rho = *spearman(x, y);
    std::vector<double> fx(15), gy(15);
    std::transform(x.begin(), x.end(), fx.begin(), [](double v) { return std::exp(v); });
    std::transform(y.begin(), y.end(), gy.begin(), [](double v) { return 3 * v * v * v - 1; });
    EXPECT_NEAR(*spearman(fx, gy), rho, 1e-12);
    EXPECT_NEAR(*spearman(y, x), rho, 1e-12);
    std::vector<double> neg(15);
    std::transform(y.begin(), y.end(), neg.begin(), [](double v) { return -v; });
    EXPECT_NEAR(*spearman(x, neg), -rho, 1e-12);
    EXPECT_GE(rho, -1.0);
    EXPECT_LE(rho, 1.0);
  }
}

TEST(SpearmanTest, DegenerateInputs) {
  EXPECT_FALSE(spearman(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}));
  EXPECT_THROW(spearman(std::vector<double>{1, 2}, std::vector<double>{1, 2}), ValidationError);
  EXPECT_THROW(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2}), ValidationError);
}

TEST(AsymptoticPTest, StudentTForm) {
  // t = rho sqrt((n - 2) / (1 - rho^2)) = 0.5 sqrt(18 / 0.75) = 2.449489742783178 on 18 df.
  // Two-sided tail computed with scipy.stats.t: 0.024769558804109703.
  EXPECT_NEAR(spearman_p(0.5, 20, PValueMode::kAsymptotic), 0.024769558804109703, 1e-12);
  EXPECT_DOUBLE_EQ(spearman_p(0.3, 30, PValueMode::kAsymptotic),
                   spearman_p(-0.3, 30, PValueMode::kAsymptotic));
}

TEST(ValidateMfcTest, PerLabelTable) {
  const std::map<std::string, std::vector<double>> m = {
      {"mfc", kMfc},
      {"f1", {0.5, 0.7, 0.6, 0.65, 0.8}},
      {"precision", {0.55, 0.72, 0.61, 0.7, 0.82}},
      {"recall", {0.45, 0.69, 0.58, 0.6, 0.79}},
      {"dp", {0.22, 0.04, 0.05, 0.03, 0.08}},
      {"eo", {0.40, 0.26, 0.22, 0.20, 0.34}}};
  const auto rep = validate_mfc(m, CorrelationMode::kPerLabel);
  EXPECT_EQ(rep.p_mode, PValueMode::kExact);
  ASSERT_EQ(rep.entries.size(), 5U);
  EXPECT_EQ(rep.entries[3].metric, "dp");
  EXPECT_DOUBLE_EQ(*rep.entries[3].rho, -1.0);
  EXPECT_DOUBLE_EQ(*rep.entries[3].p_value, 2.0 / 120.0);
  EXPECT_EQ(rep.entries[4].metric, "eo");
  EXPECT_NEAR(*rep.entries[4].rho, -0.9, 1e-12);
  for (const auto& e : rep.entries) EXPECT_EQ(e.n, 5U);

  auto missing = m;
  missing.erase("eo");
  EXPECT_THROW(validate_mfc(missing, CorrelationMode::kPerLabel), ValidationError);
  auto longer = m;
  for (auto& [k, v] : longer) v.push_back(0.5);
  EXPECT_THROW(validate_mfc(longer, CorrelationMode::kPerLabel), ValidationError);
  const auto pooled = validate_mfc(longer, CorrelationMode::kBootstrapPooled);
  EXPECT_EQ(pooled.p_mode, PValueMode::kAsymptotic);
}

TEST(CorrelationModeTest, Names) {
  EXPECT_EQ(correlation_mode_from_name("per-label"), CorrelationMode::kPerLabel);
  EXPECT_EQ(correlation_mode_from_name("bootstrap-pooled"), CorrelationMode::kBootstrapPooled);
  EXPECT_FALSE(correlation_mode_from_name("pooled"));
  EXPECT_EQ(name(CorrelationMode::kBootstrapPooled), "bootstrap-pooled");
}

}  // namespace
}  // namespace mfair
