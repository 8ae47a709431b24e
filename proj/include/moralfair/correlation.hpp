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

#pragma once

// Spearman rank correlation with exact-permutation and Student-t p-values,
// and the MFC validation table built from them.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "moralfair/labels.hpp"

namespace mfair {

// 1-based ranks, ties share their average rank.
std::vector<double> average_ranks(std::span<const double> values);

// Pearson correlation of average ranks. Throws ValidationError on a length
// mismatch or fewer than 3 points; nullopt when either input is constant.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

enum class PValueMode { kExact, kAsymptotic };

inline constexpr std::size_t kMaxExactN = 10;

// Two-sided p-value for an untied sample of size n.
//  kExact: share of the n! rank permutations with |rho'| >= |rho| (n <= 10).
//  kAsymptotic: t = rho sqrt((n-2)/(1-rho^2)) on n-2 degrees of freedom;
//  |rho| = 1 gives 0.
double spearman_p(double rho, std::size_t n, PValueMode mode);

// Exact permutation p-value on the observed (possibly tied) ranks.
double spearman_p_exact(std::span<const double> x, std::span<const double> y);

enum class CorrelationMode { kPerLabel, kBootstrapPooled };

std::string_view name(CorrelationMode m);
std::optional<CorrelationMode> correlation_mode_from_name(std::string_view s);

struct CorrelationEntry {
  std::string metric;
  std::optional<double> rho;  // nullopt when a vector is constant
  std::optional<double> p_value;
  std::size_t n = 0;
};

struct CorrelationReport {
  CorrelationMode mode = CorrelationMode::kPerLabel;
  PValueMode p_mode = PValueMode::kExact;
  std::vector<CorrelationEntry> entries;  // f1, precision, recall, dp, eo
};

inline constexpr std::string_view kMfcKey = "mfc";
inline constexpr std::string_view kBaselineKeys[] = {"f1", "precision", "recall", "dp", "eo"};

// Spearman of the "mfc" vector against each baseline vector. Per-label mode
// uses exact p-values; bootstrap-pooled mode takes the pooled replicate
// vectors and uses the asymptotic p-value.
CorrelationReport validate_mfc(const std::map<std::string, std::vector<double>>& metrics,
                               CorrelationMode mode);

}  // namespace mfair
